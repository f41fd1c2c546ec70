"""Content-addressed resolution cache with atomic writes."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile

from .errors import HomolabError
from .resolution import Resolution

ENV_VAR = "HOMOLAB_CACHE_DIR"


def default_cache_dir() -> str:
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "homolab")


class ResolutionCache:
    def __init__(self, directory: str | None = None, enabled: bool = True):
        self.directory = directory or default_cache_dir()
        self.enabled = enabled

    def _path(self, algebra, module) -> str:
        key = f"{algebra.key()}||{module.minimize().key()}"
        digest = hashlib.sha256(key.encode("utf-8")).hexdigest()
        return os.path.join(self.directory, f"res-{digest}.json")

    def load(self, algebra, module, module_id: str, steps: int) -> Resolution | None:
        """Return a verified cached resolution with at least `steps` steps."""
        if not self.enabled:
            return None
        path = self._path(algebra, module)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
        except (OSError, ValueError):
            return None
        if payload.get("steps", -1) < steps:
            return None
        try:
            res = Resolution.from_payload(module, module_id, payload)
            res.verify()  # replay must pass d∘d = 0 and minimality before use
        except HomolabError:
            return None
        return res

    def store(self, algebra, module, resolution: Resolution) -> None:
        if not self.enabled:
            return
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(algebra, module)
        payload = resolution.to_payload()
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True)
            os.replace(tmp, path)
        except OSError:
            try:
                os.unlink(tmp)
            except OSError:
                pass
