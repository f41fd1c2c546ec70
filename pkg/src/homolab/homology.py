"""Tor and Ext dimensions from cached resolutions; canonical module, Matlis
duality, Bass numbers, Ulrich index."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import rank_a
from .modules import GradedModule, ModuleRep, ulrich_index  # re-exported
from .resolution import Resolution, resolve

__all__ = [
    "TorProfile",
    "ExtProfile",
    "tor",
    "ext",
    "bass_numbers",
    "canonical_module",
    "matlis_dual",
    "ulrich_index",
]


@dataclass
class TorProfile:
    first: str
    second: str
    lo: int
    hi: int
    dims: list[int]

    def dim(self, i: int) -> int:
        return self.dims[i - self.lo]

    @property
    def vanishing_window(self) -> tuple[int, int] | None:
        """Maximal all-zero subinterval ending at hi, or None."""
        if not self.dims or self.dims[-1] != 0:
            return None
        start = self.hi
        for i in range(self.hi - 1, self.lo - 1, -1):
            if self.dim(i) != 0:
                break
            start = i
        return (start, self.hi)

    def all_zero(self) -> bool:
        return not any(self.dims)

    def to_dict(self) -> dict:
        return {
            "m": self.first,
            "n": self.second,
            "range": [self.lo, self.hi],
            "dims": {str(i): self.dim(i) for i in range(self.lo, self.hi + 1)},
            "vanishing_window": list(self.vanishing_window) if self.vanishing_window else None,
        }


class ExtProfile(TorProfile):
    pass


def _complex_dims(res: Resolution, repN: ModuleRep, i: int) -> dict[int, int]:
    """Degreewise dimensions of F_i (x) N (same support for Hom up to sign)."""
    dims: dict[int, int] = {}
    for a in res.degrees[i]:
        for d in repN.support():
            dims[d + a] = dims.get(d + a, 0) + repN.dim(d)
    return {d: n for d, n in dims.items() if n}


def _tensor_boundary(res: Resolution, repN: ModuleRep, i: int, d: int) -> np.ndarray:
    """Matrix of d_i (x) id_N on total degree d (rows = F_{i-1} (x) N)."""
    src_deg = res.degrees[i]
    tgt_deg = res.degrees[i - 1]
    entries = res.diffs[i - 1]
    src_dims = [repN.dim(d - a) for a in src_deg]
    tgt_dims = [repN.dim(d - a) for a in tgt_deg]
    M = np.zeros((sum(tgt_dims), sum(src_dims)), dtype=np.int64)
    src_off = np.cumsum([0] + src_dims)
    tgt_off = np.cumsum([0] + tgt_dims)
    for r, a_t in enumerate(tgt_deg):
        for c, a_s in enumerate(src_deg):
            f = entries[r][c]
            if f.is_zero() or src_dims[c] == 0 or tgt_dims[r] == 0:
                continue
            blk = repN.poly_action(f, d - a_s)
            M[tgt_off[r] : tgt_off[r] + blk.shape[0], src_off[c] : src_off[c] + blk.shape[1]] = blk
    return M


def _hom_coboundary(res: Resolution, repN: ModuleRep, i: int, d: int) -> np.ndarray:
    """Matrix of Hom(d_{i+1}, N) on Hom-degree d (rows = Hom(F_{i+1}, N))."""
    src_deg = res.degrees[i]        # phi defined on F_i
    tgt_deg = res.degrees[i + 1]    # delta(phi) defined on F_{i+1}
    entries = res.diffs[i]          # d_{i+1} : F_{i+1} -> F_i
    src_dims = [repN.dim(d + a) for a in src_deg]
    tgt_dims = [repN.dim(d + a) for a in tgt_deg]
    M = np.zeros((sum(tgt_dims), sum(src_dims)), dtype=np.int64)
    src_off = np.cumsum([0] + src_dims)
    tgt_off = np.cumsum([0] + tgt_dims)
    for gp, a_gp in enumerate(tgt_deg):
        for g, a_g in enumerate(src_deg):
            f = entries[g][gp]
            if f.is_zero() or src_dims[g] == 0 or tgt_dims[gp] == 0:
                continue
            blk = repN.poly_action(f, d + a_g)
            M[tgt_off[gp] : tgt_off[gp] + blk.shape[0], src_off[g] : src_off[g] + blk.shape[1]] = blk
    return M


def tor(
    m: GradedModule,
    n: GradedModule,
    lo: int,
    hi: int,
    resolution: Resolution | None = None,
    first_id: str = "M",
    second_id: str = "N",
) -> TorProfile:
    """dim_k Tor_i(M, N) for lo <= i <= hi, via a resolution of M."""
    if lo < 0 or hi < lo:
        raise ValidationError("need 0 <= lo <= hi")
    res = resolution if resolution is not None else resolve(m.minimize(), hi + 1, first_id)
    res.extend(hi + 1)
    repN = n.rep
    p = m.algebra.p
    ranks: dict[tuple[int, int], int] = {}

    def rank_of(i: int, d: int) -> int:
        if i < 1 or i > res.steps or not res.degrees[i]:
            return 0
        key = (i, d)
        if key not in ranks:
            ranks[key] = rank_a(_tensor_boundary(res, repN, i, d), p)
        return ranks[key]

    dims = []
    for i in range(lo, hi + 1):
        total = 0
        for d, nd in sorted(_complex_dims(res, repN, i).items()):
            total += nd - rank_of(i, d) - rank_of(i + 1, d)
        dims.append(total)
    return TorProfile(first_id, second_id, lo, hi, dims)


def ext(
    m: GradedModule,
    n: GradedModule,
    lo: int,
    hi: int,
    resolution: Resolution | None = None,
    first_id: str = "M",
    second_id: str = "N",
) -> ExtProfile:
    """dim_k Ext^i(M, N) for lo <= i <= hi, from a resolution of M only."""
    if lo < 0 or hi < lo:
        raise ValidationError("need 0 <= lo <= hi")
    res = resolution if resolution is not None else resolve(m.minimize(), hi + 1, first_id)
    res.extend(hi + 1)
    repN = n.rep
    p = m.algebra.p
    ranks: dict[tuple[int, int], int] = {}

    def corank_of(i: int, d: int) -> int:
        # rank of delta^i : Hom(F_i, N) -> Hom(F_{i+1}, N) at Hom-degree d
        if i < 0 or i >= res.steps or not res.degrees[i] or not res.degrees[i + 1]:
            return 0
        key = (i, d)
        if key not in ranks:
            ranks[key] = rank_a(_hom_coboundary(res, repN, i, d), p)
        return ranks[key]

    def hom_dims(i: int) -> dict[int, int]:
        dims: dict[int, int] = {}
        for a in res.degrees[i]:
            for d in repN.support():
                dims[d - a] = dims.get(d - a, 0) + repN.dim(d)
        return {d: v for d, v in dims.items() if v}

    dims = []
    for i in range(lo, hi + 1):
        total = 0
        for d, nd in sorted(hom_dims(i).items()):
            total += nd - corank_of(i, d) - corank_of(i - 1, d)
        dims.append(total)
    return ExtProfile(first_id, second_id, lo, hi, dims)


def bass_numbers(n: GradedModule, lo: int, hi: int, resolution=None) -> ExtProfile:
    """mu^i(N) = dim Ext^i(k, N)."""
    k = GradedModule.residue_field(n.algebra)
    return ext(k, n, lo, hi, resolution, first_id="k", second_id="N")


def canonical_module(algebra) -> GradedModule:
    """Graded Matlis dual of the algebra; generators sit in degree -s."""
    return GradedModule.free(algebra, (0,)).matlis_dual()


def matlis_dual(m: GradedModule) -> GradedModule:
    return m.matlis_dual()
