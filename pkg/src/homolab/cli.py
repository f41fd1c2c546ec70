"""Command-line front end: input parsing, dispatch, caching, JSON reports.

Input files are line-oriented and sectioned:

    [ring]
    char = 101
    vars = x, y
    ideal = x^2, y^2

    [module Mx]
    gens = 0          # generator degrees
    rels = x          # rows separated by ';', entries by ','

One of a [ring] section or an asserted [invariants] block (or the
--invariants flag) is required per certification run; module commands need
the ring form.  Modules named k (residue field) and A (free rank one) are
built in unless redefined.
"""
from __future__ import annotations

import argparse
import sys

from .cache import ResolutionCache
from .criteria import (
    STANDING_CAVEATS,
    certify_auslander_reiten,
    certify_trivial_vanishing,
    gg_evidence,
    gorenstein_tests,
    growth_threshold,
    verify_growth_bounds,
    verify_ratio_bounds,
)
from .errors import HomolabError, ParseError, ValidationError
from .homology import ext as ext_dims
from .homology import tor as tor_dims
from .invariants import asserted_invariants, ring_invariants
from .koszul import classify_codim3, detect_embedded_deformation, koszul_homology
from .linalg import PrimeField
from .modules import GradedModule
from .poly import DEGREVLEX, Polynomial, TermOrder, parse_polynomial
from .quotient import QuotientAlgebra
from .report import empty_report, input_hash, render
from .resolution import limit_ratio, rational_fit, resolve

DEFAULT_CHARACTERISTIC = 101
DEFAULT_STEPS = 12
RESERVED_MODULES = ("k", "A")


class SessionInput:
    def __init__(self):
        self.characteristic: int | None = None
        self.variables: tuple[str, ...] | None = None
        self.order: TermOrder = DEGREVLEX
        self.ideal: list[Polynomial] = []
        self.modules: dict[str, tuple[tuple[int, ...], tuple]] = {}
        self.asserted: dict | None = None
        self._algebra: QuotientAlgebra | None = None

    @property
    def has_ring(self) -> bool:
        return self.variables is not None

    def algebra(self) -> QuotientAlgebra:
        if not self.has_ring:
            raise ValidationError("this command needs an ideal-defined ring")
        if self._algebra is None:
            field = PrimeField(self.characteristic)
            self._algebra = QuotientAlgebra.build(field, self.variables, self.ideal, self.order)
        return self._algebra

    def module(self, name: str) -> GradedModule:
        a = self.algebra()
        if name in self.modules:
            gens, rows = self.modules[name]
            return GradedModule(a, gens, _derive_rel_degrees(gens, rows), rows)
        if name == "k":
            return GradedModule.residue_field(a)
        if name == "A":
            return GradedModule.free(a, (0,))
        raise ValidationError(f"unknown module {name!r}")

    def describe(self) -> dict:
        names = self.variables or ()
        return {
            "characteristic": self.characteristic,
            "order": self.order.name,
            "variables": list(names),
            "ideal": sorted(g.format(names) for g in self.ideal),
            "modules": {
                name: {
                    "gens": list(gens),
                    "rows": [[f.format(names) for f in row] for row in rows],
                }
                for name, (gens, rows) in sorted(self.modules.items())
            },
            "asserted": self.asserted,
        }


def _derive_rel_degrees(gen_degrees, rows) -> tuple[int, ...]:
    if not rows:
        return ()
    ncols = len(rows[0])
    degrees = []
    for j in range(ncols):
        candidates = set()
        for i, g in enumerate(gen_degrees):
            f = rows[i][j]
            if not f.is_zero():
                candidates.add(g + f.homogeneous_degree())
        if not candidates:
            raise ValidationError(f"relation column {j} is zero; drop it")
        if len(candidates) > 1:
            raise ValidationError(f"relation column {j} mixes degrees {sorted(candidates)}")
        degrees.append(candidates.pop())
    return tuple(degrees)


# ---------------------------------------------------------------------------
# Sectioned text format


def parse_input(text: str) -> SessionInput:
    session = SessionInput()
    section: str | None = None
    module_name: str | None = None
    ring_keys: dict[str, tuple[str, int]] = {}
    module_keys: dict[str, dict[str, tuple[str, int]]] = {}
    asserted_keys: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError("unterminated section header", lineno)
            header = line[1:-1].strip()
            if header == "ring":
                section = "ring"
            elif header == "invariants":
                section = "invariants"
            elif header.startswith("module"):
                parts = header.split()
                if len(parts) != 2:
                    raise ParseError("module section needs exactly one name", lineno)
                section = "module"
                module_name = parts[1]
                if module_name in module_keys:
                    raise ParseError(f"duplicate module {module_name!r}", lineno)
                module_keys[module_name] = {}
            else:
                raise ParseError(f"unknown section [{header}]", lineno)
            continue
        if "=" not in line:
            raise ParseError("expected key = value", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if section == "ring":
            if key in ring_keys:
                raise ParseError(f"duplicate key {key!r} in [ring]", lineno)
            ring_keys[key] = (value, lineno)
        elif section == "invariants":
            if key in asserted_keys:
                raise ParseError(f"duplicate key {key!r} in [invariants]", lineno)
            asserted_keys[key] = (value, lineno)
        elif section == "module":
            if key in module_keys[module_name]:
                raise ParseError(f"duplicate key {key!r} in module {module_name!r}", lineno)
            module_keys[module_name][key] = (value, lineno)
        else:
            raise ParseError("content before any section header", lineno)

    if ring_keys and asserted_keys:
        raise ParseError("give exactly one of [ring] and [invariants], not both")
    if asserted_keys:
        session.asserted = _parse_asserted_pairs(
            {k: v for k, (v, _) in asserted_keys.items()},
            lines={k: ln for k, (_, ln) in asserted_keys.items()},
        )
        if module_keys:
            raise ParseError("module sections need an ideal-defined [ring]")
        return session
    if not ring_keys:
        raise ParseError("missing [ring] section (or an [invariants] block)")

    unknown = set(ring_keys) - {"char", "vars", "ideal", "order"}
    if unknown:
        raise ParseError(f"unknown [ring] keys: {', '.join(sorted(unknown))}", ring_keys[sorted(unknown)[0]][1])
    char_text, char_line = ring_keys.get("char", (str(DEFAULT_CHARACTERISTIC), 0))
    try:
        characteristic = int(char_text)
    except ValueError:
        raise ParseError(f"characteristic {char_text!r} is not an integer", char_line)
    field = PrimeField(characteristic)  # validates primality
    session.characteristic = characteristic
    if "vars" not in ring_keys:
        raise ParseError("[ring] needs a vars key")
    vars_text, vars_line = ring_keys["vars"]
    names = tuple(v.strip() for v in vars_text.split(",") if v.strip())
    if not names:
        raise ParseError("empty variable list", vars_line)
    for name in names:
        if not (name[0].isalpha() or name[0] == "_") or not all(
            ch.isalnum() or ch == "_" for ch in name
        ):
            raise ParseError(f"bad variable name {name!r}", vars_line)
    session.variables = names
    if "order" in ring_keys:
        order_text, order_line = ring_keys["order"]
        try:
            session.order = TermOrder(order_text)
        except ValidationError as exc:
            raise ParseError(str(exc), order_line)
    if "ideal" not in ring_keys:
        raise ParseError("[ring] needs an ideal key")
    ideal_text, ideal_line = ring_keys["ideal"]
    gens = []
    for chunk in ideal_text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        gens.append(parse_polynomial(chunk, names, field, ideal_line))
    if not gens:
        raise ParseError("empty ideal", ideal_line)
    session.ideal = gens

    for name, keys in module_keys.items():
        unknown = set(keys) - {"gens", "rels"}
        if unknown:
            raise ParseError(f"unknown keys in module {name!r}: {', '.join(sorted(unknown))}")
        if "gens" not in keys:
            raise ParseError(f"module {name!r} needs a gens key")
        gens_text, gens_line = keys["gens"]
        try:
            gen_degrees = tuple(int(v.strip()) for v in gens_text.split(",") if v.strip())
        except ValueError:
            raise ParseError(f"bad generator degrees in module {name!r}", gens_line)
        if not gen_degrees:
            raise ParseError(f"module {name!r} has no generators", gens_line)
        rows: tuple = tuple(() for _ in gen_degrees)
        if "rels" in keys and keys["rels"][0].strip():
            rels_text, rels_line = keys["rels"]
            row_texts = [r.strip() for r in rels_text.split(";")]
            if len(row_texts) != len(gen_degrees):
                raise ParseError(
                    f"module {name!r}: {len(row_texts)} relation rows for "
                    f"{len(gen_degrees)} generators",
                    rels_line,
                )
            parsed_rows = []
            width = None
            for row_text in row_texts:
                entries = [e.strip() for e in row_text.split(",")]
                if width is None:
                    width = len(entries)
                elif len(entries) != width:
                    raise ParseError(f"module {name!r}: ragged relation matrix", rels_line)
                parsed_rows.append(
                    tuple(
                        parse_polynomial(e, names, field, rels_line)
                        if e not in ("", "0")
                        else Polynomial.zero(field, len(names))
                        for e in entries
                    )
                )
            rows = tuple(parsed_rows)
        session.modules[name] = (gen_degrees, rows)
    return session


def _parse_asserted_pairs(pairs: dict, lines: dict | None = None) -> dict:
    known = {"e", "c", "ell", "tau", "mu2", "gorenstein"}
    unknown = set(pairs) - known
    if unknown:
        raise ParseError(f"unknown invariant keys: {', '.join(sorted(unknown))}")
    out: dict = {}
    for key, value in pairs.items():
        line = (lines or {}).get(key)
        if key == "gorenstein":
            if value.lower() in ("true", "yes", "1"):
                out[key] = True
            elif value.lower() in ("false", "no", "0"):
                out[key] = False
            else:
                raise ParseError(f"gorenstein must be true or false, got {value!r}", line)
        else:
            try:
                out[key] = int(value)
            except ValueError:
                raise ParseError(f"invariant {key} must be an integer, got {value!r}", line)
    return out


def parse_invariants_flag(spec: str) -> dict:
    pairs = {}
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ParseError(f"bad --invariants entry {chunk!r}; use key=value")
        key, value = (part.strip() for part in chunk.split("=", 1))
        pairs[key] = value
    return _parse_asserted_pairs(pairs)


def _parse_range(text: str) -> tuple[int, int]:
    if ".." not in text:
        raise ParseError(f"bad range {text!r}; use lo..hi")
    lo_text, hi_text = text.split("..", 1)
    try:
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise ParseError(f"bad range {text!r}; use lo..hi")
    if lo < 0 or hi < lo:
        raise ParseError(f"bad range {text!r}; need 0 <= lo <= hi")
    return lo, hi


# ---------------------------------------------------------------------------
# Command implementations


def _session_from_args(args) -> SessionInput:
    session = None
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            session = parse_input(fh.read())
    invariants_flag = getattr(args, "invariants", None)
    if invariants_flag:
        if session is not None and (session.has_ring or session.asserted):
            raise ValidationError(
                "give exactly one of an input file ring/invariants and --invariants"
            )
        session = session or SessionInput()
        session.asserted = parse_invariants_flag(invariants_flag)
    if session is None:
        raise ValidationError("an input file or --invariants block is required")
    return session


def _cache_from_args(args) -> ResolutionCache:
    return ResolutionCache(enabled=not getattr(args, "no_cache", False))


def _resolve_cached(cache: ResolutionCache, session: SessionInput, name: str, steps: int):
    algebra = session.algebra()
    module = session.module(name)
    res = cache.load(algebra, module, name, steps)
    if res is None:
        res = resolve(module, steps, name)
        cache.store(algebra, module, res)
    else:
        res.extend(steps)
    return module, res


def _base_report(session: SessionInput, command: str, options: dict) -> dict:
    report = empty_report()
    report["input_hash"] = input_hash(
        {"session": session.describe(), "command": command, "options": options}
    )
    report["caveats"] = list(STANDING_CAVEATS)
    if session.has_ring:
        report["invariants"] = ring_invariants(session.algebra()).to_dict()
    elif session.asserted is not None:
        inv = asserted_invariants(
            e=session.asserted.get("e"),
            c=session.asserted.get("c"),
            ell=session.asserted.get("ell"),
            tau=session.asserted.get("tau"),
            mu_m2=session.asserted.get("mu2"),
            gorenstein=session.asserted.get("gorenstein"),
        )
        report["invariants"] = inv.to_dict()
    return report


def _invariants_obj(session: SessionInput):
    if session.has_ring:
        return ring_invariants(session.algebra())
    return asserted_invariants(
        e=session.asserted.get("e"),
        c=session.asserted.get("c"),
        ell=session.asserted.get("ell"),
        tau=session.asserted.get("tau"),
        mu_m2=session.asserted.get("mu2"),
        gorenstein=session.asserted.get("gorenstein"),
    )


def cmd_invariants(args) -> dict:
    session = _session_from_args(args)
    report = _base_report(session, "invariants", {})
    inv = report["invariants"]
    if session.has_ring and inv["c"] is not None and inv["ell"] is not None:
        report["invariants"]["growth_threshold"] = growth_threshold(inv["c"], inv["ell"])
    return report


def cmd_resolve(args) -> dict:
    session = _session_from_args(args)
    cache = _cache_from_args(args)
    steps = args.steps
    report = _base_report(session, "resolve", {"module": args.module, "steps": steps})
    module, res = _resolve_cached(cache, session, args.module, steps)
    bt = res.betti_table(steps)
    betti = bt.to_dict()
    betti["growth"] = limit_ratio(bt, args.window).to_dict()
    if bt.steps >= 2 * args.denominator_degree + 2:
        betti["rational_fit"] = rational_fit(bt, args.denominator_degree)
    report["betti"] = betti
    return report


def cmd_tor(args) -> dict:
    session = _session_from_args(args)
    cache = _cache_from_args(args)
    lo, hi = _parse_range(args.range)
    report = _base_report(session, "tor", {"m": args.m, "n": args.n, "range": [lo, hi]})
    m, res = _resolve_cached(cache, session, args.m, hi + 1)
    n = session.module(args.n)
    profile = tor_dims(m, n, lo, hi, resolution=res, first_id=args.m, second_id=args.n)
    report["tor"] = profile.to_dict()
    return report


def cmd_ext(args) -> dict:
    session = _session_from_args(args)
    cache = _cache_from_args(args)
    lo, hi = _parse_range(args.range)
    report = _base_report(session, "ext", {"m": args.m, "n": args.n, "range": [lo, hi]})
    m, res = _resolve_cached(cache, session, args.m, hi + 1)
    n = session.module(args.n)
    profile = ext_dims(m, n, lo, hi, resolution=res, first_id=args.m, second_id=args.n)
    report["ext"] = profile.to_dict()
    return report


def _classification_for(session: SessionInput, report: dict):
    if not session.has_ring:
        return None
    algebra = session.algebra()
    if algebra.n != 3:
        return None
    cls = classify_codim3(algebra)
    report["tor_algebra"] = cls.to_dict()
    return cls


def cmd_certify_tv(args) -> dict:
    session = _session_from_args(args)
    report = _base_report(session, "certify-tv", {"assert_gg": args.assert_gg or ""})
    inv = _invariants_obj(session)
    flags = tuple(f.strip() for f in (args.assert_gg or "").split(",") if f.strip())
    gg = gg_evidence(inv, flags)
    cls = _classification_for(session, report)
    deformation = detect_embedded_deformation(inv, cls)
    assumptions = [f"generalized-Golod evidence asserted by the caller: {f}" for f in flags]
    cert = certify_trivial_vanishing(inv, gg, deformation, cls, assumptions)
    cert.witnesses["gg_evidence"] = gg.to_dict()
    report["certificates"] = [cert.to_dict()]
    return report


def cmd_certify_ar(args) -> dict:
    session = _session_from_args(args)
    report = _base_report(session, "certify-ar", {"assert_gg": args.assert_gg or ""})
    inv = _invariants_obj(session)
    flags = tuple(f.strip() for f in (args.assert_gg or "").split(",") if f.strip())
    gg = gg_evidence(inv, flags)
    cls = _classification_for(session, report)
    deformation = detect_embedded_deformation(inv, cls)
    assumptions = [f"generalized-Golod evidence asserted by the caller: {f}" for f in flags]
    tv_cert = certify_trivial_vanishing(inv, gg, deformation, cls, assumptions)
    ar_cert = certify_auslander_reiten(inv, gg, tv_cert, assumptions)
    report["certificates"] = [tv_cert.to_dict(), ar_cert.to_dict()]
    return report


def cmd_classify(args) -> dict:
    session = _session_from_args(args)
    report = _base_report(session, "classify", {})
    algebra = session.algebra()
    cls = classify_codim3(algebra)
    report["tor_algebra"] = cls.to_dict()
    return report


def cmd_gorenstein_test(args) -> dict:
    session = _session_from_args(args)
    report = _base_report(session, "gorenstein-test", {"module": args.module})
    algebra = session.algebra()
    module = session.module(args.module)
    cert = gorenstein_tests(algebra, module, args.module)
    report["certificates"] = [cert.to_dict()]
    return report


def cmd_verify_bounds(args) -> dict:
    session = _session_from_args(args)
    cache = _cache_from_args(args)
    if args.module and (args.m or args.n):
        raise ValidationError("give either --module, or the pair --m/--n, not both")
    if args.module:
        steps = args.steps
        report = _base_report(
            session, "verify-bounds", {"module": args.module, "steps": steps}
        )
        module, res = _resolve_cached(cache, session, args.module, steps)
        bt = res.betti_table(steps)
        inv = ring_invariants(session.algebra())
        betti = bt.to_dict()
        betti["growth_bounds"] = verify_growth_bounds(bt, inv, module.mingens)
        report["betti"] = betti
        return report
    if not (args.m and args.n):
        raise ValidationError("verify-bounds needs --module, or both --m and --n")
    lo, hi = _parse_range(args.range)
    report = _base_report(
        session, "verify-bounds", {"m": args.m, "n": args.n, "range": [lo, hi]}
    )
    m, res_m = _resolve_cached(cache, session, args.m, hi + 1)
    n_mod, res_n = _resolve_cached(cache, session, args.n, hi + 1)
    profile = tor_dims(
        m, n_mod, lo, hi, resolution=res_m, first_id=args.m, second_id=args.n
    )
    inv = ring_invariants(session.algebra())
    report["tor"] = profile.to_dict()
    report["tor"]["ratio_bounds"] = verify_ratio_bounds(
        res_m.betti_table(hi + 1), res_n.betti_table(hi + 1), profile, inv, args.window
    )
    return report


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homolab",
        description="Exact homological invariants and vanishing certificates for "
        "Artinian standard graded algebras over prime fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_file=True, **kwargs):
        p = sub.add_parser(name, **kwargs)
        if needs_file:
            p.add_argument("file", help="sectioned input file (.alg)")
        p.add_argument("--out", help="write the JSON report to this path")
        p.add_argument("--no-cache", action="store_true", help="disable the resolution cache")
        p.set_defaults(handler=fn)
        return p

    add("invariants", cmd_invariants, help="ring invariants and flags")

    p = add("resolve", cmd_resolve, help="minimal free resolution and Betti table")
    p.add_argument("--module", required=True)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--window", type=int, default=4, help="trailing ratio window")
    p.add_argument("--denominator-degree", type=int, default=3)

    p = add("tor", cmd_tor, help="Tor dimensions of a module pair")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--range", default="0..8")

    p = add("ext", cmd_ext, help="Ext dimensions of a module pair")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--range", default="0..8")

    p = add("certify-tv", cmd_certify_tv, needs_file=False, help="trivial vanishing certificate")
    p.add_argument("file", nargs="?", help="sectioned input file (.alg)")
    p.add_argument("--invariants", help="asserted invariants, e.g. e=12,c=6,ell=4,tau=1,mu2=4")
    p.add_argument("--assert-gg", help="comma-separated generalized-Golod assertions")

    p = add("certify-ar", cmd_certify_ar, needs_file=False, help="Auslander-Reiten certificate")
    p.add_argument("file", nargs="?", help="sectioned input file (.alg)")
    p.add_argument("--invariants", help="asserted invariants, e.g. e=8,c=4")
    p.add_argument("--assert-gg", help="comma-separated generalized-Golod assertions")

    add("classify", cmd_classify, help="codimension-3 homology algebra class")

    p = add("gorenstein-test", cmd_gorenstein_test, help="Ulrich-index Gorenstein tests")
    p.add_argument("--module", required=True)

    p = add("verify-bounds", cmd_verify_bounds, help="theorem-derived growth checks")
    p.add_argument("--module")
    p.add_argument("--m")
    p.add_argument("--n")
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--range", default="0..8")
    p.add_argument("--window", type=int, default=4)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HomolabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = render(report)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
