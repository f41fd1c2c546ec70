"""Minimal free resolutions by iterated syzygies, Betti tables, growth
diagnostics, and linear-recurrence detection on Betti sequences."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ValidationError
from .linalg import matmul_mod, rank_a
from .modules import FreeModule, GradedModule, minimal_kernel_generators, _gens_to_entries


@dataclass
class BettiTable:
    module_id: str
    steps: int
    graded: dict  # (i, j) -> count
    totals: list[int]

    @property
    def poincare_truncation(self) -> list[int]:
        return list(self.totals)

    def to_dict(self) -> dict:
        graded = {}
        for (i, j), c in sorted(self.graded.items()):
            graded.setdefault(str(i), {})[str(j)] = c
        return {
            "module": self.module_id,
            "steps": self.steps,
            "graded": graded,
            "totals": list(self.totals),
            "poincare_truncation": self.poincare_truncation,
        }


@dataclass
class GrowthDiagnostics:
    ratio_window: list[Fraction] = field(default_factory=list)
    lr_estimate: Fraction | None = None
    growth_class: str = "eventually-zero"

    def to_dict(self) -> dict:
        return {
            "ratio_window": [str(r) for r in self.ratio_window],
            "lr_estimate": None if self.lr_estimate is None else str(self.lr_estimate),
            "growth_class": self.growth_class,
        }


class Resolution:
    """A minimal free resolution of a module, extended on demand.

    degrees[i] lists the generator degrees of the i-th free module; diffs[i]
    is the polynomial matrix of F_{i+1} -> F_i.
    """

    def __init__(self, module: GradedModule, module_id: str = "M"):
        self.module = module
        self.module_id = module_id
        self.algebra = module.algebra
        m = module.minimize()
        self._minimized = m
        self.degrees: list[tuple[int, ...]] = [m.gen_degrees]
        self.diffs: list[tuple] = []
        self._frees: list[FreeModule] = [FreeModule(self.algebra, m.gen_degrees)]

    @property
    def steps(self) -> int:
        return len(self.degrees) - 1

    def free(self, i: int) -> FreeModule:
        return self._frees[i]

    def extend(self, steps: int) -> "Resolution":
        while self.steps < steps:
            self._next_step()
        return self

    def _next_step(self) -> None:
        i = len(self.degrees)
        if i == 1:
            m = self._minimized
            self.degrees.append(m.rel_degrees)
            self.diffs.append(m.entries)
            self._frees.append(FreeModule(self.algebra, m.rel_degrees))
            return
        src = self._frees[i - 1]
        tgt = self._frees[i - 2]
        entries = self.diffs[i - 2]
        if src.rank == 0:
            gens = []
        else:
            gens = minimal_kernel_generators(
                src, lambda d: src.realize_map_to(tgt, entries, d)
            )
        rel_degrees, new_entries = _gens_to_entries(src, gens)
        self.degrees.append(rel_degrees)
        self.diffs.append(new_entries)
        self._frees.append(FreeModule(self.algebra, rel_degrees))

    def betti(self, i: int) -> int:
        return len(self.degrees[i])

    def betti_table(self, steps: int | None = None) -> BettiTable:
        steps = self.steps if steps is None else steps
        self.extend(steps)
        graded: dict = {}
        totals = []
        for i in range(steps + 1):
            for j in self.degrees[i]:
                graded[(i, j)] = graded.get((i, j), 0) + 1
            totals.append(len(self.degrees[i]))
        return BettiTable(self.module_id, steps, graded, totals)

    def realize_diff(self, i: int, d: int) -> np.ndarray:
        """k-matrix of d_i : F_i -> F_{i-1} on the degree-d piece."""
        return self._frees[i].realize_map_to(self._frees[i - 1], self.diffs[i - 1], d)

    # -- structural checks ---------------------------------------------------

    def verify(self) -> None:
        """Assert minimality and d∘d = 0 at the polynomial level."""
        A = self.algebra
        for i, entries in enumerate(self.diffs, start=1):
            tgt, src = self.degrees[i - 1], self.degrees[i]
            for r, row in enumerate(entries):
                for c, f in enumerate(row):
                    if f.is_zero():
                        continue
                    if f.homogeneous_degree() != src[c] - tgt[r]:
                        raise ValidationError(f"differential {i} entry ({r},{c}) has wrong degree")
                    if f.homogeneous_degree() < 1:
                        raise ValidationError(f"differential {i} has a unit entry; not minimal")
        for i in range(1, len(self.diffs)):
            a, b = self.diffs[i - 1], self.diffs[i]
            rows, mid, cols = len(self.degrees[i - 1]), len(self.degrees[i]), len(self.degrees[i + 1])
            for r in range(rows):
                for c in range(cols):
                    acc = None
                    for k in range(mid):
                        term = A.nf(a[r][k] * b[k][c])
                        acc = term if acc is None else acc + term
                    if acc is not None and not acc.is_zero():
                        raise ValidationError(f"d_{i} ∘ d_{i+1} is nonzero at ({r},{c})")

    def exactness_check(self) -> None:
        """Degreewise rank identity: nullity(d_i) = rank(d_{i+1}) for i >= 1."""
        p = self.algebra.p
        for i in range(1, self.steps):
            F = self._frees[i]
            for d in F.support():
                n = F.dim(d)
                if n == 0:
                    continue
                r_in = rank_a(self.realize_diff(i, d), p)
                r_out = rank_a(self.realize_diff(i + 1, d), p)
                if n - r_in != r_out:
                    raise ValidationError(
                        f"resolution not exact at step {i}, degree {d}"
                    )

    # -- serialization (resolution cache) --------------------------------------

    def to_payload(self) -> dict:
        names = self.algebra.variables
        return {
            "module": self.module.minimize().key(),
            "steps": self.steps,
            "degrees": [list(d) for d in self.degrees],
            "diffs": [
                [[f.format(names) for f in row] for row in entries]
                for entries in self.diffs
            ],
        }

    @classmethod
    def from_payload(cls, module: GradedModule, module_id: str, payload: dict) -> "Resolution":
        from .poly import parse_polynomial

        res = cls(module, module_id)
        A = module.algebra
        if list(res.degrees[0]) != payload["degrees"][0]:
            raise ValidationError("cached resolution does not match the module")
        for i, entries in enumerate(payload["diffs"], start=1):
            degs = tuple(payload["degrees"][i])
            parsed = tuple(
                tuple(parse_polynomial(s, A.variables, A.field) for s in row)
                for row in entries
            )
            res.degrees.append(degs)
            res.diffs.append(parsed)
            res._frees.append(FreeModule(A, degs))
        return res


def resolve(module: GradedModule, steps: int, module_id: str = "M") -> Resolution:
    if steps < 0:
        raise ValidationError("steps must be nonnegative")
    return Resolution(module, module_id).extend(steps)


def limit_ratio(bt: BettiTable, window: int) -> GrowthDiagnostics:
    """Trailing-window ratio diagnostics; an explicitly non-certifying heuristic."""
    totals = bt.totals
    steps = bt.steps
    if any(b == 0 for b in totals):
        first = totals.index(0)
        if any(totals[first:]):
            raise ValidationError("Betti numbers restart after vanishing; corrupt table")
        return GrowthDiagnostics([], None, "eventually-zero")
    window = max(1, min(window, steps))
    ratios = [
        Fraction(totals[i + 1], totals[i]) for i in range(steps - window, steps)
    ]
    lr = max(ratios)
    if all(r == 1 for r in ratios):
        cls = "bounded"
    elif all(r > 1 + Fraction(1, steps) for r in ratios):
        cls = "exponential-like"
    else:
        cls = "polynomial-like"
    return GrowthDiagnostics(ratios, lr, cls)


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Exact rational solve of an overdetermined system; None if inconsistent."""
    m = [row[:] + [b] for row, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [v - f * w for v, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return x


def rational_fit(bt: BettiTable, denom_degree: int) -> dict | None:
    """Linear-recurrence detection on the Betti totals.

    Looks for the smallest order r <= denom_degree with
    b_i = sum_t a_t b_{i-t} for every i in [r, steps]; returns the recurrence
    and the matching denominator polynomial 1 - a_1 t - ... - a_r t^r.
    Diagnostic only; never a proof of rationality.
    """
    if bt.steps < 2 * denom_degree + 2:
        raise ValidationError(
            f"need at least {2 * denom_degree + 2} computed steps for denominator degree {denom_degree}"
        )
    b = [Fraction(v) for v in bt.totals]
    for r in range(1, denom_degree + 1):
        rows = [[b[i - t] for t in range(1, r + 1)] for i in range(r, len(b))]
        rhs = [b[i] for i in range(r, len(b))]
        sol = _solve_exact(rows, rhs)
        if sol is None:
            continue
        if all(sum(a * row[t] for t, a in enumerate(sol)) == y for row, y in zip(rows, rhs)):
            denom = [Fraction(1)] + [-a for a in sol]
            return {
                "order": r,
                "recurrence": [str(a) for a in sol],
                "denominator": [str(c) for c in denom],
            }
    return None
