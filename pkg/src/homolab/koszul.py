"""Koszul homology algebra of the quotient and the codimension-3 homology
classification (CI / TE / B / G(r) / H(p,q)) feeding embedded-deformation
detection."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import CodimNotThree
from .linalg import kernel_a, matmul_mod, pivot_columns_a, rank_a, solve_a
from .quotient import QuotientAlgebra


@dataclass
class KoszulHomology:
    dims: tuple[int, ...]
    d11: int | None = None  # dim of H1*H1 inside H2
    d12: int | None = None  # dim of H1*H2 inside H3
    pairing_rank: int | None = None  # rank of H1 -> Hom(H2, H3)

    @property
    def alternating_sum(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "d11": self.d11,
            "d12": self.d12,
            "pairing_rank": self.pairing_rank,
        }


@dataclass
class TorAlgebraClass:
    tag: str  # CI, TE, B, G, H, UNKNOWN
    params: tuple[int, ...] = ()
    embedded_deformation: bool = False
    evidence: dict | None = None

    def label(self) -> str:
        if self.tag in ("G", "H") and self.params:
            return f"{self.tag}({','.join(map(str, self.params))})"
        return self.tag

    def to_dict(self) -> dict:
        return {
            "class": self.label(),
            "tag": self.tag,
            "params": list(self.params),
            "embedded_deformation": self.embedded_deformation,
            "evidence": self.evidence,
        }


class _KoszulComplex:
    """Exterior complex on all the variables over A, realized degreewise."""

    def __init__(self, a: QuotientAlgebra):
        self.a = a
        self.n = a.n
        self.subsets = [list(combinations(range(self.n), t)) for t in range(self.n + 1)]
        self.subset_index = [
            {s: i for i, s in enumerate(level)} for level in self.subsets
        ]

    def dim(self, t: int, d: int) -> int:
        if t < 0 or t > self.n:
            return 0
        return len(self.subsets[t]) * self.a.dim(d - t)

    def boundary(self, t: int, d: int) -> np.ndarray:
        """Matrix of the differential K_t -> K_{t-1} on internal degree d."""
        a = self.a
        rows, cols = self.dim(t - 1, d), self.dim(t, d)
        M = np.zeros((rows, cols), dtype=np.int64)
        if rows == 0 or cols == 0:
            return M
        blk_s = a.dim(d - t)
        blk_t = a.dim(d - t + 1)
        for si, S in enumerate(self.subsets[t]):
            for j, v in enumerate(S):
                T = S[:j] + S[j + 1 :]
                ti = self.subset_index[t - 1][T]
                sign = 1 if j % 2 == 0 else -1
                act = a.var_action(v, d - t)
                M[ti * blk_t : (ti + 1) * blk_t, si * blk_s : (si + 1) * blk_s] = (
                    M[ti * blk_t : (ti + 1) * blk_t, si * blk_s : (si + 1) * blk_s]
                    + sign * act
                ) % a.p
        return M

    def wedge(self, t1: int, d1: int, v1: np.ndarray, t2: int, d2: int, v2: np.ndarray) -> np.ndarray:
        """Wedge product of chains; output in K_{t1+t2} at degree d1+d2."""
        a = self.a
        t, d = t1 + t2, d1 + d2
        out = np.zeros(self.dim(t, d), dtype=np.int64)
        b1, b2, b = a.dim(d1 - t1), a.dim(d2 - t2), a.dim(d - t)
        if b == 0:
            return out
        table = a.table(d1 - t1, d2 - t2)
        nz1 = np.nonzero(v1)[0]
        nz2 = np.nonzero(v2)[0]
        for i1 in nz1:
            s1, m1 = divmod(int(i1), b1)
            S = self.subsets[t1][s1]
            c1 = int(v1[i1])
            for i2 in nz2:
                s2, m2 = divmod(int(i2), b2)
                T = self.subsets[t2][s2]
                if set(S) & set(T):
                    continue
                sign, U = _merge_sign(S, T)
                ui = self.subset_index[t][U]
                coeffs = table[m1, m2]  # vector over the degree-(d-t) basis
                out[ui * b : (ui + 1) * b] = (
                    out[ui * b : (ui + 1) * b] + sign * c1 * int(v2[i2]) * coeffs
                ) % a.p
        return out


def _merge_sign(S: tuple, T: tuple) -> tuple[int, tuple]:
    merged = list(S) + list(T)
    inversions = sum(1 for i, x in enumerate(merged) for y in merged[i + 1 :] if x > y)
    return (1 if inversions % 2 == 0 else -1, tuple(sorted(merged)))


class _HomologyBasis:
    """Cycle representatives for H_t in one internal degree, with a solver
    producing class coordinates of arbitrary cycles."""

    def __init__(self, kx: _KoszulComplex, t: int, d: int):
        p = kx.a.p
        Z = kernel_a(kx.boundary(t, d), p)
        Bsrc = kx.boundary(t + 1, d)
        piv_b = pivot_columns_a(Bsrc, p)
        B = Bsrc[:, piv_b] if piv_b else np.zeros((kx.dim(t, d), 0), dtype=np.int64)
        comb = np.hstack([B, Z])
        reps = []
        for j in pivot_columns_a(comb, p):
            if j >= B.shape[1]:
                reps.append(Z[:, j - B.shape[1]])
        self.p = p
        self.boundaries = B
        self.reps = (
            np.column_stack(reps) if reps else np.zeros((kx.dim(t, d), 0), dtype=np.int64)
        )
        self.dim = self.reps.shape[1]
        self._solver = np.hstack([B, self.reps]) if (B.shape[1] + self.dim) else None

    def class_coords(self, cycle: np.ndarray) -> np.ndarray:
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        x = solve_a(self._solver, cycle, self.p)
        return x[self.boundaries.shape[1] :]


def koszul_homology(a: QuotientAlgebra, products: bool = True) -> KoszulHomology:
    """Homology of the Koszul complex on all variables, with the product
    ranks used by the codimension-3 classification."""
    kx = _KoszulComplex(a)
    p = a.p
    n = a.n
    degree_range = range(0, a.socle_degree + n + 1)

    dims = []
    for t in range(n + 1):
        total = 0
        for d in degree_range:
            nd = kx.dim(t, d)
            if nd == 0:
                continue
            total += nd - rank_a(kx.boundary(t, d), p) - rank_a(kx.boundary(t + 1, d), p)
        dims.append(total)

    if not products or n < 3:
        return KoszulHomology(tuple(dims))

    bases: dict[tuple[int, int], _HomologyBasis] = {}

    def basis(t: int, d: int) -> _HomologyBasis:
        if (t, d) not in bases:
            bases[(t, d)] = _HomologyBasis(kx, t, d)
        return bases[(t, d)]

    def reps_of(t: int):
        out = []  # (degree, vector)
        for d in degree_range:
            if kx.dim(t, d) == 0:
                continue
            hb = basis(t, d)
            for j in range(hb.dim):
                out.append((d, hb.reps[:, j]))
        return out

    h1 = reps_of(1)
    h2 = reps_of(2)
    h3 = reps_of(3)

    offsets2 = _degree_offsets(h2)
    offsets3 = _degree_offsets(h3)

    # span of H1*H1 inside H2
    prods11 = []
    for i in range(len(h1)):
        for j in range(i + 1, len(h1)):
            d1, v1 = h1[i]
            d2, v2 = h1[j]
            cycle = kx.wedge(1, d1, v1, 1, d2, v2)
            coords = basis(2, d1 + d2).class_coords(cycle)
            prods11.append(_globalize(coords, d1 + d2, offsets2, len(h2)))
    d11 = rank_a(np.array(prods11, dtype=np.int64), p) if prods11 else 0

    # span of H1*H2 inside H3, and the pairing H1 -> Hom(H2, H3)
    prods12 = []
    pairing_rows = []
    for d1, v1 in h1:
        row_blocks = []
        for d2, v2 in h2:
            cycle = kx.wedge(1, d1, v1, 2, d2, v2)
            coords = basis(3, d1 + d2).class_coords(cycle)
            g = _globalize(coords, d1 + d2, offsets3, len(h3))
            prods12.append(g)
            row_blocks.append(g)
        pairing_rows.append(np.concatenate(row_blocks) if row_blocks else np.zeros(0, dtype=np.int64))
    d12 = rank_a(np.array(prods12, dtype=np.int64), p) if prods12 else 0
    r_g = rank_a(np.array(pairing_rows, dtype=np.int64), p) if pairing_rows else 0

    return KoszulHomology(tuple(dims), d11, d12, r_g)


def _degree_offsets(reps):
    offsets = {}
    pos = 0
    for d, _ in reps:
        if d not in offsets:
            offsets[d] = pos
        pos += 1
    return offsets


def _globalize(coords: np.ndarray, d: int, offsets: dict, total: int) -> np.ndarray:
    out = np.zeros(total, dtype=np.int64)
    if coords.size:
        off = offsets[d]
        out[off : off + coords.size] = coords
    return out


def classify_codim3(a: QuotientAlgebra, kh: KoszulHomology | None = None) -> TorAlgebraClass:
    """Multiplicative class of the Koszul homology algebra for c = 3.

    The decision table reads the measured product ranks:
      CI                   mu = 3
      TE    (3, 0, 0)      exterior square injective, top products vanish
      B     (1, 1, 2)
      G(r)  (0, 1, r>=2)
      H(p,q) d12 <= 1 pairing, parameters (d11, d12)
    Unmatched data returns UNKNOWN, never a guess.
    """
    if a.n != 3:
        raise CodimNotThree(f"classification requires 3 variables, got {a.n}")
    if kh is None or kh.d11 is None:
        kh = koszul_homology(a, products=True)
    mu = kh.dims[1]
    tau = kh.dims[3]
    evidence = kh.to_dict()
    if kh.dims != (1, mu, mu + tau - 1, tau):
        return TorAlgebraClass("UNKNOWN", (), False, evidence)
    if mu == 3:
        return TorAlgebraClass("CI", (), True, evidence)
    d11, d12, rg = kh.d11, kh.d12, kh.pairing_rank
    cls: TorAlgebraClass | None = None
    if (d11, d12, rg) == (3, 0, 0):
        cls = TorAlgebraClass("TE", (), False, evidence)
    elif (d11, d12, rg) == (1, 1, 2):
        cls = TorAlgebraClass("B", (), False, evidence)
    elif d11 == 0 and d12 == 1 and rg >= 2:
        cls = TorAlgebraClass("G", (rg,), False, evidence)
    elif (d12 == 0 and rg == 0) or (d12 >= 1 and rg == 1):
        p_par, q_par = d11, d12
        # the class data must fit inside the homology dims
        if p_par + 1 <= mu and p_par + q_par <= mu + tau - 1 and q_par <= tau:
            deform = q_par >= 1 and (p_par, q_par) == (mu - 1, mu - 2) and mu >= 4
            cls = TorAlgebraClass("H", (p_par, q_par), deform, evidence)
    if cls is None:
        return TorAlgebraClass("UNKNOWN", (), False, evidence)
    return cls


def detect_embedded_deformation(inv, cls: TorAlgebraClass | None = None) -> str:
    """Tri-state test for an embedded deformation: 'yes', 'no', 'unknown'.

    Decidable cases: complete intersections (yes); codimension 2 non-CI
    (no, those are Golod); codimension 3 via the classification, where the
    deformation classes are exactly CI and H(mu-1, mu-2) with mu >= 4.
    """
    if inv.complete_intersection:
        return "yes"
    if inv.c == 2 and inv.complete_intersection is False:
        return "no"
    if inv.c == 3 and cls is not None:
        if cls.tag == "UNKNOWN":
            return "unknown"
        return "yes" if cls.embedded_deformation else "no"
    return "unknown"
