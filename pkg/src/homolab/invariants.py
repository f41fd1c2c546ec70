"""Ring-level numerical invariants and structural flags."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import rank_a
from .poly import Polynomial, mono_mul, monomials_of_degree
from .quotient import QuotientAlgebra


@dataclass(frozen=True)
class RingInvariants:
    e: int | None = None
    c: int | None = None
    ell: int | None = None
    tau: int | None = None
    h_vector: tuple[int, ...] | None = None
    mu_I: int | None = None
    mu_m2: int | None = None
    gorenstein: bool | None = None
    complete_intersection: bool | None = None
    hypersurface: bool | None = None
    stretched: bool | None = None
    m4_zero: bool | None = None
    asserted: bool = False

    def to_dict(self) -> dict:
        return {
            "e": self.e,
            "c": self.c,
            "ell": self.ell,
            "tau": self.tau,
            "h_vector": list(self.h_vector) if self.h_vector is not None else None,
            "mu_I": self.mu_I,
            "mu_m2": self.mu_m2,
            "gorenstein": self.gorenstein,
            "complete_intersection": self.complete_intersection,
            "hypersurface": self.hypersurface,
            "stretched": self.stretched,
            "m4_zero": self.m4_zero,
            "asserted": self.asserted,
        }


def socle_dimension(a: QuotientAlgebra) -> int:
    """dim of the annihilator of the maximal ideal: degreewise common kernels."""
    total = 0
    for d in range(a.socle_degree + 1):
        nd = a.dim(d)
        if nd == 0:
            continue
        stacked = np.vstack([a.var_action(v, d) for v in range(a.n)])
        total += nd - rank_a(stacked, a.p)
    return total


def ideal_generator_degrees(a: QuotientAlgebra) -> dict[int, int]:
    """Degreewise count of minimal generators of I, inside the polynomial ring.

    I_d has the basis {m - nf(m)} over nonstandard monomials m of degree d;
    new generators are the complement of the span of x_v * I_{d-1}.
    """
    p = a.p
    n = a.n
    standard = {m for basis in a.basis_by_degree for m in basis}
    counts: dict[int, int] = {}
    prev_basis: list[tuple] = []  # I_{d-1} vectors over the monomial basis of S_{d-1}
    prev_monos: list = []
    for d in range(1, a.socle_degree + 2):
        monos = monomials_of_degree(n, d)
        index = {m: i for i, m in enumerate(monos)}
        vecs = []
        for m in monos:
            if m in standard:
                continue
            rem = a.nf(Polynomial(a.field, n, {m: 1}))
            v = np.zeros(len(monos), dtype=np.int64)
            v[index[m]] = 1
            for mm, cc in rem.terms.items():
                v[index[mm]] = (-cc) % p
            vecs.append(v)
        span_rows = []
        for w in prev_basis:
            for v in range(n):
                shifted = np.zeros(len(monos), dtype=np.int64)
                xv = tuple(1 if t == v else 0 for t in range(n))
                for i, mprev in enumerate(prev_monos):
                    if w[i]:
                        shifted[index[mono_mul(mprev, xv)]] = (
                            shifted[index[mono_mul(mprev, xv)]] + int(w[i])
                        ) % p
                span_rows.append(shifted)
        dim_span = rank_a(np.array(span_rows, dtype=np.int64), p) if span_rows else 0
        new = len(vecs) - dim_span
        if new:
            counts[d] = new
        prev_basis = vecs
        prev_monos = monos
    return counts


def ring_invariants(a: QuotientAlgebra) -> RingInvariants:
    h = a.hilbert_function
    e = sum(h)
    c = a.n
    if h[0] != 1 or (len(h) > 1 and h[1] != c):
        raise ValidationError("hilbert function is inconsistent with the variable count")
    ell = a.socle_degree + 1
    tau = socle_dimension(a)
    gen_degrees = ideal_generator_degrees(a)
    mu_i = sum(gen_degrees.values())
    if 1 in gen_degrees:
        raise ValidationError("ideal contains linear forms after reduction")
    mu_m2 = h[2] if len(h) > 2 else 0
    gorenstein = tau == 1
    ci = mu_i == c
    if ci and not gorenstein:
        raise ValidationError("complete intersection with socle dimension != 1; internal error")
    return RingInvariants(
        e=e,
        c=c,
        ell=ell,
        tau=tau,
        h_vector=h,
        mu_I=mu_i,
        mu_m2=mu_m2,
        gorenstein=gorenstein,
        complete_intersection=ci,
        hypersurface=c <= 1 or mu_i <= 1,
        stretched=e == c + ell - 1,
        m4_zero=ell <= 4,
    )


def asserted_invariants(
    e: int | None = None,
    c: int | None = None,
    ell: int | None = None,
    tau: int | None = None,
    mu_m2: int | None = None,
    gorenstein: bool | None = None,
) -> RingInvariants:
    """Invariants supplied by the caller instead of a defining ideal.

    Flags derivable from the given numbers are filled in; everything else
    stays unknown (None) and downstream rules treat unknown as not firing.
    """
    if gorenstein is None and tau is not None:
        gorenstein = tau == 1
    if gorenstein and tau is None:
        tau = 1
    stretched = None
    if e is not None and c is not None and ell is not None:
        stretched = e == c + ell - 1
    return RingInvariants(
        e=e,
        c=c,
        ell=ell,
        tau=tau,
        mu_m2=mu_m2,
        gorenstein=gorenstein,
        hypersurface=(c <= 1) if c is not None else None,
        stretched=stretched,
        m4_zero=(ell <= 4) if ell is not None else None,
        asserted=True,
    )
