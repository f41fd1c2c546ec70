"""Artinian standard graded quotient algebras A = k[x_1..x_n]/I.

An algebra is materialized as per-degree bases of standard monomials with
multiplication tables, the substrate for all module computations.
"""
from __future__ import annotations

import numpy as np

from .errors import (
    LinearFormsPresent,
    NonHomogeneousIdeal,
    NotArtinian,
    ValidationError,
)
from .groebner import buchberger, normal_form
from .linalg import PrimeField
from .poly import (
    DEGREVLEX,
    Monomial,
    Polynomial,
    TermOrder,
    mono_degree,
    mono_divides,
    mono_mul,
    monomials_of_degree,
)


class QuotientAlgebra:
    """Immutable after construction; build with :meth:`build`."""

    def __init__(self, field, variables, generators, order, groebner_basis, basis_by_degree):
        self.field: PrimeField = field
        self.variables: tuple[str, ...] = tuple(variables)
        self.n = len(self.variables)
        self.ideal_generators: tuple[Polynomial, ...] = tuple(generators)
        self.order: TermOrder = order
        self.groebner: tuple[Polynomial, ...] = tuple(groebner_basis)
        self.basis_by_degree: tuple[tuple[Monomial, ...], ...] = tuple(
            tuple(b) for b in basis_by_degree
        )
        self.socle_degree = len(self.basis_by_degree) - 1
        self._index = {}
        for d, basis in enumerate(self.basis_by_degree):
            for i, m in enumerate(basis):
                self._index[m] = (d, i)
        self._tables: dict = {}
        self._var_actions: dict = {}

    # -- construction -------------------------------------------------------

    @classmethod
    def build(cls, field: PrimeField, variables, generators, order: TermOrder = DEGREVLEX):
        variables = tuple(variables)
        if not variables:
            raise ValidationError("at least one variable is required")
        if len(set(variables)) != len(variables):
            raise ValidationError("duplicate variable names")
        gens = [g for g in generators]
        if not gens or all(g.is_zero() for g in gens):
            raise ValidationError("no nonzero ideal generators")
        n = len(variables)
        for g in gens:
            if g.is_zero():
                continue
            if g.nvars != n or g.field != field:
                raise ValidationError("generator lives in a different ring")
            if not g.is_homogeneous():
                raise NonHomogeneousIdeal(
                    f"generator {g.format(variables)} is not homogeneous"
                )
            if g.degree() == 0:
                raise LinearFormsPresent("ideal contains a unit")
            if g.degree() == 1:
                raise LinearFormsPresent(
                    f"ideal contains the linear form {g.format(variables)}"
                )
        gb = buchberger([g for g in gens if g], order)
        lms = [g.leading(order)[0] for g in gb]
        for i in range(n):
            if not any(
                m[i] > 0 and all(e == 0 for j, e in enumerate(m) if j != i) for m in lms
            ):
                raise NotArtinian(
                    f"no power of {variables[i]} in the leading-term ideal; "
                    "the quotient is infinite-dimensional"
                )
        basis_by_degree = []
        d = 0
        while True:
            basis = [
                m
                for m in monomials_of_degree(n, d)
                if not any(mono_divides(lm, m) for lm in lms)
            ]
            if not basis:
                break
            basis.sort(key=order.key, reverse=True)
            basis_by_degree.append(basis)
            d += 1
        return cls(field, variables, gens, order, gb, basis_by_degree)

    # -- basic data ---------------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    def dim(self, d: int) -> int:
        if 0 <= d <= self.socle_degree:
            return len(self.basis_by_degree[d])
        return 0

    @property
    def hilbert_function(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.basis_by_degree)

    @property
    def length(self) -> int:
        return sum(self.hilbert_function)

    def basis(self, d: int):
        if 0 <= d <= self.socle_degree:
            return self.basis_by_degree[d]
        return ()

    # -- normal forms and vector realizations -------------------------------

    def nf(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.groebner, self.order)

    def to_vector(self, f: Polynomial, d: int) -> np.ndarray:
        """Coordinates of nf(f) in the degree-d basis (f homogeneous)."""
        g = self.nf(f)
        v = np.zeros(self.dim(d), dtype=np.int64)
        for m, c in g.terms.items():
            dd, i = self._index[m]
            if dd != d:
                raise ValidationError("element is not homogeneous of the stated degree")
            v[i] = c
        return v

    def from_vector(self, v, d: int) -> Polynomial:
        basis = self.basis(d)
        terms = {m: int(c) for m, c in zip(basis, v) if int(c) % self.p}
        return Polynomial(self.field, self.n, terms)

    def mult(self, f: Polynomial, g: Polynomial) -> Polynomial:
        return self.nf(f * g)

    # -- multiplication tables ----------------------------------------------

    def table(self, i: int, j: int) -> np.ndarray:
        """Structure constants of A_i x A_j -> A_{i+j}, shape (dim_i, dim_j, dim_{i+j})."""
        key = (i, j)
        if key in self._tables:
            return self._tables[key]
        di, dj, dk = self.dim(i), self.dim(j), self.dim(i + j)
        T = np.zeros((di, dj, dk), dtype=np.int64)
        if dk:
            for a, u in enumerate(self.basis(i)):
                for b, v in enumerate(self.basis(j)):
                    prod = Polynomial(self.field, self.n, {mono_mul(u, v): 1})
                    T[a, b, :] = self.to_vector(prod, i + j)
        self._tables[key] = T
        return T

    def var_action(self, v: int, d: int) -> np.ndarray:
        """Matrix of multiplication by x_v from A_d to A_{d+1}."""
        key = (v, d)
        if key in self._var_actions:
            return self._var_actions[key]
        T = self.table(1, d)
        mono = tuple(1 if i == v else 0 for i in range(self.n))
        row = self._index[mono][1]
        M = T[row].T.copy()  # (dim_{d+1}, dim_d)
        self._var_actions[key] = M
        return M

    def monomial_matrix(self, u: Monomial, src_deg: int) -> np.ndarray:
        """Matrix of multiplication by the standard monomial u on A_{src_deg}."""
        e = mono_degree(u)
        T = self.table(e, src_deg)
        row = self._index[u][1]
        return T[row].T

    def mult_matrix(self, f: Polynomial, src_deg: int) -> np.ndarray:
        """Matrix of multiplication by a nonzero homogeneous normal-form element."""
        e = f.homogeneous_degree()
        if e < 0:
            raise ValueError("mult_matrix needs a nonzero element")
        M = np.zeros((self.dim(src_deg + e), self.dim(src_deg)), dtype=np.int64)
        if M.size == 0:
            return M
        for m, c in f.terms.items():
            M = (M + c * self.monomial_matrix(m, src_deg)) % self.p
        return M

    # -- identity -----------------------------------------------------------

    def key(self) -> str:
        gens = sorted(g.format(self.variables) for g in self.ideal_generators if g)
        return "|".join(
            [
                f"p={self.p}",
                f"order={self.order.name}",
                "vars=" + ",".join(self.variables),
                "ideal=" + ";".join(gens),
            ]
        )

    def __repr__(self):
        gens = ", ".join(g.format(self.variables) for g in self.ideal_generators)
        return f"GF({self.p})[{', '.join(self.variables)}]/({gens})"
