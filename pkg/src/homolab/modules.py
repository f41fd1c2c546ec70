"""Finitely presented graded modules over an Artinian quotient algebra.

A module is a cokernel presentation with degree bookkeeping; every
computation reduces to exact linear algebra on its degreewise realization.
"""
from __future__ import annotations

import numpy as np

from .errors import ValidationError, ZeroModule
from .linalg import RowSpace, kernel_a, matmul_mod, pivot_columns_a
from .poly import Monomial, Polynomial, mono_degree
from .quotient import QuotientAlgebra


class FreeModule:
    """A graded free module, a direct sum of shifted copies of the algebra."""

    def __init__(self, algebra: QuotientAlgebra, degrees):
        self.algebra = algebra
        self.degrees = tuple(degrees)
        self._offsets: dict[int, list[int]] = {}
        self._var_mult: dict = {}

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def dim(self, d: int) -> int:
        return sum(self.algebra.dim(d - g) for g in self.degrees)

    def offsets(self, d: int) -> list[int]:
        if d not in self._offsets:
            out = []
            pos = 0
            for g in self.degrees:
                out.append(pos)
                pos += self.algebra.dim(d - g)
            self._offsets[d] = out
        return self._offsets[d]

    def support(self):
        if not self.degrees:
            return range(0)
        lo = min(self.degrees)
        hi = max(self.degrees) + self.algebra.socle_degree
        return range(lo, hi + 1)

    def var_mult(self, v: int, d: int) -> np.ndarray:
        """Block-diagonal matrix of x_v from degree d to d+1."""
        key = (v, d)
        if key not in self._var_mult:
            A = self.algebra
            M = np.zeros((self.dim(d + 1), self.dim(d)), dtype=np.int64)
            off_s, off_t = self.offsets(d), self.offsets(d + 1)
            for i, g in enumerate(self.degrees):
                blk = A.var_action(v, d - g)
                if blk.size:
                    M[off_t[i] : off_t[i] + blk.shape[0], off_s[i] : off_s[i] + blk.shape[1]] = blk
            self._var_mult[key] = M
        return self._var_mult[key]

    def realize_map_to(self, target: "FreeModule", entries, d: int) -> np.ndarray:
        """k-matrix at degree d of the map given by a polynomial entry grid.

        entries[i][j] maps this module's generator j into target generator i.
        """
        M = np.zeros((target.dim(d), self.dim(d)), dtype=np.int64)
        off_s, off_t = self.offsets(d), target.offsets(d)
        for i, tg in enumerate(target.degrees):
            row = entries[i]
            for j, sg in enumerate(self.degrees):
                f = row[j]
                if f is None or f.is_zero():
                    continue
                blk = self.algebra.mult_matrix(f, d - sg)
                if blk.size:
                    M[off_t[i] : off_t[i] + blk.shape[0], off_s[j] : off_s[j] + blk.shape[1]] = blk
        return M

    def vector_to_polys(self, vec, d: int) -> list[Polynomial]:
        """Split a degree-d coordinate vector into one polynomial per generator."""
        A = self.algebra
        out = []
        off = self.offsets(d)
        for i, g in enumerate(self.degrees):
            k = A.dim(d - g)
            out.append(A.from_vector(vec[off[i] : off[i] + k], d - g))
        return out


class ModuleRep:
    """Degreewise k-realization of a finite graded module with its variable
    actions.  The basis is fixed once; all maps are matrices in it."""

    def __init__(self, algebra: QuotientAlgebra, dims: dict[int, int], actions: dict):
        self.algebra = algebra
        self.dims = {d: n for d, n in dims.items() if n}
        self.actions = actions  # (v, d) -> ndarray dim(d+1) x dim(d)
        self._mono_cache: dict = {}

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    @property
    def length(self) -> int:
        return sum(self.dims.values())

    def support(self):
        if not self.dims:
            return range(0)
        return range(min(self.dims), max(self.dims) + 1)

    def action(self, v: int, d: int) -> np.ndarray:
        M = self.actions.get((v, d))
        if M is None:
            return np.zeros((self.dim(d + 1), self.dim(d)), dtype=np.int64)
        return M

    def monomial_action(self, u: Monomial, d: int) -> np.ndarray:
        e = mono_degree(u)
        if e == 0:
            return np.eye(self.dim(d), dtype=np.int64)
        key = (u, d)
        if key not in self._mono_cache:
            p = self.algebra.p
            M = np.eye(self.dim(d), dtype=np.int64)
            cur = d
            for v, exp in enumerate(u):
                for _ in range(exp):
                    M = matmul_mod(self.action(v, cur), M, p)
                    cur += 1
            self._mono_cache[key] = M
        return self._mono_cache[key]

    def poly_action(self, f: Polynomial, d: int) -> np.ndarray:
        """Matrix of multiplication by a homogeneous element on degree d."""
        e = f.homogeneous_degree()
        p = self.algebra.p
        M = np.zeros((self.dim(d + e), self.dim(d)), dtype=np.int64)
        if M.size == 0:
            return M
        for m, c in f.terms.items():
            M = (M + c * self.monomial_action(m, d)) % p
        return M

    def dual(self) -> "ModuleRep":
        """Graded k-dual with contragredient action."""
        dims = {-d: n for d, n in self.dims.items()}
        actions = {}
        for d in self.dims:
            for v in range(self.algebra.n):
                M = self.action(v, d)  # dim(d+1) x dim(d)
                if M.size:
                    actions[(v, -d - 1)] = M.T % self.algebra.p
        return ModuleRep(self.algebra, dims, actions)

    def minimal_generator_positions(self) -> list[tuple[int, int]]:
        """(degree, basis position) of a minimal generating set: degreewise
        complements of the image of multiplication by degree-one elements."""
        out = []
        p = self.algebra.p
        for d in self.support():
            nd = self.dim(d)
            if nd == 0:
                continue
            spans = [
                self.action(v, d - 1)
                for v in range(self.algebra.n)
                if self.dim(d - 1)
            ]
            if spans:
                S = np.hstack(spans)
                rs = RowSpace(S.T, p)
                free = rs.free_positions()
            else:
                free = list(range(nd))
            out.extend((d, pos) for pos in free)
        return out


def rep_from_presentation(module: "GradedModule") -> ModuleRep:
    A = module.algebra
    p = A.p
    F0 = FreeModule(A, module.gen_degrees)
    F1 = FreeModule(A, module.rel_degrees)
    dims: dict[int, int] = {}
    free_pos: dict[int, list[int]] = {}
    spaces: dict[int, RowSpace] = {}
    for d in F0.support():
        n0 = F0.dim(d)
        if n0 == 0:
            continue
        B = F1.realize_map_to(F0, module.entries, d) if F1.rank else np.zeros((n0, 0), dtype=np.int64)
        rs = RowSpace(B.T, p)
        spaces[d] = rs
        free_pos[d] = rs.free_positions()
        dims[d] = len(free_pos[d])
    actions = {}
    for d in list(dims):
        if dims.get(d, 0) == 0 or dims.get(d + 1, 0) == 0:
            continue
        incl = free_pos[d]
        rs_next = spaces[d + 1]
        free_next = free_pos[d + 1]
        for v in range(A.n):
            FX = F0.var_mult(v, d)[:, incl]
            reduced = rs_next.reduce(FX.T)
            actions[(v, d)] = reduced[:, free_next].T.copy()
    return ModuleRep(A, dims, actions)


def minimal_kernel_generators(F: FreeModule, realize) -> list[tuple[int, np.ndarray]]:
    """Minimal generators of the kernel of a degree-zero map out of F.

    realize(d) returns the k-matrix of the map on the degree-d piece of F.
    Returns (degree, coordinate vector in F_d) pairs, lowest degree first and
    in kernel-basis order within a degree.
    """
    p = F.algebra.p
    gens: list[tuple[int, np.ndarray]] = []
    prev_K: np.ndarray | None = None
    for d in F.support():
        nd = F.dim(d)
        if nd == 0:
            prev_K = None
            continue
        K = kernel_a(realize(d), p)
        if K.shape[1] == 0:
            prev_K = K
            continue
        if prev_K is not None and prev_K.shape[1]:
            spans = [
                matmul_mod(F.var_mult(v, d - 1), prev_K, p) for v in range(F.algebra.n)
            ]
            W = np.hstack(spans)
        else:
            W = np.zeros((nd, 0), dtype=np.int64)
        comb = np.hstack([W, K])
        for j in pivot_columns_a(comb, p):
            if j >= W.shape[1]:
                gens.append((d, K[:, j - W.shape[1]].copy()))
        prev_K = K
    return gens


def _gens_to_entries(F: FreeModule, gens) -> tuple[tuple[int, ...], tuple]:
    rel_degrees = tuple(d for d, _ in gens)
    columns = [F.vector_to_polys(vec, d) for d, vec in gens]
    entries = tuple(
        tuple(columns[j][i] for j in range(len(columns))) for i in range(F.rank)
    )
    return rel_degrees, entries


def presentation_from_rep(rep: ModuleRep) -> "GradedModule":
    """Minimal presentation of the module realized by `rep`."""
    A = rep.algebra
    gen_positions = rep.minimal_generator_positions()
    if not gen_positions:
        return GradedModule(A, (), (), (), minimal=True)
    gen_degrees = tuple(d for d, _ in gen_positions)
    F0 = FreeModule(A, gen_degrees)

    def realize_cover(d: int) -> np.ndarray:
        M = np.zeros((rep.dim(d), F0.dim(d)), dtype=np.int64)
        off = F0.offsets(d)
        for i, (a, pos) in enumerate(gen_positions):
            act = rep.monomial_action  # columns are u * generator
            for j, u in enumerate(A.basis(d - a)):
                M[:, off[i] + j] = act(u, a)[:, pos]
        return M

    gens = minimal_kernel_generators(F0, realize_cover)
    rel_degrees, entries = _gens_to_entries(F0, gens)
    module = GradedModule(A, gen_degrees, rel_degrees, entries, minimal=True)
    module._rep = rep
    return module


class GradedModule:
    """coker of a homogeneous presentation matrix with degree bookkeeping."""

    def __init__(self, algebra, gen_degrees, rel_degrees, entries, minimal=False):
        self.algebra: QuotientAlgebra = algebra
        self.gen_degrees = tuple(gen_degrees)
        self.rel_degrees = tuple(rel_degrees)
        self.entries = tuple(tuple(row) for row in entries)
        if len(self.entries) != len(self.gen_degrees):
            raise ValidationError("presentation row count must match generator count")
        for i, row in enumerate(self.entries):
            if len(row) != len(self.rel_degrees):
                raise ValidationError("presentation column count must match relation count")
            for j, f in enumerate(row):
                if f.is_zero():
                    continue
                if f.field != algebra.field or f.nvars != algebra.n:
                    raise ValidationError("presentation entry lives in a different ring")
                want = self.rel_degrees[j] - self.gen_degrees[i]
                if f.homogeneous_degree() != want:
                    raise ValidationError(
                        f"entry ({i},{j}) must be homogeneous of degree {want}"
                    )
        self._minimal = minimal
        self._rep: ModuleRep | None = None
        self._min: GradedModule | None = self if minimal else None

    # -- constructors --------------------------------------------------------

    @classmethod
    def free(cls, algebra, degrees) -> "GradedModule":
        return cls(algebra, tuple(degrees), (), tuple(() for _ in degrees), minimal=True)

    @classmethod
    def residue_field(cls, algebra) -> "GradedModule":
        entries = (
            tuple(Polynomial.variable(algebra.field, algebra.n, v) for v in range(algebra.n)),
        )
        return cls(algebra, (0,), (1,) * algebra.n, entries, minimal=True)

    @classmethod
    def cyclic(cls, algebra, relation_polys) -> "GradedModule":
        """A/(f_1, ..., f_r) for homogeneous normal-form relations."""
        rels = []
        entries_row = []
        for f in relation_polys:
            g = algebra.nf(f)
            if g.is_zero():
                continue
            rels.append(g.homogeneous_degree())
            entries_row.append(g)
        return cls(algebra, (0,), tuple(rels), (tuple(entries_row),))

    # -- realization ---------------------------------------------------------

    @property
    def rep(self) -> ModuleRep:
        if self._rep is None:
            self._rep = rep_from_presentation(self)
        return self._rep

    @property
    def length(self) -> int:
        return self.rep.length

    def dims_by_degree(self) -> dict[int, int]:
        return dict(self.rep.dims)

    def dim(self, d: int) -> int:
        return self.rep.dim(d)

    def is_zero(self) -> bool:
        return self.length == 0

    # -- minimal presentation --------------------------------------------------

    def minimize(self) -> "GradedModule":
        if self._min is None:
            self._min = presentation_from_rep(self.rep)
        return self._min

    @property
    def mingens(self) -> int:
        return len(self.minimize().gen_degrees)

    @property
    def first_betti(self) -> int:
        return len(self.minimize().rel_degrees)

    def is_free(self) -> bool:
        return self.first_betti == 0

    # -- operations ------------------------------------------------------------

    def syzygy(self) -> "GradedModule":
        """First syzygy: kernel of the minimal free cover, minimally presented."""
        m = self.minimize()
        if not m.rel_degrees:
            return GradedModule(self.algebra, (), (), (), minimal=True)
        F1 = FreeModule(self.algebra, m.rel_degrees)
        F0 = FreeModule(self.algebra, m.gen_degrees)
        gens = minimal_kernel_generators(F1, lambda d: F1.realize_map_to(F0, m.entries, d))
        rel_degrees, entries = _gens_to_entries(F1, gens)
        return GradedModule(self.algebra, m.rel_degrees, rel_degrees, entries, minimal=True)

    def matlis_dual(self) -> "GradedModule":
        return presentation_from_rep(self.rep.dual())

    def key(self) -> str:
        names = self.algebra.variables
        rows = [";".join(f.format(names) for f in row) for row in self.entries]
        return "gens={} rels={} matrix=[{}]".format(
            ",".join(map(str, self.gen_degrees)),
            ",".join(map(str, self.rel_degrees)),
            " / ".join(rows),
        )

    def __repr__(self):
        return f"<GradedModule gens={self.gen_degrees} rels={self.rel_degrees}>"


def direct_sum(m1: GradedModule, m2: GradedModule) -> GradedModule:
    _check_same_algebra(m1, m2)
    A = m1.algebra
    zero = Polynomial.zero(A.field, A.n)
    gen = m1.gen_degrees + m2.gen_degrees
    rel = m1.rel_degrees + m2.rel_degrees
    r1, c1 = len(m1.gen_degrees), len(m1.rel_degrees)
    r2, c2 = len(m2.gen_degrees), len(m2.rel_degrees)
    entries = []
    for i in range(r1):
        entries.append(tuple(m1.entries[i]) + (zero,) * c2)
    for i in range(r2):
        entries.append((zero,) * c1 + tuple(m2.entries[i]))
    return GradedModule(A, gen, rel, tuple(entries))


def tensor(m1: GradedModule, m2: GradedModule) -> GradedModule:
    """m1 (x)_A m2 as a minimally presented module."""
    _check_same_algebra(m1, m2)
    A = m1.algebra
    a, b = m1.minimize(), m2.minimize()
    zero = Polynomial.zero(A.field, A.n)
    gen = tuple(ga + gb for ga in a.gen_degrees for gb in b.gen_degrees)
    rel = []
    cols = []  # each column: dict (i,k) -> poly over generator pairs
    for j, rj in enumerate(a.rel_degrees):
        for k, gb in enumerate(b.gen_degrees):
            rel.append(rj + gb)
            cols.append({(i, k): a.entries[i][j] for i in range(len(a.gen_degrees))})
    for i, ga in enumerate(a.gen_degrees):
        for l, rl in enumerate(b.rel_degrees):
            rel.append(ga + rl)
            cols.append({(i, k): b.entries[k][l] for k in range(len(b.gen_degrees))})
    index = {
        (i, k): t
        for t, (i, k) in enumerate(
            (i, k) for i in range(len(a.gen_degrees)) for k in range(len(b.gen_degrees))
        )
    }
    entries = [[zero] * len(cols) for _ in gen]
    for c, col in enumerate(cols):
        for (i, k), f in col.items():
            entries[index[(i, k)]][c] = f
    module = GradedModule(A, gen, tuple(rel), tuple(tuple(r) for r in entries))
    return module.minimize()


def _check_same_algebra(m1: GradedModule, m2: GradedModule) -> None:
    if m1.algebra is not m2.algebra and m1.algebra.key() != m2.algebra.key():
        raise ValidationError("modules live over different algebras")


def ulrich_index(module: GradedModule):
    """Length over minimal number of generators, as an exact Fraction."""
    from fractions import Fraction

    lam = module.length
    if lam == 0:
        raise ZeroModule("the Ulrich index of the zero module is undefined")
    return Fraction(lam, module.mingens)
