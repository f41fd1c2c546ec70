"""Exact dense linear algebra over prime fields GF(p).

Matrices are numpy int64 arrays with entries in [0, p).  Elimination runs on
float64 panels so the bulk updates go through BLAS, but every intermediate
value is an integer: magnitudes stay below _PANEL * p**3 + p**2 < 2**53, so
no rounding can happen and results are exact, order-independent, and
bit-identical across runs.
"""
from __future__ import annotations

import numpy as np

from .errors import InconsistentSystem, ValidationError

_PANEL = 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


class PrimeField:
    """GF(p) arithmetic on plain int residues in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ValidationError(f"characteristic {p!r} is not prime")
        if _PANEL * p**3 + p**2 >= 2**53:
            raise ValidationError(f"characteristic {p} too large for the exact kernels")
        self.p = p

    def normalize(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def _check_same_field(a: "Matrix", b: "Matrix") -> None:
    if a.field != b.field:
        raise ValidationError(
            f"mixed characteristics: {a.field} vs {b.field}"
        )


def _as_float(a) -> np.ndarray:
    m = np.array(a, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError("expected a 2-dimensional array")
    return m


def _forward(m: np.ndarray, p: int) -> list[int]:
    """In-place forward elimination (float64 buffer). Returns pivot columns.

    Afterwards rows 0..rank-1 hold the echelon rows with unit pivots, all
    entries reduced mod p; rows below are exact zeros.  Each panel is
    factored on a contiguous copy; trailing updates go through one BLAS
    matmul per panel.
    """
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    c0 = 0
    while r < rows and c0 < cols:
        c1 = min(c0 + _PANEL, cols)
        base = r
        width = c1 - c0
        P = m[base:, c0:c1].copy()  # real copy: the row swaps below touch m too
        h = P.shape[0]
        L = np.zeros((h, width))
        invs: list[int] = []
        panel: list[int] = []
        rr = 0
        for j in range(width):
            if rr == h:
                break
            col = P[rr:, j] % p
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                P[rr:, j] = 0.0
                continue
            i = rr + int(nz[0])
            if i != rr:
                P[[rr, i]] = P[[i, rr]]
                L[[rr, i]] = L[[i, rr]]
                m[[base + rr, base + i]] = m[[base + i, base + rr]]
            inv = pow(int(col[i - rr]), p - 2, p)
            # normalize only the panel part now; trailing columns are fixed
            # after the panel using the recorded multipliers
            P[rr, j:] = (P[rr, j:] * inv) % p
            f = P[rr + 1 :, j] % p
            if f.any():
                P[rr + 1 :, j + 1 :] -= np.outer(f, P[rr, j + 1 :])
            P[rr + 1 :, j] = 0.0
            L[rr + 1 :, len(panel)] = f
            invs.append(inv)
            panel.append(c0 + j)
            rr += 1
        k = len(panel)
        m[base:, c0:c1] = P
        if k:
            # pivot rows: apply the panel elimination to trailing columns
            # (values stay below p + _PANEL*p^2, then *inv below p^2 + _PANEL*p^3)
            trail = m[base : base + k, c1:].copy()
            for t in range(k):
                row = trail[t]
                if t:
                    lt = L[t, :t]
                    if lt.any():
                        row -= lt @ trail[:t]
                if invs[t] != 1:
                    row *= invs[t]
                row %= p
            m[base : base + k, c1:] = trail
            below = m[base + k :, c1:]
            if below.size:
                Lb = L[k:h, :k]
                if Lb.any():
                    below -= Lb @ trail
                    below %= p
            pivots.extend(panel)
        r = base + k
        c0 = c1
    return pivots


def _backward(m: np.ndarray, p: int, pivots: list[int]) -> None:
    """Back-eliminate above the pivots, producing RREF rows (in place)."""
    b = len(pivots)
    cols = m.shape[1]
    while b > 0:
        a = max(0, b - _PANEL)
        block = m[a:b, :].copy()
        for t in range(b - 1 - a, 0, -1):
            col = pivots[a + t]
            f = block[:t, col] % p
            if f.any():
                block[:t, :] -= np.outer(f, block[t, :])
        block %= p
        m[a:b, :] = block
        if a > 0:
            F = m[:a, pivots[a:b]] % p
            if F.any():
                m[:a, :] -= F @ block
                m[:a, :] %= p
        b = a


def _to_int(m: np.ndarray) -> np.ndarray:
    return np.asarray(m, dtype=np.int64)


def rank_a(a, p: int) -> int:
    m = _as_float(a)
    if m.size == 0:
        return 0
    m %= p
    return len(_forward(m, p))


def rref_a(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form. Returns (rref rows as int64, pivot columns)."""
    m = _as_float(a)
    if m.size:
        m %= p
    pivots = _forward(m, p) if m.size else []
    _backward(m, p, pivots)
    return _to_int(m[: len(pivots)]), pivots


def pivot_columns_a(a, p: int) -> list[int]:
    """Greedy left-to-right independent columns (forward elimination)."""
    m = _as_float(a)
    if m.size == 0:
        return []
    m %= p
    return _forward(m, p)


def kernel_a(a, p: int) -> np.ndarray:
    """Basis of the right kernel, as int64 columns. Deterministic."""
    m = _as_float(a)
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0 or not (m % p).any():
        return np.eye(cols, dtype=np.int64)
    rref, pivots = rref_a(m, p)
    rank = len(pivots)
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    K = np.zeros((cols, len(free)), dtype=np.int64)
    if free:
        K[free, range(len(free))] = 1
        if rank:
            K[pivots, :] = (-rref[:rank][:, free]) % p
    return K


def solve_a(a, b, p: int) -> np.ndarray:
    """Some x with a @ x = b (mod p); raises InconsistentSystem otherwise.

    b may be a vector or a matrix of stacked right-hand-side columns.
    """
    a = _as_float(a)
    b_arr = np.asarray(b, dtype=np.float64)
    vector = b_arr.ndim == 1
    if vector:
        b_arr = b_arr[:, None]
    if b_arr.shape[0] != a.shape[0]:
        raise ValueError("right-hand side has wrong length")
    rows, cols = a.shape
    aug = np.hstack([a, b_arr])
    rref, pivots = rref_a(aug, p)
    nrhs = b_arr.shape[1]
    x = np.zeros((cols, nrhs), dtype=np.int64)
    for i, c in enumerate(pivots):
        if c >= cols:
            raise InconsistentSystem("no solution")
        x[c, :] = rref[i, cols:]
    return x[:, 0] if vector else x


def matmul_mod(a, b, p: int) -> np.ndarray:
    """Exact (a @ b) mod p via float64; inner dimension bound checked."""
    a = np.asarray(a, dtype=np.float64) % p
    b = np.asarray(b, dtype=np.float64) % p
    inner = a.shape[-1]
    if inner * (p - 1) ** 2 >= 2**53:
        raise ValidationError("matmul too large for the exact float64 path")
    return _to_int((a @ b) % p)


class RowSpace:
    """Echelonized row space: reduction, membership, canonical complements."""

    def __init__(self, vectors, p: int):
        m = _as_float(vectors)
        self.p = p
        self.ncols = m.shape[1] if m.ndim == 2 else 0
        self.rows, self.pivots = rref_a(m, p) if m.size else (np.zeros((0, self.ncols), dtype=np.int64), [])

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vectors) -> np.ndarray:
        """Canonical representatives of rows of `vectors` modulo this space."""
        V = np.asarray(vectors, dtype=np.float64) % self.p
        if not self.pivots or V.size == 0:
            return _to_int(V)
        if len(self.pivots) * (self.p - 1) ** 2 >= 2**53:
            raise ValidationError("reduction too large for the exact float64 path")
        F = V[:, self.pivots]
        return _to_int((V - F @ self.rows) % self.p)

    def contains(self, vector) -> bool:
        return not self.reduce(np.asarray(vector)[None, :]).any()

    def free_positions(self) -> list[int]:
        pivset = set(self.pivots)
        return [c for c in range(self.ncols) if c not in pivset]


class Matrix:
    """Immutable dense matrix over a fixed prime field."""

    __slots__ = ("field", "a")

    def __init__(self, field: PrimeField, entries):
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError("expected a 2-dimensional entry grid")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", a % field.p)

    def __setattr__(self, *args):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def rank(self) -> int:
        return rank_a(self.a, self.field.p)

    def kernel_basis(self) -> "Matrix":
        return Matrix(self.field, kernel_a(self.a, self.field.p))

    def solve(self, b) -> list[int]:
        x = solve_a(self.a, np.asarray(b, dtype=np.int64), self.field.p)
        return [int(v) for v in x]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.a.T)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _check_same_field(self, other)
        return Matrix(self.field, matmul_mod(self.a, other.a, self.field.p))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.a.shape == other.a.shape
            and bool((self.a == other.a).all())
        )

    def __repr__(self):
        return f"Matrix({self.field}, {self.a.tolist()})"
