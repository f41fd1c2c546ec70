"""Multivariate polynomials over GF(p), term orders, and the input syntax.

Monomials are plain exponent tuples; every variable has degree one.
"""
from __future__ import annotations

from .errors import ParseError, ValidationError
from .linalg import PrimeField

Monomial = tuple


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_quotient(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int) -> list[Monomial]:
    """All exponent tuples of total degree d, in a fixed generation order."""
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    out = []
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - e):
            out.append((e,) + rest)
    return out


class TermOrder:
    """Monomial order; key() is ascending (larger monomial, larger key)."""

    NAMES = ("degrevlex", "lex", "grlex")

    def __init__(self, name: str):
        if name not in self.NAMES:
            raise ValidationError(f"unknown monomial order {name!r}")
        self.name = name

    def key(self, m: Monomial):
        if self.name == "lex":
            return m
        if self.name == "grlex":
            return (sum(m), m)
        return (sum(m), tuple(-e for e in reversed(m)))

    def __eq__(self, other):
        return isinstance(other, TermOrder) and other.name == self.name

    def __hash__(self):
        return hash(("TermOrder", self.name))

    def __repr__(self):
        return f"TermOrder({self.name!r})"


DEGREVLEX = TermOrder("degrevlex")


class Polynomial:
    """Polynomial in n variables over GF(p); terms map monomials to nonzero
    residues."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: PrimeField, nvars: int, terms: dict):
        self.field = field
        self.nvars = nvars
        clean = {}
        for m, c in terms.items():
            c %= field.p
            if c:
                if len(m) != nvars:
                    raise ValueError("monomial has wrong variable count")
                clean[m] = c
        self.terms = clean

    @classmethod
    def zero(cls, field: PrimeField, nvars: int) -> "Polynomial":
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field: PrimeField, nvars: int, c: int) -> "Polynomial":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: PrimeField, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): 1})

    def _check(self, other: "Polynomial") -> None:
        if self.field != other.field or self.nvars != other.nvars:
            raise ValidationError("polynomials live in different rings")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Polynomial(self.field, self.nvars, t)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.field, self.nvars, {m: v * c for m, v in self.terms.items()})

    def term_mul(self, mono: Monomial, c: int) -> "Polynomial":
        return Polynomial(
            self.field, self.nvars, {mono_mul(m, mono): v * c for m, v in self.terms.items()}
        )

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return Polynomial(self.field, self.nvars, t)

    def degree(self) -> int:
        """Maximal term degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {mono_degree(m) for m in self.terms}
        return len(degrees) <= 1

    def homogeneous_degree(self) -> int:
        """Degree of a homogeneous polynomial; -1 for zero."""
        if not self.terms:
            return -1
        degrees = {mono_degree(m) for m in self.terms}
        if len(degrees) != 1:
            raise ValidationError("polynomial is not homogeneous")
        return degrees.pop()

    def leading(self, order: TermOrder) -> tuple[Monomial, int]:
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def sorted_terms(self, order: TermOrder = DEGREVLEX) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def format(self, varnames) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            if c != 1 or not any(m):
                factors.append(str(c))
            for name, e in zip(varnames, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"<{self.format(names)} over {self.field}>"


# ---------------------------------------------------------------------------
# Input syntax: terms joined by + and -, integer coefficients, declared
# variable names, powers with ^, * optional for juxtaposition.


def _tokenize(text: str, varnames, line=None):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^":
            tokens.append((ch, ch))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            for name in _split_names(word, varnames):
                if name is None:
                    raise ParseError(f"unknown variable in {word!r}", line)
                tokens.append(("var", name))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r} in polynomial", line)
    return tokens


def _split_names(word: str, varnames):
    """Greedy longest-match split of an identifier run into declared names."""
    names = sorted(varnames, key=len, reverse=True)
    out = []
    i = 0
    while i < len(word):
        for name in names:
            if word.startswith(name, i):
                out.append(name)
                i += len(name)
                break
        else:
            return [None]
    return out


def parse_polynomial(text: str, varnames, field: PrimeField, line=None) -> Polynomial:
    n = len(varnames)
    index = {name: i for i, name in enumerate(varnames)}
    tokens = _tokenize(text, varnames, line)
    if not tokens:
        raise ParseError("empty polynomial", line)
    result = Polynomial.zero(field, n)
    pos = 0
    sign = 1
    first = True
    while pos < len(tokens):
        kind, val = tokens[pos]
        if kind in "+-":
            sign = 1 if kind == "+" else -1
            pos += 1
            if pos == len(tokens):
                raise ParseError("dangling sign in polynomial", line)
        elif not first:
            raise ParseError("missing + or - between terms", line)
        coeff = sign
        expo = [0] * n
        saw_factor = False
        expect_factor = True
        while pos < len(tokens):
            kind, val = tokens[pos]
            if kind in "+-":
                break
            if kind == "*":
                if not saw_factor:
                    raise ParseError("misplaced '*'", line)
                expect_factor = True
                pos += 1
                continue
            if not expect_factor and kind == "int":
                raise ParseError("integer must start a term or follow '*'", line)
            if kind == "int":
                coeff *= val
                pos += 1
            elif kind == "var":
                e = 1
                pos += 1
                if pos < len(tokens) and tokens[pos][0] == "^":
                    pos += 1
                    if pos == len(tokens) or tokens[pos][0] != "int":
                        raise ParseError("expected integer exponent after '^'", line)
                    e = tokens[pos][1]
                    pos += 1
                expo[index[val]] += e
            else:
                raise ParseError(f"unexpected {val!r} in polynomial", line)
            saw_factor = True
            expect_factor = False
        if not saw_factor:
            raise ParseError("empty term in polynomial", line)
        result = result + Polynomial(field, n, {tuple(expo): coeff})
        sign = 1
        first = False
    return result
