"""Buchberger completion and normal forms over GF(p)."""
from __future__ import annotations

import heapq

from .errors import ValidationError
from .poly import (
    DEGREVLEX,
    Polynomial,
    TermOrder,
    mono_coprime,
    mono_degree,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_quotient,
)


def normal_form(f: Polynomial, basis, order: TermOrder = DEGREVLEX) -> Polynomial:
    """Full remainder of f on division by `basis` (first divisor wins)."""
    leads = [(g.leading(order)[0], g.leading(order)[1], g) for g in basis if g]
    result = Polynomial.zero(f.field, f.nvars)
    h = f
    while h:
        m, c = h.leading(order)
        for lm, lc, g in leads:
            if mono_divides(lm, m):
                q = mono_quotient(m, lm)
                factor = (c * f.field.inv(lc)) % f.field.p
                h = h - g.term_mul(q, factor)
                break
        else:
            t = Polynomial(f.field, f.nvars, {m: c})
            result = result + t
            h = h - t
    return result


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder = DEGREVLEX) -> Polynomial:
    mf, cf = f.leading(order)
    mg, cg = g.leading(order)
    lcm = mono_lcm(mf, mg)
    a = f.term_mul(mono_quotient(lcm, mf), f.field.inv(cf))
    b = g.term_mul(mono_quotient(lcm, mg), g.field.inv(cg))
    return a - b


def _interreduce(polys, order: TermOrder) -> list[Polynomial]:
    """Minimal, fully reduced, monic generating set (of the same ideal)."""
    polys = [g for g in polys if g]
    # drop elements whose leading monomial is divisible by another's
    polys.sort(key=lambda g: order.key(g.leading(order)[0]))
    minimal: list[Polynomial] = []
    for g in polys:
        lm = g.leading(order)[0]
        if not any(mono_divides(h.leading(order)[0], lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        rest = minimal[:i] + minimal[i + 1 :]
        r = normal_form(g, rest, order)
        if r:
            lc = r.leading(order)[1]
            reduced.append(r.scale(r.field.inv(lc)))
    reduced.sort(key=lambda g: order.key(g.leading(order)[0]))
    return reduced


def buchberger(gens, order: TermOrder = DEGREVLEX) -> list[Polynomial]:
    """Reduced Groebner basis, sorted by ascending leading monomial.

    Normal selection strategy (smallest lcm degree first) with the
    coprimality criterion.
    """
    basis = [g for g in gens if g]
    if not basis:
        raise ValidationError("no nonzero ideal generators")
    basis = _interreduce(basis, order)
    pairs: list[tuple[int, int, int]] = []
    counter = 0

    def push(i, j):
        nonlocal counter
        lcm = mono_lcm(basis[i].leading(order)[0], basis[j].leading(order)[0])
        heapq.heappush(pairs, (mono_degree(lcm), counter, i, j))
        counter += 1

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            push(i, j)
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        fi, fj = basis[i], basis[j]
        if mono_coprime(fi.leading(order)[0], fj.leading(order)[0]):
            continue
        r = normal_form(s_polynomial(fi, fj, order), basis, order)
        if r:
            basis.append(r)
            k = len(basis) - 1
            for t in range(k):
                push(t, k)
    return _interreduce(basis, order)


def is_reduced_groebner(basis, order: TermOrder = DEGREVLEX) -> bool:
    for i, g in enumerate(basis):
        if not g:
            return False
        if g.leading(order)[1] != 1:
            return False
        rest = basis[:i] + basis[i + 1 :]
        lms = [h.leading(order)[0] for h in rest]
        for m in g.terms:
            if any(mono_divides(lm, m) for lm in lms):
                return False
    return True
