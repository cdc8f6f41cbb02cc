"""Exact root extraction over the active field.

Only linear and quadratic factors are solved in closed form; higher degrees
get a rational-root (or Gaussian-rational-root) search.  Whatever remains
is returned as a residual factor, never guessed at numerically.
"""

from __future__ import annotations

from fractions import Fraction

from .numtheory import factor_gaussian, factor_int, g_mul, nth_root_in_field
from .poly import Polynomial
from .scalars import ExactScalar, Field, ONE, ZERO, units


def field_roots(p: Polynomial, field: Field):
    """All roots of p in the field, with multiplicity, plus residual factors.

    Returns (roots, residuals) where roots is a list of (value, multiplicity)
    and residuals is a list of monic factors with no root in the field.
    """
    if p.is_zero():
        raise ValueError("cannot extract roots of the zero polynomial")
    roots: list[tuple[ExactScalar, int]] = []
    k = p.trailing_order()
    if k > 0:
        roots.append((ZERO, k))
        p = Polynomial(p.coeffs[k:])
    while p.degree() >= 1:
        r = _find_root(p, field)
        if r is None:
            break
        mult = 0
        lin = Polynomial([-r, ONE])
        while True:
            q, rem = p.divmod(lin)
            if not rem.is_zero():
                break
            p = q
            mult += 1
        roots.append((r, mult))
    residuals = [] if p.degree() < 1 else [p.monic()]
    roots.sort(key=lambda rm: rm[0].sort_key())
    return roots, residuals


def _find_root(p: Polynomial, field: Field):
    for cand in _root_candidates(p, field):
        if p.evaluate(cand).is_zero():
            return cand
    if p.degree() == 2:
        return _quadratic_root(p, field)
    return None


def _quadratic_root(p: Polynomial, field: Field):
    c, b, a = p.coeffs
    disc = b * b - ExactScalar(4) * a * c
    s = nth_root_in_field(disc, 2, field)
    if s is None:
        return None
    return (-b + s) / (ExactScalar(2) * a)


def _root_candidates(p: Polynomial, field: Field):
    """Deterministic candidate list from divisors of the end coefficients."""
    lcm = 1
    for c in p.coeffs:
        for d in (c.re.denominator, c.im.denominator):
            lcm = lcm * d // _gcd(lcm, d)
    ints = [c * lcm for c in p.coeffs]
    lead, trail = ints[-1], ints[0]
    if trail.is_zero():  # zero roots are stripped by the caller
        return []
    cands = set()
    for num in _scalar_divisors(trail, field):
        for den in _scalar_divisors(lead, field):
            for u in units(field):
                cands.add(num * u / den)
    return sorted(cands, key=lambda c: (c.norm2(), c.sort_key()))


def _scalar_divisors(c: ExactScalar, field: Field):
    if field.has_i:
        _, exps = factor_gaussian((int(c.re), int(c.im)))
        divisors = [(1, 0)]
        for pi, e in exps.items():
            grown = []
            for d in divisors:
                cur = d
                for _ in range(e + 1):
                    grown.append(cur)
                    cur = g_mul(cur, pi)
            divisors = grown
        return [ExactScalar(Fraction(a), Fraction(b)) for a, b in divisors]
    n = abs(int(c.re))
    divisors = [1]
    for prime, e in factor_int(n).items():
        grown = []
        for d in divisors:
            cur = d
            for _ in range(e + 1):
                grown.append(cur)
                cur *= prime
        divisors = grown
    return [ExactScalar(d) for d in divisors]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
