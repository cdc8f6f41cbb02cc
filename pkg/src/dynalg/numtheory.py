"""Integer and Gaussian-integer factorization helpers.

Everything here is desk scale: trial division with a 10^6 prime bound that
fails loudly beyond, which is plenty for map degrees and multiplier data.
The factorizations feed exact k-th root extraction in Q and Q(i) and the
multiplicative-dependence test for multipliers.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import FactorBoundExceeded
from .scalars import ExactScalar, Field, ONE, I

TRIAL_BOUND = 10**6


def factor_int(n: int) -> dict[int, int]:
    """Prime exponents of n >= 1 by trial division up to TRIAL_BOUND."""
    if n < 1:
        raise ValueError("factor_int needs n >= 1")
    out: dict[int, int] = {}
    for p in _trial_primes(n):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        if n == 1:
            break
    if n > 1:
        if n > TRIAL_BOUND * TRIAL_BOUND:
            raise FactorBoundExceeded(
                f"residual factor {n} exceeds the {TRIAL_BOUND}^2 certification bound"
            )
        # no divisor below the bound, so the residual is prime
        out[n] = out.get(n, 0) + 1
    return out


def _trial_primes(n: int):
    yield 2
    p = 3
    while p <= TRIAL_BOUND and p * p <= n:
        yield p
        p += 2
    # one extra candidate so the final `break` check can run
    yield p


def fraction_exponents(q: Fraction) -> dict[int, int]:
    """Signed prime exponent vector of a nonzero rational."""
    if q == 0:
        raise ValueError("zero has no exponent vector")
    num = factor_int(abs(q.numerator))
    den = factor_int(q.denominator)
    out = dict(num)
    for p, e in den.items():
        out[p] = out.get(p, 0) - e
        if out[p] == 0:
            del out[p]
    return out


def integer_nth_root(n: int, k: int):
    """Exact k-th root of n >= 0, or None."""
    if n < 0:
        raise ValueError("need n >= 0")
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == n:
            return c
    return None


def fraction_nth_root(q: Fraction, k: int):
    """Exact k-th root of a rational within Q, or None."""
    if q == 0:
        return Fraction(0)
    neg = q < 0
    if neg and k % 2 == 0:
        return None
    num = integer_nth_root(abs(q.numerator), k)
    den = integer_nth_root(q.denominator, k)
    if num is None or den is None:
        return None
    r = Fraction(num, den)
    return -r if neg else r


# -- Gaussian integers, represented as (a, b) meaning a + b*i --------------


def g_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def g_norm(x):
    return x[0] * x[0] + x[1] * x[1]


def g_divide_exact(x, y):
    """x / y if y divides x in Z[i], else None."""
    n = g_norm(y)
    if n == 0:
        raise ZeroDivisionError("division by zero Gaussian integer")
    re_num = x[0] * y[0] + x[1] * y[1]
    im_num = x[1] * y[0] - x[0] * y[1]
    if re_num % n or im_num % n:
        return None
    return (re_num // n, im_num // n)


def canonical_associate(x):
    """Rotate x by a unit into the half-quadrant re > 0, im >= 0.

    Returns (canonical, s) with x = i**s * canonical.
    """
    if x == (0, 0):
        return (0, 0), 0
    c, s = x, 0
    while not (c[0] > 0 and c[1] >= 0):
        c = (-c[1], c[0])  # multiply by i
        s = (s - 1) % 4
    return c, s


def _split_prime(p: int):
    """Gaussian prime above a rational prime p = 1 mod 4, as x + y*i."""
    for x in range(1, isqrt(p) + 1):
        y2 = p - x * x
        y = isqrt(y2)
        if y * y == y2:
            return canonical_associate((max(x, y), min(x, y)))[0]
    raise FactorBoundExceeded(f"failed to split prime {p}")


def factor_gaussian(x) -> tuple[int, dict[tuple[int, int], int]]:
    """Factor a nonzero Gaussian integer as i**s * prod(pi**e).

    Primes pi are canonical associates (re > 0, im >= 0).
    """
    if x == (0, 0):
        raise ValueError("zero has no factorization")
    exps: dict[tuple[int, int], int] = {}
    rest = x
    for p, _ in sorted(factor_int(g_norm(x)).items()):
        if p == 2:
            pi = (1, 1)
            candidates = [pi]
        elif p % 4 == 3:
            candidates = [(p, 0)]
        else:
            pi = _split_prime(p)
            candidates = [pi, canonical_associate((pi[0], -pi[1]))[0]]
        for pi in candidates:
            while True:
                q = g_divide_exact(rest, pi)
                if q is None:
                    break
                exps[pi] = exps.get(pi, 0) + 1
                rest = q
    if g_norm(rest) != 1:
        raise FactorBoundExceeded(f"unfactored Gaussian residual {rest}")
    # rest is the unit i**s left over after dividing out all primes
    _, s = canonical_associate(rest)
    return s % 4, exps


def scalar_exponents(c: ExactScalar) -> tuple[int, dict[tuple[int, int], int]]:
    """Unit power and Gaussian-prime exponent vector of a nonzero scalar."""
    if c.is_zero():
        raise ValueError("zero has no exponent vector")
    d = (c.re.denominator * c.im.denominator) // _gcd_int(
        c.re.denominator, c.im.denominator
    ) if c.im else c.re.denominator
    num = (int(c.re * d), int(c.im * d))
    s_num, e_num = factor_gaussian(num)
    if d == 1:
        return s_num, e_num
    s_den, e_den = factor_gaussian((d, 0))
    out = dict(e_num)
    for pi, e in e_den.items():
        out[pi] = out.get(pi, 0) - e
        if out[pi] == 0:
            del out[pi]
    return (s_num - s_den) % 4, out


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def nth_root_in_field(c: ExactScalar, k: int, field: Field):
    """Canonical exact solution x of x**k = c in the field, or None.

    When several roots exist the one with positive real part, then positive
    imaginary part, is returned.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if c.is_zero():
        return ExactScalar(0)
    if not field.has_i:
        if not c.is_real():
            return None
        r = fraction_nth_root(c.re, k)
        if r is None:
            return None
        root = ExactScalar(r)
        return _canonical_root(root, k, field)
    s, exps = scalar_exponents(c)
    base = ONE
    for pi, e in exps.items():
        if e % k:
            return None
        base = base * ExactScalar(Fraction(pi[0]), Fraction(pi[1])) ** (e // k)
    for t in range(4):
        if (t * k) % 4 == s % 4:
            return _canonical_root(I**t * base, k, field)
    return None


def _canonical_root(root: ExactScalar, k: int, field: Field) -> ExactScalar:
    best = None
    for u in _unit_kth_roots_of_one(k, field):
        cand = root * u
        key = (cand.re <= 0, cand.im < 0, cand.sort_key())
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1]


def _unit_kth_roots_of_one(k: int, field: Field):
    out = [ONE]
    if k % 2 == 0:
        out.append(-ONE)
    if field.has_i and k % 4 == 0:
        out.extend([I, -I])
    return out


def multiplicative_pair(
    lam1: ExactScalar, lam2: ExactScalar, field: Field, bound: int = 12
):
    """Minimal (l1, l2) with lam1**l1 == lam2**l2, or None within bound.

    Exact: prime (or Gaussian-prime) exponent vectors must be proportional
    with a positive ratio, and the leftover sign/unit must match after a
    minimal common multiple.
    """
    if lam1.is_zero() or lam2.is_zero():
        raise ValueError("multiplicative dependence needs nonzero inputs")
    if field.has_i or not (lam1.is_real() and lam2.is_real()):
        s1, e1 = scalar_exponents(lam1)
        s2, e2 = scalar_exponents(lam2)
        unit_mod = 4
    else:
        e1 = fraction_exponents(lam1.re)
        e2 = fraction_exponents(lam2.re)
        s1 = 0 if lam1.re > 0 else 1
        s2 = 0 if lam2.re > 0 else 1
        unit_mod = 2
    if set(e1) != set(e2) or not e1:
        return None
    ratio = None
    for p in e1:
        r = Fraction(e2[p], e1[p])
        if r <= 0:
            return None
        if ratio is None:
            ratio = r
        elif ratio != r:
            return None
    l1, l2 = ratio.numerator, ratio.denominator
    for mult in range(1, unit_mod + 1):
        if (mult * (l1 * s1 - l2 * s2)) % unit_mod == 0:
            a, b = mult * l1, mult * l2
            if a > bound or b > bound:
                return None
            return (a, b)
    return None
