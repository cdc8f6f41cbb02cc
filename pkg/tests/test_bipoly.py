import random

import pytest
import sympy

from dynalg.bipoly import (
    BivariatePolynomial,
    content_y,
    gcd_bivariate,
    prem_y,
    primitive_part_y,
    resultant_t,
    squarefree_part,
)
from dynalg.scalars import ExactScalar

X, Y, T = sympy.symbols("x y t")


def to_sym(f):
    if f.is_zero():
        return sympy.Integer(0)
    return sum(
        sympy.Rational(c.re.numerator, c.re.denominator) * X**i * Y**j
        for (i, j), c in f.terms.items()
    )


def sylvester_oracle(A_list, B_list):
    """Independent resultant: determinant of the Sylvester matrix."""
    fa = sum(to_sym(c) * T**k for k, c in enumerate(A_list))
    fb = sum(to_sym(c) * T**k for k, c in enumerate(B_list))
    pa, pb = sympy.Poly(fa, T), sympy.Poly(fb, T)
    m, n = pa.degree(), pb.degree()
    if m + n == 0:
        return sympy.Integer(1)
    ca, cb = pa.all_coeffs(), pb.all_coeffs()
    rows = []
    for k in range(n):
        row = [0] * (m + n)
        for i, c in enumerate(ca):
            row[k + i] = c
        rows.append(row)
    for k in range(m):
        row = [0] * (m + n)
        for i, c in enumerate(cb):
            row[k + i] = c
        rows.append(row)
    return sympy.expand(sympy.Matrix(rows).det())


def bp(terms):
    return BivariatePolynomial(terms)


class TestRingOps:
    def test_mul_matches_sympy(self):
        random.seed(5)
        for _ in range(20):
            f = bp({(i, j): random.randint(-3, 3) for i in range(3) for j in range(2)})
            g = bp({(i, j): random.randint(-3, 3) for i in range(2) for j in range(3)})
            assert sympy.expand(to_sym(f * g) - to_sym(f) * to_sym(g)) == 0

    def test_exact_div_roundtrip(self):
        random.seed(6)
        for _ in range(30):
            f = bp({(i, j): random.randint(-3, 3) for i in range(2) for j in range(2)})
            g = bp({(i, j): random.randint(-3, 3) for i in range(2) for j in range(2)})
            if f.is_zero() or g.is_zero():
                continue
            assert (f * g).exact_div(g) == f

    def test_exact_div_rejects_inexact(self):
        with pytest.raises(ValueError):
            bp({(1, 0): 1, (0, 0): 1}).exact_div(bp({(0, 1): 1}))

    def test_normalized_leading_one(self):
        f = bp({(1, 0): -3, (0, 2): 6})
        g = f.normalized()
        # graded-lex first monomial is x; its coefficient becomes 1
        assert g.coeff(1, 0).is_one()
        assert g.coeff(0, 2) == ExactScalar(-2)


class TestPseudoDivision:
    def test_prem_vanishes_on_multiple(self):
        f = bp({(0, 1): 1, (1, 0): -2})  # y - 2x
        g = bp({(2, 0): 1}) * f * f + f  # f * (x^2 f + 1)
        assert prem_y(g, f).is_zero()

    def test_content_and_primitive(self):
        f = bp({(1, 1): 2, (2, 1): 2, (1, 0): 2, (2, 0): 2})  # 2x(x+1)(y+1)
        c = content_y(f)
        assert c.degree() == 2  # monic x(x+1) = x^2 + x
        pp = primitive_part_y(f)
        assert content_y(pp).degree() == 0


class TestGcd:
    def test_common_factor(self):
        f = bp({(0, 1): 1, (1, 0): -1})  # y - x
        a = f * bp({(1, 0): 1, (0, 0): 3})
        b = f * bp({(0, 1): 1, (0, 0): -5})
        g = gcd_bivariate(a, b)
        assert g == f.normalized()

    def test_coprime(self):
        a = bp({(0, 1): 1, (1, 0): -1})
        b = bp({(0, 1): 1, (1, 0): 1})
        assert gcd_bivariate(a, b).is_constant()

    def test_matches_sympy(self):
        random.seed(9)
        for _ in range(15):
            f = bp({(i, j): random.randint(-2, 2) for i in range(2) for j in range(2)})
            g = bp({(i, j): random.randint(-2, 2) for i in range(2) for j in range(2)})
            h = bp({(i, j): random.randint(-2, 2) for i in range(2) for j in range(2)})
            if f.is_zero() or g.is_zero() or h.is_zero():
                continue
            mine = gcd_bivariate(f * h, g * h)
            oracle = sympy.gcd(to_sym(f * h), to_sym(g * h))
            # compare up to a rational scalar
            quotient = sympy.simplify(to_sym(mine) / oracle)
            assert quotient.is_rational, (to_sym(mine), oracle)


class TestSquarefree:
    def test_strips_multiplicity(self):
        f = bp({(0, 1): 1, (1, 0): -1})
        g = bp({(0, 1): 1, (2, 0): 1, (0, 0): 1})
        squared = f * f * g
        sf = squarefree_part(squared)
        assert sf == (f * g).normalized()

    def test_already_squarefree(self):
        f = bp({(0, 2): 1, (3, 0): -1})
        assert squarefree_part(f) == f.normalized()


class TestResultant:
    def test_against_sylvester_oracle(self):
        zero = bp({})
        x_mono = bp({(1, 0): 1})
        y_mono = bp({(0, 1): 1})
        one = bp({(0, 0): 1})
        cases = [
            # num(X1) - x den(X1) etc. for parametrization pencils
            ([-x_mono, zero, one], [-y_mono, zero, zero, one]),
            # equal t-degrees with polynomial leading coefficients
            (
                [bp({(0, 0): -1, (1, 0): -5}), bp({(0, 0): 2, (1, 0): -1}), zero, one],
                [bp({(0, 0): -7}), zero, one, bp({(0, 1): -1})],
            ),
            # linear against cubic
            ([bp({(0, 0): -4}), one], [bp({(0, 0): -1}), bp({(0, 1): 2}), zero, one]),
            # shared-root pair must give zero
            ([bp({(1, 0): -1}), one], [bp({(2, 0): -1}), bp({(1, 0): -0}), one]),
        ]
        random.seed(13)
        for _ in range(8):
            da, db = random.randint(1, 3), random.randint(1, 3)
            A = [
                bp({(i, j): random.randint(-2, 2) for i in range(2) for j in range(2)})
                for _ in range(da + 1)
            ]
            B = [
                bp({(i, j): random.randint(-2, 2) for i in range(2) for j in range(2)})
                for _ in range(db + 1)
            ]
            if A[-1].is_zero() or B[-1].is_zero():
                continue
            cases.append((A, B))
        for A, B in cases:
            oracle = sylvester_oracle(A, B)
            mine = to_sym(resultant_t(A, B))
            assert sympy.expand(oracle - mine) == 0

    def test_common_root_gives_zero(self):
        one = bp({(0, 0): 1})
        A = [bp({(1, 0): -1}), one]  # t - x
        B = [bp({(2, 0): -1}), bp({}), one]  # t^2 - x^2 shares the root t = x
        assert resultant_t(A, B).is_zero()
        assert sylvester_oracle(A, B) == 0
