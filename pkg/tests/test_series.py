import math
from fractions import Fraction

import pytest

from dynalg.errors import (
    DegreeTooSmall,
    LeadingCoefficientNotSolvable,
    NotAFixedPoint,
    PoleAtBasePoint,
    ResonantMultiplier,
    ZeroMultiplier,
)
from dynalg.parsing import parse_ratfunc
from dynalg.ratfunc import PointP1
from dynalg.scalars import ExactScalar, QI, QQ
from dynalg.series import (
    BoettcherSeries,
    TruncatedPowerSeries,
    boettcher_residual,
    boettcher_series,
    match_scale,
    poincare_residual,
    poincare_series,
    series_substitute_power,
    transport_poincare,
)

rf = parse_ratfunc


def exp_like(a, c, order):
    """Coefficients of e^(a z) / c: the classical linearizer closed form."""
    return TruncatedPowerSeries(
        [ExactScalar(Fraction(a**k, c * math.factorial(k))) for k in range(order + 1)]
    )


class TestPoincareSolver:
    def test_exponential_closed_form(self):
        # oracle: P(z) = e^z satisfies e^(2z) = (e^z)^2, so coefficients are 1/k!
        P = poincare_series(rf("z^2"), PointP1(1), 20)
        for k in range(21):
            assert P.coeffs[k] == ExactScalar(Fraction(1, math.factorial(k)))

    def test_cosh_closed_form(self):
        # oracle: cosh(sqrt(2z)) solves cosh(2w) = 2cosh(w)^2 - 1, giving 2^k/(2k)!
        P = poincare_series(rf("2*z^2-1"), PointP1(1), 12)
        for k in range(13):
            assert P.coeffs[k] == ExactScalar(Fraction(2**k, math.factorial(2 * k)))

    def test_functional_equation_residual(self):
        for text, point, lam in [
            ("z^2", 1, 2),
            ("2*z^2-1", 1, 4),
            ("z^2-6", 3, 6),
            ("z^3-7*z+7", 1, -4),
        ]:
            A = rf(text)
            P = poincare_series(A, PointP1(point), 15)
            assert poincare_residual(A, P, ExactScalar(lam)).is_zero()

    def test_rational_map_with_pole_elsewhere(self):
        # (3z^2+1)/(z+3) fixes 1 away from its pole; residual must vanish
        A = rf("(3*z^2+1)/(z+3)")
        assert A.evaluate(PointP1(1)) == PointP1(1)
        lam = A.derivative().evaluate_finite(ExactScalar(1))
        P = poincare_series(A, PointP1(1), 10)
        assert poincare_residual(A, P, lam).is_zero()

    def test_superattracting_rejected(self):
        with pytest.raises(ZeroMultiplier):
            poincare_series(rf("z^2"), PointP1(0), 5)

    def test_not_fixed_rejected(self):
        with pytest.raises(NotAFixedPoint):
            poincare_series(rf("z^2"), PointP1(2), 5)

    def test_resonance_rejected(self):
        with pytest.raises(ResonantMultiplier):
            poincare_series(rf("z^2-z"), PointP1(0), 5)  # multiplier -1

    def test_pole_base_point_instructs_conjugation(self):
        with pytest.raises(PoleAtBasePoint):
            poincare_series(rf("z^2"), PointP1.infinity(), 5)
        with pytest.raises(PoleAtBasePoint):
            poincare_series(rf("(z^2+1)/(2*z)"), PointP1(0), 5)

    def test_rescaling_freedom(self):
        # P(cz) solves the same equation with first coefficient c
        A = rf("z^2-6")
        P = poincare_series(A, PointP1(3), 12)
        scaled = P.argument_scale(ExactScalar(Fraction(5, 7)))
        assert poincare_residual(A, scaled, ExactScalar(6)).is_zero()
        assert scaled.coeffs[1] == ExactScalar(Fraction(5, 7))

    def test_uniqueness_perturbation_breaks_residual(self):
        A = rf("z^2-6")
        P = poincare_series(A, PointP1(3), 10)
        for k in range(2, 11):
            bumped = list(P.coeffs)
            bumped[k] = bumped[k] + ExactScalar(1)
            residual = poincare_residual(A, TruncatedPowerSeries(bumped), ExactScalar(6))
            first_bad = residual.first_nonzero_index()
            assert first_bad == k

    def test_two_runs_agree(self):
        A = rf("z^3-7*z+7")
        assert poincare_series(A, PointP1(1), 15) == poincare_series(
            A, PointP1(1), 15
        )


class TestTransport:
    def test_scalar_transport(self):
        # X = 2z carries the linearizer of 4z^2 at 1/4 to one of 2z^2 at 1/2
        P = exp_like(4, 4, 15)
        T = transport_poincare(rf("2*z"), P)
        assert poincare_residual(rf("2*z^2"), T, ExactScalar(2)).is_zero()
        assert T.coeffs[0] == ExactScalar(Fraction(1, 2))

    def test_identity_transport(self):
        P = exp_like(2, 2, 12)
        assert transport_poincare(rf("z"), P).coeffs == P.coeffs

    def test_pole_at_base_point(self):
        P = exp_like(2, 2, 8)  # P(0) = 1/2
        with pytest.raises(PoleAtBasePoint):
            transport_poincare(rf("1/(2*z-1)"), P)

    def test_paper_zrd_fixture(self):
        # X = z^2 links the linearizers of z(2+z^2) and z(2+z)^2 at 0
        B = rf("z*(2+z^2)")
        A = rf("z*(2+z)^2")
        PB = poincare_series(B, PointP1(0), 30)
        lhs = transport_poincare(rf("z^2"), PB)
        PA = poincare_series(A, PointP1(0), 15)
        rhs = series_substitute_power(PA, 2)
        n = min(lhs.order, rhs.order)
        assert lhs.truncate(n).coeffs == rhs.truncate(n).coeffs


class TestSubstitutePower:
    def test_spread(self):
        s = TruncatedPowerSeries([1, 1, 1])
        assert series_substitute_power(s, 2).coeffs == TruncatedPowerSeries(
            [1, 0, 1, 0, 1]
        ).coeffs

    def test_identity(self):
        s = TruncatedPowerSeries([1, 2, 3])
        assert series_substitute_power(s, 1) is s

    def test_cross_solver(self):
        # substituting z^2 into the linearizer of A matches the linearizer of
        # the conjugate construction along X = z^2 (checked as a residual)
        A = rf("z*(2+z)^2")
        P = poincare_series(A, PointP1(0), 10)
        S = series_substitute_power(P, 2)
        # S(z) = P(z^2) satisfies S(lam' z) = A(S(z)) for lam'^2 = lam
        assert poincare_residual(A, S, ExactScalar(2)).is_zero()


class TestMatchScale:
    def test_finds_scale(self):
        P = exp_like(2, 2, 10)
        target = P.argument_scale(ExactScalar(Fraction(3, 2)))
        assert match_scale(target, P) == ExactScalar(Fraction(3, 2))

    def test_root_scale(self):
        P = poincare_series(rf("z*(2+z)^2"), PointP1(0), 8)
        S = series_substitute_power(P, 2)
        target = S.argument_scale(ExactScalar(2))
        # first nonzero index is 2, so the matcher must take a square root
        assert match_scale(target, S) == ExactScalar(2)

    def test_no_scale(self):
        P = exp_like(2, 2, 10)
        Q = exp_like(4, 4, 10)
        assert match_scale(P, Q) is None


class TestBoettcher:
    def test_fixed_series_of_power_map(self):
        B = boettcher_series(rf("z^2"), 6)
        assert B.a(-1).is_one()
        assert all(B.a(k).is_zero() for k in range(0, 7))

    def test_chebyshev_terminates(self):
        # oracle: (z + 1/z)/2 conjugates z^2 to 2z^2 - 1
        B = boettcher_series(rf("2*z^2-1"), 20)
        assert B.a(-1) == ExactScalar(Fraction(1, 2))
        assert B.a(1) == ExactScalar(Fraction(1, 2))
        assert all(B.a(k).is_zero() for k in range(2, 21))
        assert B.a(0).is_zero()

    def test_residual(self):
        for text in ("z^2", "2*z^2-1", "z^2-1", "3*z^2+z", "z^3-2*z"):
            A = rf(text)
            B = boettcher_series(A, 14)
            assert all(c.is_zero() for c in boettcher_residual(A, B, 14))

    def test_linear_leading_solvable(self):
        B = boettcher_series(rf("3*z^2"), 4)
        assert B.a(-1) == ExactScalar(Fraction(1, 3))

    def test_unsolvable_leading(self):
        with pytest.raises(LeadingCoefficientNotSolvable) as err:
            boettcher_series(rf("2*z^3"), 4)
        assert err.value.radicand == ExactScalar(Fraction(1, 2))
        assert err.value.exponent == 2

    def test_canonical_root_choice(self):
        # lead 1, degree 3: both +1 and -1 solve a^2 = 1; canonical pick is +1
        B = boettcher_series(rf("z^3"), 4)
        assert B.a(-1).is_one()

    def test_explicit_leading_choice(self):
        B = boettcher_series(rf("z^3"), 4, leading_choice=ExactScalar(-1))
        assert B.a(-1) == ExactScalar(-1)
        with pytest.raises(LeadingCoefficientNotSolvable):
            boettcher_series(rf("z^3"), 4, leading_choice=ExactScalar(2))

    def test_gaussian_leading(self):
        # over Q(i) the map -4z^3 needs a^2 = -1/4, solved by a = i/2
        B = boettcher_series(rf("-4*z^3", QI), 4, field=QI)
        assert B.a(-1) == ExactScalar(0, Fraction(1, 2))

    def test_degree_too_small(self):
        with pytest.raises(DegreeTooSmall):
            boettcher_series(rf("z+1"), 4)

    def test_rational_map_rejected(self):
        with pytest.raises(DegreeTooSmall):
            boettcher_series(rf("1/z^2"), 4)
