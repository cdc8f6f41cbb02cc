from fractions import Fraction

import pytest

from dynalg.errors import UnresolvedPreimage
from dynalg.orbifold import (
    Orbifold,
    chebyshev_polynomial,
    check_generalized_lattes,
    classify_special,
    detect_generalized_lattes,
    euler_char,
    is_covering_map,
    is_holomorphic_map,
    is_minimal_holomorphic,
)
from dynalg.parsing import parse_ratfunc
from dynalg.poly import Polynomial
from dynalg.ratfunc import PointP1, compose, iterate
from dynalg.scalars import ExactScalar

rf = parse_ratfunc
INF = PointP1.infinity()


def orb(*pairs):
    return Orbifold([(PointP1(p) if p != "inf" else INF, n) for p, n in pairs])


O22 = orb((0, 2), ("inf", 2))


class TestEulerCharacteristic:
    # ten signatures with hand-computed chi = 2 + sum(1/nu - 1)
    SIGNATURES = [
        ((), Fraction(2)),
        (((0, 2), ("inf", 2)), Fraction(1)),
        (((0, 2), (1, 2), (-1, 2), ("inf", 2)), Fraction(0)),
        (((0, 2), (1, 3), ("inf", 6)), Fraction(0)),
        (((0, 2), (1, 4), ("inf", 4)), Fraction(0)),
        (((0, 3), (1, 3), ("inf", 3)), Fraction(0)),
        (((0, 2), (1, 3), ("inf", 5)), Fraction(1, 30)),
        (((0, 2), (1, 3), ("inf", 7)), Fraction(-1, 42)),
        (((0, 5), ("inf", 5)), Fraction(2, 5)),
        (((0, 2), (1, 2), ("inf", 3)), Fraction(1, 3)),
    ]

    @pytest.mark.parametrize("pairs,chi", SIGNATURES)
    def test_signatures(self, pairs, chi):
        assert euler_char(orb(*pairs)) == ExactScalar(chi)

    def test_duplicate_points_rejected(self):
        with pytest.raises(ValueError):
            orb((0, 2), (0, 3))

    def test_small_nu_rejected(self):
        with pytest.raises(ValueError):
            orb((0, 1))


COVERING_FIXTURES = [
    ("z^2", (), ((0, 2), ("inf", 2))),
    ("z^3", (), ((0, 3), ("inf", 3))),
    ("z^2", ((0, 2), ("inf", 2)), ((0, 4), ("inf", 4))),
    ("1/z", ((0, 2), ("inf", 2)), ((0, 2), ("inf", 2))),
]


class TestCoveringMaps:
    def test_power_map_covering(self):
        assert is_covering_map(rf("z^2"), Orbifold.trivial(), O22)

    def test_wrong_source_ramification(self):
        assert not is_covering_map(rf("z^2"), orb((0, 2)), O22)

    def test_identity(self):
        assert is_covering_map(rf("z"), O22, O22)

    @pytest.mark.parametrize("f,o1,o2", COVERING_FIXTURES)
    def test_chi_multiplicativity(self, f, o1, o2):
        F, O1, O2 = rf(f), orb(*o1), orb(*o2)
        assert is_covering_map(F, O1, O2)
        assert euler_char(O1) == ExactScalar(F.degree()) * euler_char(O2)

    def test_unresolved_preimage_raises(self):
        # every rational checkpoint passes, but the preimages of 2 under z^2
        # are irrational, so the verdict cannot be certified
        with pytest.raises(UnresolvedPreimage):
            is_covering_map(
                rf("z^2"), Orbifold.trivial(), orb((0, 2), ("inf", 2), (2, 2))
            )


class TestMinimalHolomorphic:
    def test_paper_example(self):
        assert is_minimal_holomorphic(rf("z*(2+z)^2"), O22, O22)

    def test_power_map_fails_at_zero(self):
        assert not is_minimal_holomorphic(rf("z^2"), O22, O22)

    def test_identity(self):
        assert is_minimal_holomorphic(rf("z"), O22, O22)

    @pytest.mark.parametrize("f,o1,o2", COVERING_FIXTURES)
    def test_covering_implies_minimal(self, f, o1, o2):
        F, O1, O2 = rf(f), orb(*o1), orb(*o2)
        assert is_minimal_holomorphic(F, O1, O2)

    @pytest.mark.parametrize(
        "f,o1,o2",
        COVERING_FIXTURES + [("z*(2+z)^2", ((0, 2), ("inf", 2)), ((0, 2), ("inf", 2)))],
    )
    def test_minimal_implies_holomorphic(self, f, o1, o2):
        F, O1, O2 = rf(f), orb(*o1), orb(*o2)
        assert is_minimal_holomorphic(F, O1, O2)
        assert is_holomorphic_map(F, O1, O2)

    def test_chi_inequality_for_holomorphic(self):
        # holomorphic but not covering: chi(O1) <= deg * chi(O2), strictly here
        F = rf("z*(2+z)^2")
        assert is_holomorphic_map(F, O22, O22)
        assert not is_covering_map(F, O22, O22)
        lhs = euler_char(O22).re
        rhs = euler_char(O22).re * F.degree()
        assert lhs < rhs

    def test_chi_equality_for_covering(self):
        F = rf("z^2")
        O2 = orb((0, 4), ("inf", 4))
        assert is_covering_map(F, O22, O2)
        assert euler_char(O22).re == F.degree() * euler_char(O2).re


class TestGeneralizedLattes:
    def test_accepts_paper_construction(self):
        result = check_generalized_lattes(rf("z*(2+z)^2"), O22)
        assert result.holds and result.chi_nonnegative

    def test_rejects_quadratic_with_wandering_critical_value(self):
        assert not check_generalized_lattes(rf("z^2-6"), O22).holds

    PERTURBED = [
        ("z^2-6", ((0, 2), ("inf", 2))),
        ("z^2", ((0, 2), ("inf", 2))),
        ("z*(2+z)^2", ((0, 3), ("inf", 2))),
        ("z*(2+z)^2", ((0, 2), ("inf", 3))),
        ("z*(2+z)^2", ((0, 4), ("inf", 4))),
        ("z*(2+z)^2", ((1, 2), ("inf", 2))),
        ("z*(2+z)^2", ((0, 2), (1, 2))),
        ("z*(2+z)^2", ((0, 3), ("inf", 3))),
        ("z*(2+z)^2+1", ((0, 2), ("inf", 2))),
        ("z^2*(2+z)", ((0, 2), ("inf", 2))),
    ]

    @pytest.mark.parametrize("f,pairs", PERTURBED)
    def test_rejects_perturbed_candidates(self, f, pairs):
        assert not check_generalized_lattes(rf(f), orb(*pairs)).holds

    def test_empty_orbifold_rejected(self):
        with pytest.raises(ValueError):
            check_generalized_lattes(rf("z^2"), Orbifold.trivial())

    def test_iterate_stability(self):
        # A and A^2 accept the same certificate orbifold; the fixture keeps
        # all preimages rational so the iterated check stays decidable
        A = rf("z^3")
        A2 = compose(A, A)
        assert check_generalized_lattes(A, O22).holds
        assert check_generalized_lattes(A2, O22).holds

    def test_rejection_stable_under_iteration(self):
        A = rf("z^2-6")
        assert not check_generalized_lattes(A, O22).holds
        assert not check_generalized_lattes(iterate(A, 2), O22).holds


class TestDetect:
    def test_finds_paper_orbifold(self):
        detection = detect_generalized_lattes(rf("z*(2+z)^2"), 4)
        assert detection.orbifold == O22

    def test_none_for_generic_quadratic(self):
        detection = detect_generalized_lattes(rf("z^2-6"), 6)
        assert detection.orbifold is None
        assert any("rejected" in entry for entry in detection.log)

    def test_power_map_documented_caveat(self):
        # z^2 is special, but no finite-ramification certificate exists at
        # nu_max = 2; the detector says so instead of guessing
        detection = detect_generalized_lattes(rf("z^2"), 2)
        assert detection.orbifold is None
        assert detection.special_note is not None

    def test_found_certificate_rechecks(self):
        detection = detect_generalized_lattes(rf("z*(2+z)^2"), 4)
        assert check_generalized_lattes(rf("z*(2+z)^2"), detection.orbifold).holds


class TestClassifySpecial:
    def test_power_and_chebyshev(self):
        assert "power" in classify_special(rf("z^2"))
        assert "T_2" in classify_special(rf("2*z^2-1"))
        assert "T_4" in classify_special(rf("8*z^4-8*z^2+1"))
        assert "-T_3" in classify_special(rf("-4*z^3+3*z"))

    def test_affine_conjugates(self):
        # z^2 + 2z = (z+1)^2 - 1 is affinely conjugate to z^2
        assert "power" in classify_special(rf("z^2+2*z"))

    def test_reciprocal_power(self):
        assert "reciprocal" in classify_special(rf("1/z^2"))

    def test_generic_maps_unrecognized(self):
        assert classify_special(rf("z^2-6")) is None
        assert classify_special(rf("z*(2+z)^2")) is None

    def test_chebyshev_generator(self):
        assert chebyshev_polynomial(2) == Polynomial([-1, 0, 2])
        assert chebyshev_polynomial(4) == Polynomial([1, 0, -8, 0, 8])
