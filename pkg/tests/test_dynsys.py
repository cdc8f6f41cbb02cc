import random
from fractions import Fraction

import pytest

from dynalg.algdep import find_relation
from dynalg.dynsys import (
    common_iterate_search,
    degree_compatibility,
    independence_check,
    multiplier_dependence,
    transport_boettcher_check,
    verify_commute,
    verify_semiconjugacy,
    verify_theorem_conditions,
)
from dynalg.errors import NotAFixedPoint, NotRepelling, ParamMismatch
from dynalg.parsing import parse_ratfunc
from dynalg.ratfunc import PointP1, iterate
from dynalg.scalars import ExactScalar
from dynalg.series import poincare_series

rf = parse_ratfunc
QUARTER = PointP1(Fraction(1, 4))


class TestSemiconjugacy:
    def test_paper_triple(self):
        assert verify_semiconjugacy(rf("z*(2+z)^2"), rf("z^2"), rf("z*(2+z^2)"))

    def test_trivial(self):
        assert verify_semiconjugacy(rf("z^2"), rf("z"), rf("z^2")).verified

    def test_broken(self):
        assert not verify_semiconjugacy(rf("z^2"), rf("z+1"), rf("z^2")).verified


class TestCommute:
    def test_power_maps(self):
        assert verify_commute(rf("z^2"), rf("z^3"))

    def test_chebyshev(self):
        assert verify_commute(rf("2*z^2-1"), rf("8*z^4-8*z^2+1"))

    def test_non_commuting(self):
        assert not verify_commute(rf("z^2"), rf("z^2+1"))


class TestDegreeCompatibility:
    @pytest.mark.parametrize(
        "n1,n2,expected", [(4, 8, (3, 2)), (2, 3, None), (6, 6, (1, 1)), (4, 2, (1, 2))]
    )
    def test_cases(self, n1, n2, expected):
        assert degree_compatibility(n1, n2) == expected

    def test_brute_force_agreement(self):
        def brute(n1, n2, bound=12):
            for total in range(2, 2 * bound + 1):
                for a in range(max(1, total - bound), min(bound, total - 1) + 1):
                    b = total - a
                    if n1**a == n2**b:
                        return (a, b)
            return None

        random.seed(11)
        for _ in range(60):
            n1 = random.randint(2, 40)
            n2 = random.randint(2, 40)
            assert degree_compatibility(n1, n2) == brute(n1, n2), (n1, n2)


class TestMultiplierDependence:
    @pytest.mark.parametrize(
        "l1,l2,expected",
        [(6, -4, None), (4, 8, (3, 2)), (2, 2, (1, 1)), (-4, 16, (2, 1))],
    )
    def test_cases(self, l1, l2, expected):
        assert multiplier_dependence(ExactScalar(l1), ExactScalar(l2)) == expected

    def test_requires_repelling(self):
        with pytest.raises(NotRepelling):
            multiplier_dependence(ExactScalar(Fraction(1, 2)), ExactScalar(3))

    def test_bound_respected(self):
        # (2, 8192) needs exponents (13, 1), beyond the default bound of 12
        assert multiplier_dependence(ExactScalar(2), ExactScalar(8192)) is None
        assert multiplier_dependence(
            ExactScalar(2), ExactScalar(8192), bound=13
        ) == (13, 1)


class TestCommonIterate:
    def test_power_maps(self):
        assert common_iterate_search(rf("z^2"), rf("z^4")).pair == (2, 1)

    def test_chebyshev_nesting(self):
        result = common_iterate_search(rf("2*z^2-1"), rf("8*z^4-8*z^2+1"))
        assert result.pair == (2, 1)

    def test_incompatible_degrees(self):
        result = common_iterate_search(rf("z^2-6"), rf("z^3-7*z+7"))
        assert result.pair is None
        assert result.reason == "no-degree-compatible-pair"

    def test_budget_flagged(self):
        # z^2 and z^4 + 1 have compatible degrees but no common iterate
        result = common_iterate_search(rf("z^2"), rf("z^4+1"), budget=300)
        assert result.pair is None
        assert result.reason == "budget-exhausted"

    def test_found_pair_rechecked_by_expansion(self):
        result = common_iterate_search(rf("2*z^2-1"), rf("8*z^4-8*z^2+1"))
        l1, l2 = result.pair
        assert iterate(rf("2*z^2-1"), l1) == iterate(rf("8*z^4-8*z^2+1"), l2)


class TestIndependence:
    def test_independent_pair(self):
        report = independence_check(
            rf("z^2-6"), PointP1(3), rf("z^3-7*z+7"), PointP1(1)
        )
        assert report.independent
        assert report.degree_pair is None
        assert report.multiplier_pair is None

    def test_uv_pair_has_witnesses(self):
        report = independence_check(
            rf("4*z^2"), QUARTER, rf("2*z^2"), PointP1(Fraction(1, 2))
        )
        assert not report.independent
        assert report.degree_pair == (1, 1)
        assert report.multiplier_pair == (1, 1)

    def test_same_map_not_independent(self):
        report = independence_check(rf("z^2-6"), PointP1(3), rf("z^2-6"), PointP1(3))
        assert not report.independent

    def test_bad_point_rejected(self):
        with pytest.raises(NotAFixedPoint):
            independence_check(rf("z^2"), PointP1(2), rf("z^2"), PointP1(1))
        with pytest.raises(NotRepelling):
            independence_check(rf("z^2"), PointP1(0), rf("z^2"), PointP1(1))

    def test_monotone_safety_against_detector(self):
        # never report independence when an exact relation certificate exists
        report = independence_check(
            rf("4*z^2"), QUARTER, rf("2*z^2"), PointP1(Fraction(1, 2))
        )
        s1 = poincare_series(rf("4*z^2"), QUARTER, 40)
        s2 = poincare_series(rf("2*z^2"), PointP1(Fraction(1, 2)), 40)
        cert = find_relation(s1, s2, 2, 2, 30)
        assert cert.verdict == "Relation"
        assert not report.independent


UV_ARGS = dict(
    X1="z", X2="2*z", B="4*z^2", A1="4*z^2", A2="2*z^2", z0=QUARTER
)


def run_bundle(X1, X2, B, A1, A2, z0, l1=1, l2=1, d1=1, d2=1, k=1):
    return verify_theorem_conditions(
        rf(X1), rf(X2), rf(B), rf(A1), rf(A2), z0, l1, l2, d1, d2, k
    )


class TestTheoremBundle:
    def test_uv_fixture_all_hold(self):
        report = run_bundle(**UV_ARGS)
        assert report.all_hold

    def test_wrong_point(self):
        report = run_bundle(**{**UV_ARGS, "z0": PointP1(Fraction(1, 3))})
        assert not report.repelling_base_point

    def test_non_repelling_point(self):
        report = run_bundle(**{**UV_ARGS, "z0": PointP1(0)})
        assert not report.repelling_base_point

    def test_wrong_local_degree(self):
        report = run_bundle(**UV_ARGS, d1=2)
        # ord X1 = 1 but d1*k = 2
        assert not report.local_degrees
        assert report.semiconjugacy_1 and report.repelling_base_point

    def test_broken_diagram(self):
        report = run_bundle(**{**UV_ARGS, "A2": "3*z^2"})
        assert not report.semiconjugacy_2

    def test_coprimality_precondition(self):
        with pytest.raises(ParamMismatch):
            run_bundle(**UV_ARGS, d1=2, d2=2)


class TestBoettcherTransport:
    def test_power_tower(self):
        assert transport_boettcher_check(rf("z^4"), rf("z^2"), rf("z^4"), 10)

    def test_chebyshev_commuting_pair(self):
        T4 = rf("8*z^4-8*z^2+1")
        assert transport_boettcher_check(T4, rf("2*z^2-1"), T4, 12)

    def test_commuting_pair_other_order(self):
        T2 = rf("2*z^2-1")
        assert transport_boettcher_check(T2, rf("8*z^4-8*z^2+1"), T2, 12)

    def test_precondition_failure(self):
        with pytest.raises(ParamMismatch):
            transport_boettcher_check(rf("z^2"), rf("z+1"), rf("z^2"), 8)

    def test_negative_case(self):
        # valid semiconjugacy of the basilica family transports correctly
        assert transport_boettcher_check(rf("z^2-2"), rf("z^2-2"), rf("z^2-2"), 10)
