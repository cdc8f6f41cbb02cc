"""Diagram-level verifiers and arithmetic dependence criteria.

Semiconjugacy and commutation are decided by exact equality of reduced
rational functions.  The independence criterion is one-directional: when
either the degree test or the multiplier test fails there is provably no
algebraic relation between the linearizing series; when both produce
witnesses, dependence is possible but not established.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotAFixedPoint, NotRepelling, ParamMismatch
from .numtheory import factor_int, multiplicative_pair
from .poly import Polynomial
from .ratfunc import (
    DEGREE_CAP,
    PointP1,
    RationalFunction,
    compose,
    iterate,
    local_degree,
    multiplier_at,
)
from .scalars import ExactScalar, Field, ONE, QQ, units
from .series import LaurentSeries, boettcher_series


@dataclass(frozen=True)
class SemiconjugacyTriple:
    A: RationalFunction
    X: RationalFunction
    B: RationalFunction
    verified: bool

    def __bool__(self):
        return self.verified


def verify_semiconjugacy(
    A: RationalFunction, X: RationalFunction, B: RationalFunction
) -> SemiconjugacyTriple:
    """verified iff A o X = X o B exactly as reduced rational functions."""
    return SemiconjugacyTriple(A, X, B, compose(A, X) == compose(X, B))


def verify_commute(A: RationalFunction, B: RationalFunction) -> bool:
    return compose(A, B) == compose(B, A)


def degree_compatibility(n1: int, n2: int):
    """Minimal positive (l1, l2) with n1^l1 == n2^l2, or None.

    Exists iff n1 and n2 have identical prime support with proportional
    exponent vectors.
    """
    if n1 < 2 or n2 < 2:
        raise ValueError("degree compatibility needs degrees >= 2")
    e1 = factor_int(n1)
    e2 = factor_int(n2)
    if set(e1) != set(e2):
        return None
    ratio = None
    for p in e1:
        r = Fraction(e2[p], e1[p])
        if ratio is None:
            ratio = r
        elif ratio != r:
            return None
    return (ratio.numerator, ratio.denominator)


def multiplier_dependence(
    lam1: ExactScalar,
    lam2: ExactScalar,
    bound: int = 12,
    field: Field = QQ,
):
    """Minimal (l1', l2') with lam1^l1' == lam2^l2', or None within bound.

    Decided exactly through prime (or Gaussian-prime) factorization with
    sign and unit matching; both multipliers must be repelling.
    """
    if lam1.is_zero() or lam2.is_zero():
        raise ValueError("multiplier dependence needs nonzero multipliers")
    if lam1.norm2() <= 1 or lam2.norm2() <= 1:
        raise NotRepelling("multiplier dependence is stated for |lam| > 1")
    return multiplicative_pair(lam1, lam2, field, bound)


@dataclass
class CommonIterateResult:
    pair: tuple[int, int] | None
    reason: str  # "found", "no-degree-compatible-pair", "budget-exhausted"

    def __bool__(self):
        return self.pair is not None

    def to_json(self) -> dict:
        return {
            "found": self.pair is not None,
            "pair": None if self.pair is None else [str(self.pair[0]), str(self.pair[1])],
            "reason": self.reason,
        }


def common_iterate_search(
    A: RationalFunction, B: RationalFunction, budget: int = DEGREE_CAP
) -> CommonIterateResult:
    """Search for (l1, l2) with A^(l1) = B^(l2) inside the degree budget.

    Candidate exponent pairs are exactly the multiples of the minimal
    degree-compatible pair; each is checked by exact expansion.
    """
    dA, dB = A.degree(), B.degree()
    if dA < 2 or dB < 2:
        raise ValueError("common-iterate search needs degrees >= 2")
    base = degree_compatibility(dA, dB)
    if base is None:
        return CommonIterateResult(None, "no-degree-compatible-pair")
    l1, l2 = base
    k = 1
    while dA ** (k * l1) <= budget:
        if iterate(A, k * l1, cap=budget) == iterate(B, k * l2, cap=budget):
            return CommonIterateResult((k * l1, k * l2), "found")
        k += 1
    return CommonIterateResult(None, "budget-exhausted")


@dataclass
class CompatibilityReport:
    degree_pair: tuple[int, int] | None
    multiplier_pair: tuple[int, int] | None
    multipliers: tuple[ExactScalar, ExactScalar]

    @property
    def independent(self) -> bool:
        return self.degree_pair is None or self.multiplier_pair is None

    def to_json(self) -> dict:
        def fmt(pair):
            return None if pair is None else [str(pair[0]), str(pair[1])]

        return {
            "independent": self.independent,
            "degree_pair": fmt(self.degree_pair),
            "multiplier_pair": fmt(self.multiplier_pair),
            "multipliers": [str(self.multipliers[0]), str(self.multipliers[1])],
            "verdict": (
                "independent (proved by the criterion)"
                if self.independent
                else "compatibility witnesses found (dependence possible, not established)"
            ),
        }


def independence_check(
    A1: RationalFunction,
    z1: PointP1,
    A2: RationalFunction,
    z2: PointP1,
    bound: int = 12,
    field: Field = QQ,
) -> CompatibilityReport:
    """Algebraic-independence criterion from degree and multiplier data.

    Independence is proved when either compatibility test fails; otherwise
    the witness pairs are reported without claiming dependence.
    """
    lams = []
    for A, z in ((A1, z1), (A2, z2)):
        if A.evaluate(z) != z:
            raise NotAFixedPoint(f"{z} is not fixed by the map")
        lam = multiplier_at(A, z)
        if lam.norm2() <= 1:
            raise NotRepelling(f"fixed point {z} is not repelling")
        lams.append(lam)
    degree_pair = degree_compatibility(A1.degree(), A2.degree())
    multiplier_pair = multiplier_dependence(lams[0], lams[1], bound, field)
    return CompatibilityReport(degree_pair, multiplier_pair, (lams[0], lams[1]))


@dataclass
class TheoremConditionReport:
    semiconjugacy_1: bool
    semiconjugacy_2: bool
    repelling_base_point: bool
    image_points_fixed: bool
    local_degrees: bool
    witnesses: dict

    @property
    def all_hold(self) -> bool:
        return (
            self.semiconjugacy_1
            and self.semiconjugacy_2
            and self.repelling_base_point
            and self.image_points_fixed
            and self.local_degrees
        )

    def __bool__(self):
        return self.all_hold

    def to_json(self) -> dict:
        return {
            "semiconjugacy_1": self.semiconjugacy_1,
            "semiconjugacy_2": self.semiconjugacy_2,
            "repelling_base_point": self.repelling_base_point,
            "image_points_fixed": self.image_points_fixed,
            "local_degrees": self.local_degrees,
            "all": self.all_hold,
            "witnesses": self.witnesses,
        }


def verify_theorem_conditions(
    X1: RationalFunction,
    X2: RationalFunction,
    B: RationalFunction,
    A1: RationalFunction,
    A2: RationalFunction,
    z0: PointP1,
    l1: int,
    l2: int,
    d1: int,
    d2: int,
    k: int,
) -> TheoremConditionReport:
    """Per-condition report for the dependency-existence criterion.

    Checks the two iterated semiconjugacies, that the base point is a
    repelling fixed point, that its images are fixed by the respective
    maps, and the local-degree equalities ord X1 = d1*k, ord X2 = d2*k.
    The bounds d1, d2 must be coprime.
    """
    if min(l1, l2, d1, d2, k) < 1:
        raise ParamMismatch("exponents and orders must be positive")
    if gcd(d1, d2) != 1:
        raise ParamMismatch(f"d1 = {d1} and d2 = {d2} must be coprime")
    cond1 = compose(iterate(A1, l1), X1) == compose(X1, B)
    cond2 = compose(iterate(A2, l2), X2) == compose(X2, B)
    witnesses: dict = {}
    cond3 = B.evaluate(z0) == z0
    if cond3:
        lam = multiplier_at(B, z0)
        witnesses["base_multiplier"] = str(lam)
        cond3 = lam.norm2() > 1
    img1 = X1.evaluate(z0)
    img2 = X2.evaluate(z0)
    witnesses["image_1"] = str(img1)
    witnesses["image_2"] = str(img2)
    cond4 = A1.evaluate(img1) == img1 and A2.evaluate(img2) == img2
    ord1 = local_degree(X1, z0)
    ord2 = local_degree(X2, z0)
    witnesses["local_degree_1"] = str(ord1)
    witnesses["local_degree_2"] = str(ord2)
    cond5 = ord1 == d1 * k and ord2 == d2 * k
    return TheoremConditionReport(cond1, cond2, cond3, cond4, cond5, witnesses)


def transport_boettcher_check(
    A,
    X,
    B,
    order: int,
    field: Field = QQ,
) -> bool:
    """Check X o B_B = B_A(z^deg X) through `order` Laurent coefficients.

    Requires the polynomial semiconjugacy A o X = X o B; the comparison
    allows the scale freedom B_A(uz) over the field units u with
    u^(deg A - 1) = 1.
    """
    A, X, B = (_as_rf(m) for m in (A, X, B))
    for m in (A, X, B):
        if not m.is_polynomial():
            raise ParamMismatch("Boettcher transport needs polynomial maps")
    if X.is_constant():
        raise ParamMismatch("transport map must be nonconstant")
    if not verify_semiconjugacy(A, X, B).verified:
        raise ParamMismatch("A o X = X o B fails: not a semiconjugacy")
    d = X.degree()
    nA = A.degree()
    bB = boettcher_series(B, order + d, field=field)
    bA = boettcher_series(A, order, field=field)
    S = bB.to_laurent().compose_polynomial(_poly_of(X))
    down_to = max(S.valid_bottom, d - order * d, d * (1 - (bA.order + 1)))
    for u in units(field):
        if not (u ** (nA - 1)).is_one():
            continue
        scaled = LaurentSeries(
            1, [bA.coeffs[i] * u ** (1 - i) for i in range(len(bA.coeffs))]
        )
        cand = scaled.substitute_power(d)
        lo = max(down_to, cand.valid_bottom)
        if S.agrees_with(cand, lo):
            return True
    return False


def _as_rf(m) -> RationalFunction:
    if isinstance(m, RationalFunction):
        return m
    if isinstance(m, Polynomial):
        return RationalFunction(m)
    raise TypeError("expected a map")


def _poly_of(m: RationalFunction) -> Polynomial:
    lead = m.den.leading()
    return m.num if lead.is_one() else m.num.scale(ONE / lead)
