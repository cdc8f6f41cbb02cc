"""Sphere orbifolds with finite ramification support.

Covering, holomorphic, and minimal-holomorphic map checks evaluate their
defining local identities at every point where either side can exceed one:
critical points, the source support, and all preimages of the target
support.  Preimages that do not resolve over the field abort the check
rather than guess.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

from .errors import FactorBoundExceeded, UnresolvedPreimage
from .numtheory import nth_root_in_field
from .poly import Polynomial
from .ratfunc import (
    PointP1,
    RationalFunction,
    conjugate_by_inversion,
    critical_points,
    local_degree,
    preimages,
)
from .scalars import ExactScalar, Field, ONE, QQ


class Orbifold:
    """Ramification function on the sphere with finite support."""

    __slots__ = ("support",)

    def __init__(self, support):
        items = []
        seen = set()
        for point, nu in support:
            if not isinstance(point, PointP1):
                point = PointP1(point)
            nu = int(nu)
            if nu < 2:
                raise ValueError("support multiplicities must be >= 2")
            if point in seen:
                raise ValueError(f"duplicate support point {point}")
            seen.add(point)
            items.append((point, nu))
        items.sort(key=lambda pn: pn[0].sort_key())
        object.__setattr__(self, "support", tuple(items))

    def __setattr__(self, name, v):
        raise AttributeError("Orbifold is immutable")

    @staticmethod
    def trivial() -> "Orbifold":
        return Orbifold(())

    def nu(self, point: PointP1) -> int:
        for p, n in self.support:
            if p == point:
                return n
        return 1

    def points(self):
        return [p for p, _ in self.support]

    def signature(self):
        return tuple(sorted(n for _, n in self.support))

    def is_trivial(self) -> bool:
        return not self.support

    def euler_char(self) -> ExactScalar:
        """chi = 2 + sum over support of (1/nu - 1), exactly."""
        chi = Fraction(2)
        for _, n in self.support:
            chi += Fraction(1, n) - 1
        return ExactScalar(chi)

    def good_signature(self) -> bool:
        """False for the degenerate one-point and unequal two-point shapes,
        which no surface covers."""
        sig = self.signature()
        if len(sig) == 1:
            return False
        if len(sig) == 2 and sig[0] != sig[1]:
            return False
        return True

    def __eq__(self, other):
        return isinstance(other, Orbifold) and self.support == other.support

    def __hash__(self):
        return hash(self.support)

    def to_json(self) -> dict:
        return {"support": [[str(p), str(n)] for p, n in self.support]}

    def __repr__(self):
        body = ", ".join(f"{p}:{n}" for p, n in self.support)
        return f"Orbifold({{{body}}})"


def euler_char(o: Orbifold) -> ExactScalar:
    return o.euler_char()


def _checkpoints(f: RationalFunction, o1: Orbifold, o2: Orbifold, field: Field):
    """Every point where nu1, nu2 o f, or the local degree can exceed 1.

    Returns (points, unresolved) where unresolved lists irreducible factors
    whose roots could not be extracted over the field.
    """
    if f.is_constant():
        raise ValueError("orbifold map checks need a nonconstant map")
    points = set(o1.points())
    crit, unresolved = critical_points(f, field)
    points.update(crit)
    for q, _ in o2.support:
        pre, extra = preimages(f, q, field)
        points.update(p for p, _ in pre)
        unresolved.extend(extra)
    return sorted(points, key=lambda p: p.sort_key()), unresolved


def _orbifold_map_check(f, o1, o2, field, condition) -> bool:
    """Evaluate a pointwise orbifold-map condition soundly.

    A violation at any field-rational checkpoint falsifies the condition
    outright; an UnresolvedPreimage is raised only when every resolvable
    point passes but unresolved factors keep the verdict uncertifiable.
    """
    points, unresolved = _checkpoints(f, o1, o2, field)
    for z in points:
        if not condition(o1.nu(z), local_degree(f, z), o2.nu(f.evaluate(z))):
            return False
    if unresolved:
        raise UnresolvedPreimage(
            f"irreducible factor over {field} while resolving checkpoints: "
            f"{unresolved[0]}",
            factor=unresolved[0],
        )
    return True


def is_covering_map(
    f: RationalFunction, o1: Orbifold, o2: Orbifold, field: Field = QQ
) -> bool:
    """nu2(f(z)) = nu1(z) * deg_z f at every relevant point."""
    return _orbifold_map_check(
        f, o1, o2, field, lambda n1, dz, n2: n2 == n1 * dz
    )


def is_holomorphic_map(
    f: RationalFunction, o1: Orbifold, o2: Orbifold, field: Field = QQ
) -> bool:
    """Divisibility form: nu2(f(z)) divides nu1(z) * deg_z f everywhere."""
    return _orbifold_map_check(
        f, o1, o2, field, lambda n1, dz, n2: (n1 * dz) % n2 == 0
    )


def is_minimal_holomorphic(
    f: RationalFunction, o1: Orbifold, o2: Orbifold, field: Field = QQ
) -> bool:
    """nu2(f(z)) = nu1(z) * gcd(deg_z f, nu2(f(z))) at every relevant point.

    Also re-verifies the holomorphic divisibility condition it refines, as
    a sanity subsumption.
    """
    return _orbifold_map_check(
        f,
        o1,
        o2,
        field,
        lambda n1, dz, n2: n2 == n1 * gcd(dz, n2) and (n1 * dz) % n2 == 0,
    )


@dataclass
class LattesCheck:
    holds: bool
    chi: ExactScalar
    chi_nonnegative: bool
    good_signature: bool

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "chi": str(self.chi),
            "chi_nonnegative": self.chi_nonnegative,
            "good_signature": self.good_signature,
        }


def check_generalized_lattes(
    A: RationalFunction, o: Orbifold, field: Field = QQ
) -> LattesCheck:
    """Minimal-holomorphic self-map check A: O -> O, with the chi report."""
    if A.degree() < 2:
        raise ValueError("generalized-Lattes checks need degree >= 2")
    if o.is_trivial():
        raise ValueError("the orbifold must differ from the non-ramified sphere")
    holds = is_minimal_holomorphic(A, o, o, field)
    chi = o.euler_char()
    return LattesCheck(holds, chi, chi.re >= 0, o.good_signature())


@dataclass
class LattesDetection:
    orbifold: Orbifold | None
    log: list = dc_field(default_factory=list)
    special_note: str | None = None

    def __bool__(self):
        return self.orbifold is not None

    def to_json(self) -> dict:
        return {
            "found": self.orbifold is not None,
            "orbifold": None if self.orbifold is None else self.orbifold.to_json(),
            "candidates": self.log,
            "special_note": self.special_note,
        }


def detect_generalized_lattes(
    A: RationalFunction,
    nu_max: int,
    support_budget: int = 8,
    field: Field = QQ,
) -> LattesDetection:
    """Bounded search for an orbifold making A a minimal holomorphic self-map.

    Candidate supports come from the forward orbit closure of the critical
    values (at most support_budget field-rational points); multiplicities
    range over 2..nu_max subject to chi >= 0, skipping the degenerate
    one-point and unequal two-point signatures that no surface covers.  A
    none verdict is bounded-search evidence, not a proof that A is not a
    generalized Lattes map; in particular power maps and Chebyshev maps
    need infinite ramification and are only recognized syntactically.
    """
    if A.degree() < 2:
        raise ValueError("generalized-Lattes detection needs degree >= 2")
    if nu_max < 2:
        raise ValueError("nu_max must be >= 2")
    log: list = []
    special = classify_special(A, field)
    note = None
    if special is not None:
        note = (
            f"map is syntactically special ({special}); the finite-"
            "ramification model cannot certify power or Chebyshev families"
        )
    points, warnings = _candidate_points(A, support_budget, field)
    log.extend(warnings)
    max_support = min(4, len(points))
    for size in range(1, max_support + 1):
        for combo in itertools.combinations(points, size):
            support_str = [str(p) for p in combo]
            if size == 1:
                log.append(
                    {
                        "support": support_str,
                        "rejected": "degenerate signature (no surface cover)",
                    }
                )
                continue
            # the defining identity forces nu(A(z)) >= 2 on the support, so
            # any valid support is forward invariant; prune early on that
            if any(A.evaluate(p) not in combo for p in combo):
                log.append(
                    {
                        "support": support_str,
                        "rejected": "support not forward invariant under the map",
                    }
                )
                continue
            for nus in itertools.product(range(2, nu_max + 1), repeat=size):
                cand = Orbifold(tuple(zip(combo, nus)))
                chi = cand.euler_char()
                if chi.re < 0:
                    continue
                entry = {"support": [[str(p), str(n)] for p, n in cand.support]}
                if not cand.good_signature():
                    entry["rejected"] = "degenerate signature (no surface cover)"
                    log.append(entry)
                    continue
                try:
                    result = check_generalized_lattes(A, cand, field)
                except (UnresolvedPreimage, FactorBoundExceeded) as exc:
                    entry["rejected"] = f"skipped: {exc}"
                    log.append(entry)
                    continue
                if result.holds:
                    entry["accepted"] = True
                    log.append(entry)
                    return LattesDetection(cand, log, note)
                entry["rejected"] = "fails the minimal-holomorphic identity"
                log.append(entry)
    return LattesDetection(None, log, note)


def _candidate_points(A: RationalFunction, budget: int, field: Field):
    """Forward orbit closure of the critical values, field-rational only."""
    warnings = []
    crit, unresolved = critical_points(A, field)
    for factor in unresolved:
        warnings.append(
            {"warning": f"critical points of irreducible factor {factor} skipped"}
        )
    frontier = []
    seen = []
    for c in crit:
        v = A.evaluate(c)
        if v not in frontier:
            frontier.append(v)
    while frontier and len(seen) < budget:
        p = frontier.pop(0)
        if p in seen:
            continue
        seen.append(p)
        v = A.evaluate(p)
        if v not in seen and v not in frontier:
            frontier.append(v)
    if frontier:
        warnings.append(
            {"warning": f"orbit budget {budget} reached before closure"}
        )
    seen.sort(key=lambda p: p.sort_key())
    return seen, warnings


def chebyshev_polynomial(n: int) -> Polynomial:
    """T_n with T_n(cos t) = cos(n t), exact integer coefficients."""
    if n < 0:
        raise ValueError("need n >= 0")
    t_prev = Polynomial([1])
    t_cur = Polynomial([0, 1])
    if n == 0:
        return t_prev
    two_z = Polynomial([0, 2])
    for _ in range(n - 1):
        t_prev, t_cur = t_cur, two_z * t_cur - t_prev
    return t_cur


def classify_special(A: RationalFunction, field: Field = QQ):
    """Bounded syntactic recognizer for the classical special families.

    Detects polynomials affinely conjugate to z^n or +-T_n up to degree 8,
    and the literal reciprocal power form u/z^n.  Returns a description or
    None; a None verdict is not a proof of non-specialness (Lattes maps and
    Moebius-twisted forms are out of reach here).
    """
    n = A.degree()
    if n < 2 or n > 8:
        return None
    if A.is_polynomial():
        return _classify_special_polynomial(A, field)
    if A.num.degree() == 0 and len([c for c in A.den.coeffs if not c.is_zero()]) == 1:
        return f"reciprocal power map, conjugate form of z^-{n}"
    C = conjugate_by_inversion(A)
    if C.is_polynomial():
        inner = _classify_special_polynomial(C, field)
        if inner is not None:
            return f"{inner} (after conjugating by 1/z)"
    return None


def _classify_special_polynomial(A: RationalFunction, field: Field):
    lead = A.den.leading()
    P = A.num if lead.is_one() else A.num.scale(ONE / lead)
    n = P.degree()
    c_top = P.leading()
    shift = -P.coeff(n - 1) / (ExactScalar(n) * c_top)
    Q = P.shift_argument(shift) - Polynomial([shift])
    if all(Q.coeff(k).is_zero() for k in range(1, n)) and Q.coeff(0).is_zero():
        a = nth_root_in_field(ONE / Q.leading(), n - 1, field)
        if a is not None:
            return f"power map, affinely conjugate to z^{n}"
    T = chebyshev_polynomial(n)
    for sign, name in ((ONE, f"T_{n}"), (-ONE, f"-T_{n}")):
        target_lead = T.leading() * sign
        a = nth_root_in_field(target_lead / Q.leading(), n - 1, field)
        if a is None:
            continue
        scaled = Q.compose(Polynomial([0, a])).scale(ONE / a)
        if scaled == T.scale(sign):
            return f"Chebyshev family, affinely conjugate to {name}"
    return None
