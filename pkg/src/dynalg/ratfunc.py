"""Rational functions on the sphere: composition, iteration, fixed points,
multipliers, and local degrees, all in exact arithmetic.

Points are elements of P^1 over the active field; the point at infinity is
handled by conjugating with 1/z wherever a chart swap is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import IterationBudgetExceeded, ZeroDenominator
from .poly import Polynomial
from .roots import field_roots
from .scalars import ExactScalar, Field, ONE, QQ, ZERO

DEGREE_CAP = 4096


class PointP1:
    """A point of the projective line: a finite scalar or infinity."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        if value is not None and not isinstance(value, ExactScalar):
            value = ExactScalar(value)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, v):
        raise AttributeError("PointP1 is immutable")

    @staticmethod
    def infinity() -> "PointP1":
        return PointP1(None)

    @staticmethod
    def finite(v) -> "PointP1":
        return PointP1(v)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __eq__(self, other):
        if not isinstance(other, PointP1):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(("inf",)) if self.value is None else hash(self.value)

    def sort_key(self):
        # finite points first, then infinity
        if self.value is None:
            return (1, (0, 0))
        return (0, self.value.sort_key())

    def __str__(self):
        return "inf" if self.value is None else str(self.value)

    def __repr__(self):
        return f"PointP1({str(self)})"


INF = PointP1.infinity()


class RationalFunction:
    """Reduced fraction of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial([num]) if not isinstance(num, (list, tuple)) else Polynomial(num)
        if den is None:
            den = Polynomial([1])
        elif not isinstance(den, Polynomial):
            den = Polynomial([den]) if not isinstance(den, (list, tuple)) else Polynomial(den)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if num.is_zero():
            num, den = Polynomial(), Polynomial([1])
        else:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
            lead = den.leading()
            if not lead.is_one():
                inv = ONE / lead
                num = num.scale(inv)
                den = den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, v):
        raise AttributeError("RationalFunction is immutable")

    @staticmethod
    def variable() -> "RationalFunction":
        return RationalFunction(Polynomial([0, 1]))

    @staticmethod
    def constant(c) -> "RationalFunction":
        return RationalFunction(Polynomial([c]))

    def degree(self) -> int:
        """Map degree max(deg num, deg den); constants give 0."""
        return max(self.num.degree(), self.den.degree(), 0)

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() <= 0

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    # -- field arithmetic (used by the parser and curve checks) -----------

    def __add__(self, other):
        other = _as_rf(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rf(other)
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __rsub__(self, other):
        return _as_rf(other) - self

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other.num.is_zero():
            raise ZeroDenominator("division of rational functions by zero")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rf(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return (RationalFunction(Polynomial([1])) / self) ** (-k)
        out = RationalFunction(Polynomial([1]))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def reciprocal(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDenominator("reciprocal of the zero function")
        return RationalFunction(self.den, self.num)

    # -- evaluation --------------------------------------------------------

    def evaluate(self, p: PointP1) -> PointP1:
        if p.is_infinity:
            dn, dd = self.num.degree(), self.den.degree()
            if dn > dd:
                return INF
            if dn < dd:
                return PointP1(ZERO)
            return PointP1(self.num.leading())  # denominator is monic
        n = self.num.evaluate(p.value)
        d = self.den.evaluate(p.value)
        if d.is_zero():
            return INF
        return PointP1(n / d)

    def evaluate_finite(self, z: ExactScalar) -> ExactScalar:
        d = self.den.evaluate(z)
        if d.is_zero():
            raise ZeroDenominator(f"pole at {z}")
        return self.num.evaluate(z) / d

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __str__(self):
        from .parsing import format_ratfunc

        return format_ratfunc(self)

    def __repr__(self):
        return f"RationalFunction({str(self)})"


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, ExactScalar)):
        return RationalFunction.constant(x)
    if isinstance(x, Polynomial):
        return RationalFunction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")


def compose(
    outer: RationalFunction, inner: RationalFunction, cap: int = DEGREE_CAP
) -> RationalFunction:
    """outer(inner), reduced.  deg(result) = deg(outer) * deg(inner) unless
    one side is constant."""
    expected = outer.degree() * inner.degree()
    if expected > cap:
        raise IterationBudgetExceeded(
            f"composition degree {expected} exceeds cap {cap}"
        )
    p, q = outer.num, outer.den
    dp, dq = p.degree(), q.degree()
    ph = p.compose_fraction(inner.num, inner.den)
    qh = q.compose_fraction(inner.num, inner.den)
    # compose_fraction leaves implicit denominators den^dp and den^dq
    if dq > dp:
        ph = ph * inner.den ** (dq - dp)
    elif dp > dq:
        qh = qh * inner.den ** (dp - dq)
    return RationalFunction(ph, qh)


def iterate(A: RationalFunction, l: int, cap: int = DEGREE_CAP) -> RationalFunction:
    """l-fold self-composition with a fail-fast degree cap."""
    if l < 1:
        raise ValueError("iteration count must be >= 1")
    d = A.degree()
    if d >= 2 and d**l > cap:
        raise IterationBudgetExceeded(f"degree {d}^{l} exceeds cap {cap}")
    out = A
    for _ in range(l - 1):
        out = compose(out, A, cap=cap)
    return out


def conjugate_by_inversion(A: RationalFunction) -> RationalFunction:
    """(1/z) o A o (1/z), the chart at infinity."""
    inv = RationalFunction(Polynomial([1]), Polynomial([0, 1]))
    return compose(inv, compose(A, inv, cap=DEGREE_CAP), cap=DEGREE_CAP)


def multiplier_at(A: RationalFunction, z0: PointP1) -> ExactScalar:
    """Derivative of A at a fixed point, using the 1/z chart when needed."""
    if A.evaluate(z0) != z0:
        raise ValueError("multiplier requested at a non-fixed point")
    if z0.is_infinity:
        B = conjugate_by_inversion(A)
        return B.derivative().evaluate_finite(ZERO)
    d = A.den.evaluate(z0.value)
    if d.is_zero():
        # fixed point at a pole cannot happen: A(z0) would be infinity
        raise ZeroDenominator("fixed point at a pole")
    return A.derivative().evaluate_finite(z0.value)


def local_degree(X: RationalFunction, z0: PointP1) -> int:
    """Multiplicity of X(z) - X(z0) at z0, with chart swaps at infinity."""
    if X.is_constant():
        raise ValueError("local degree of a constant map")
    if z0.is_infinity:
        S = compose(X, RationalFunction(Polynomial([1]), Polynomial([0, 1])))
        at = ZERO
    else:
        S = compose(X, RationalFunction(Polynomial([z0.value, ONE])))
        at = ZERO
    v = S.evaluate(PointP1(at))
    if v.is_infinity:
        G = S.reciprocal()
    else:
        G = S - RationalFunction.constant(v.value)
    return G.num.trailing_order()


@dataclass(frozen=True)
class FixedPointRecord:
    map: RationalFunction
    point: PointP1
    multiplier: ExactScalar
    repelling: bool
    local_notes: str = ""

    def to_json(self) -> dict:
        return {
            "point": str(self.point),
            "multiplier": str(self.multiplier),
            "repelling": self.repelling,
            "local_notes": self.local_notes,
        }


@dataclass
class FixedPointScan:
    """Fixed points found over the field plus any unresolved factor."""

    records: list[FixedPointRecord]
    unresolved: list[Polynomial] = dc_field(default_factory=list)

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def __getitem__(self, k):
        return self.records[k]

    def point_record(self, p: PointP1):
        for rec in self.records:
            if rec.point == p:
                return rec
        return None


def fixed_points(A: RationalFunction, field: Field = QQ) -> FixedPointScan:
    """All fixed points with coordinates in the field, with exact multipliers.

    Points that exist only outside the field are surfaced as unresolved
    residual factors of the fixed-point polynomial.
    """
    if A.degree() < 1:
        raise ValueError("fixed points need a nonconstant map")
    F = A.num - Polynomial([0, 1]) * A.den
    records = []
    unresolved: list[Polynomial] = []
    if F.is_zero():
        raise ValueError("the identity map fixes every point")
    roots, residuals = field_roots(F, field)
    unresolved.extend(residuals)
    deriv = A.derivative()
    for z, mult in roots:
        lam = deriv.evaluate_finite(z)
        notes = "" if mult == 1 else f"fixed-point multiplicity {mult}"
        records.append(
            FixedPointRecord(A, PointP1(z), lam, lam.norm2() > 1, notes)
        )
    if A.num.degree() > A.den.degree():
        lam = multiplier_at(A, INF)
        notes = "multiplier computed in the 1/z chart"
        if lam.is_zero():
            notes += "; superattracting"
        records.append(FixedPointRecord(A, INF, lam, lam.norm2() > 1, notes))
    records.sort(key=lambda r: r.point.sort_key())
    return FixedPointScan(records, unresolved)


def critical_points(X: RationalFunction, field: Field = QQ):
    """Points of local degree > 1 over the field, plus unresolved factors."""
    if X.is_constant():
        raise ValueError("critical points of a constant map")
    W = X.num.derivative() * X.den - X.num * X.den.derivative()
    points: list[PointP1] = []
    unresolved: list[Polynomial] = []
    if not W.is_zero():
        roots, residuals = field_roots(W, field)
        unresolved.extend(residuals)
        points.extend(PointP1(z) for z, _ in roots)
    if local_degree(X, INF) > 1:
        points.append(INF)
    return points, unresolved


def preimages(f: RationalFunction, c: PointP1, field: Field = QQ):
    """f^{-1}(c) over the field with multiplicities, plus unresolved factors."""
    if f.is_constant():
        raise ValueError("preimages of a constant map")
    if c.is_infinity:
        G = f.den
        inf_mult = f.num.degree() - f.den.degree()
    else:
        G = f.num - f.den.scale(c.value)
        inf_mult = f.degree() - G.degree()
    points: list[tuple[PointP1, int]] = []
    unresolved: list[Polynomial] = []
    if not G.is_zero():
        roots, residuals = field_roots(G, field)
        unresolved.extend(residuals)
        points.extend((PointP1(z), m) for z, m in roots)
    if inf_mult > 0:
        points.append((INF, inf_mult))
    return points, unresolved
