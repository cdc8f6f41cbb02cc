"""Algebraic-dependency certificates between truncated series.

The detector builds the exact matrix whose columns are truncations of
s1^i * s2^j, takes a nullspace relation of minimal graded-lex bidegree, and
re-verifies it at a strictly higher order.  A full-rank matrix yields an
explicit NoRelationUpTo certificate: truncation evidence, not a proof of
transcendence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bipoly import (
    BivariatePolynomial,
    content_y,
    prem_y,
    primitive_part_y,
    resultant_t,
    squarefree_part,
)
from .errors import (
    DegenerateParametrization,
    InconsistentDegrees,
    InsufficientOrder,
    ParamMismatch,
)
from .linalg import ExactMatrix, nullspace
from .poly import Polynomial
from .ratfunc import RationalFunction, compose
from .scalars import ExactScalar, ONE, ZERO
from .series import BoettcherSeries, TruncatedPowerSeries, series_substitute_power

VERIFICATION_MARGIN = 10


@dataclass
class DependencyCertificate:
    verdict: str  # "Relation" or "NoRelationUpTo"
    bidegree: tuple[int, int]
    order: int
    verification_order: int
    relation: BivariatePolynomial | None = None
    scale: ExactScalar | None = None
    nullity: int = 0

    @property
    def found(self) -> bool:
        return self.verdict == "Relation"

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "bidegree": [str(self.bidegree[0]), str(self.bidegree[1])],
            "order": str(self.order),
            "verification_order": str(self.verification_order),
            "relation": None,
        }
        if self.relation is not None:
            out["relation"] = {"monomials": self.relation.json_monomials()}
            out["scale"] = str(self.scale if self.scale is not None else ONE)
            out["nullity"] = str(self.nullity)
        return out


def _monomial_grid(m: int, n: int):
    out = [(i, j) for i in range(m + 1) for j in range(n + 1)]
    out.sort(key=lambda ij: (ij[0] + ij[1], ij[1], ij[0]))
    return out


def _power_columns(s1: TruncatedPowerSeries, s2: TruncatedPowerSeries, m, n):
    p1 = [_one_series(s1.order)]
    for _ in range(m):
        p1.append(p1[-1] * s1)
    p2 = [_one_series(s2.order)]
    for _ in range(n):
        p2.append(p2[-1] * s2)
    return {
        (i, j): (p1[i] * p2[j]).coeffs
        for i in range(m + 1)
        for j in range(n + 1)
    }


def _one_series(order: int) -> TruncatedPowerSeries:
    return TruncatedPowerSeries([ONE] + [ZERO] * order)


def _detect(columns, m, n, N, NV):
    """Minimal graded-lex relation among the columns, or None on full rank.

    Raises InsufficientOrder when every candidate relation fails the
    higher-order re-verification, which means N cannot separate truncation
    artifacts from exact identities.
    """
    grid = _monomial_grid(m, n)
    full = ExactMatrix(
        [[columns[ij][k] for ij in grid] for k in range(N + 1)]
    )
    if not nullspace(full):
        return None
    bidegrees = sorted(
        {(a, b) for a in range(m + 1) for b in range(n + 1)},
        key=lambda ab: (ab[0] + ab[1], ab[1], ab[0]),
    )
    for mi, ni in bidegrees:
        sub = _monomial_grid(mi, ni)
        mat = ExactMatrix([[columns[ij][k] for ij in sub] for k in range(N + 1)])
        basis = nullspace(mat)
        if not basis:
            continue
        rel = BivariatePolynomial(
            {sub[t]: basis[0][t] for t in range(len(sub))}
        ).normalized()
        if _relation_vanishes(rel, columns, NV):
            return rel, len(basis), (mi, ni)
    raise InsufficientOrder(
        f"candidate relations at order {N} fail re-verification at {NV}; "
        "increase the truncation order"
    )


def _relation_vanishes(rel: BivariatePolynomial, columns, NV: int) -> bool:
    for k in range(NV + 1):
        acc = ZERO
        for ij, c in rel.terms.items():
            acc = acc + c * columns[ij][k]
        if not acc.is_zero():
            return False
    return True


def find_relation(
    s1: TruncatedPowerSeries,
    s2: TruncatedPowerSeries,
    m: int,
    n: int,
    N: int,
    *,
    scales=None,
) -> DependencyCertificate:
    """Detect an algebraic relation f(s1, s2) = 0 of bidegree at most (m, n).

    Constraints come from series orders 0..N; a found relation is re-verified
    through order N + 10 (clamped to the available orders).  The optional
    scales list searches rescalings s2(c z), since functional-equation data
    only pins linearizing series up to argument scale; the default is c = 1
    only.
    """
    if m < 0 or n < 0 or (m, n) == (0, 0):
        raise ValueError("bidegree bound must be nonnegative and nonzero")
    if N < (m + 1) * (n + 1):
        raise InsufficientOrder(
            f"order {N} below (m+1)(n+1) = {(m + 1) * (n + 1)}"
        )
    if s1.order < N or s2.order < N:
        raise InsufficientOrder(
            f"series order {min(s1.order, s2.order)} below requested order {N}"
        )
    NV = min(N + VERIFICATION_MARGIN, s1.order, s2.order)
    scale_list = [ONE]
    if scales:
        scale_list = [
            c if isinstance(c, ExactScalar) else ExactScalar(c) for c in scales
        ]
    for scale in scale_list:
        s2s = s2 if scale == ONE else s2.argument_scale(scale)
        columns = _power_columns(s1.truncate(NV), s2s.truncate(NV), m, n)
        found = _detect(columns, m, n, N, NV)
        if found is not None:
            rel, nullity, _ = found
            return DependencyCertificate(
                "Relation", (m, n), N, NV, rel, scale, nullity
            )
    return DependencyCertificate("NoRelationUpTo", (m, n), N, NV)


def find_relation_boettcher(
    b1: BoettcherSeries,
    d1: int,
    b2: BoettcherSeries,
    d2: int,
    m: int,
    n: int,
    N: int,
) -> DependencyCertificate:
    """Relation detection for B1(z^d1) against B2(z^d2).

    Laurent columns are normalized onto a power-series grid in u = 1/z by
    multiplying with a common power of u, then the ordinary detector runs.
    """
    if m < 0 or n < 0 or (m, n) == (0, 0):
        raise ValueError("bidegree bound must be nonnegative and nonzero")
    if d1 < 1 or d2 < 1:
        raise ValueError("power substitutions need d >= 1")
    if N < (m + 1) * (n + 1):
        raise InsufficientOrder(
            f"order {N} below (m+1)(n+1) = {(m + 1) * (n + 1)}"
        )
    NV = N + VERIFICATION_MARGIN
    phi1 = series_substitute_power(b1.to_phi(), d1)
    phi2 = series_substitute_power(b2.to_phi(), d2)
    if phi1.order < NV or phi2.order < NV:
        raise InsufficientOrder(
            "Boettcher series order too small for the requested detection order"
        )
    phi1, phi2 = phi1.truncate(NV), phi2.truncate(NV)
    p1 = [_one_series(NV)]
    for _ in range(m):
        p1.append(p1[-1] * phi1)
    p2 = [_one_series(NV)]
    for _ in range(n):
        p2.append(p2[-1] * phi2)
    tmax = m * d1 + n * d2
    columns = {}
    for i in range(m + 1):
        for j in range(n + 1):
            shift = tmax - (i * d1 + j * d2)
            prod = p1[i] * p2[j]
            coeffs = [ZERO] * shift + list(prod.coeffs)
            columns[(i, j)] = tuple(coeffs[: NV + 1])
    found = _detect(columns, m, n, N, NV)
    if found is not None:
        rel, nullity, _ = found
        return DependencyCertificate("Relation", (m, n), N, NV, rel, ONE, nullity)
    return DependencyCertificate("NoRelationUpTo", (m, n), N, NV)


# -- implicitization and invariant curves ------------------------------------


def implicitize(X1: RationalFunction, X2: RationalFunction) -> BivariatePolynomial:
    """Irreducible-curve equation for the image of t -> (X1(t), X2(t)).

    Resultant in t of num(X1) - x den(X1) and num(X2) - y den(X2), with
    extraneous content removed and repeated factors stripped; the output
    vanishes identically after substituting the parametrization.
    """
    if X1.is_constant() or X2.is_constant():
        raise DegenerateParametrization("both coordinates must be nonconstant")
    P1 = _pencil(X1, axis=0)
    P2 = _pencil(X2, axis=1)
    R = resultant_t(P1, P2)
    if R.is_zero():
        raise DegenerateParametrization("eliminant vanished identically")
    R = _strip_contents(R)
    f = squarefree_part(R)
    if f.is_constant():
        raise DegenerateParametrization("eliminant degenerated to a constant")
    if not _vanishes_on_param(f, X1, X2):
        raise DegenerateParametrization(
            "implicitization failed to vanish on the parametrization"
        )
    return f


def _pencil(X: RationalFunction, axis: int):
    """t-polynomial num(t) - w * den(t) with w the x or y variable."""
    deg = max(X.num.degree(), X.den.degree())
    out = []
    for k in range(deg + 1):
        term = BivariatePolynomial({(0, 0): X.num.coeff(k)})
        d = X.den.coeff(k)
        if not d.is_zero():
            mono = (1, 0) if axis == 0 else (0, 1)
            term = term - BivariatePolynomial({mono: d})
        out.append(term)
    return out


def _strip_contents(f: BivariatePolynomial) -> BivariatePolynomial:
    cy = content_y(f)
    if cy.degree() > 0:
        f = BivariatePolynomial.from_y_coeffs([p // cy for p in f.y_coeffs()])
    cx = Polynomial()
    for p in f.x_coeffs():
        cx = cx.gcd(p)
        if cx.degree() == 0:
            break
    if cx.degree() > 0:
        f = BivariatePolynomial.from_x_coeffs([p // cx for p in f.x_coeffs()])
    return f


def _vanishes_on_param(
    f: BivariatePolynomial, X1: RationalFunction, X2: RationalFunction
) -> bool:
    m, n = f.deg_x(), f.deg_y()
    pows1 = [RationalFunction(Polynomial([1]))]
    for _ in range(m):
        pows1.append(pows1[-1] * X1)
    pows2 = [RationalFunction(Polynomial([1]))]
    for _ in range(n):
        pows2.append(pows2[-1] * X2)
    acc = RationalFunction(Polynomial())
    for (i, j), c in f.terms.items():
        acc = acc + RationalFunction.constant(c) * pows1[i] * pows2[j]
    return acc.num.is_zero()


def is_generically_one_to_one(
    X1: RationalFunction, X2: RationalFunction, f: BivariatePolynomial
):
    """Fiber degree of the parametrization onto the curve f = 0.

    Returns (is_one_to_one, d) where d = deg X1 / deg_y f = deg X2 / deg_x f;
    a mismatch between the two ratios signals an implicitization content bug.
    """
    dy, dx = f.deg_y(), f.deg_x()
    if dy < 1 or dx < 1:
        raise InconsistentDegrees("curve must involve both variables")
    if X1.degree() % dy or X2.degree() % dx:
        raise InconsistentDegrees(
            f"degrees ({X1.degree()}, {X2.degree()}) not divisible by "
            f"curve bidegree ({dy}, {dx})"
        )
    d1 = X1.degree() // dy
    d2 = X2.degree() // dx
    if d1 != d2:
        raise InconsistentDegrees(f"fiber degrees disagree: {d1} vs {d2}")
    return d1 == 1, d1


def substitute_maps(
    f: BivariatePolynomial, A1: RationalFunction, A2: RationalFunction
) -> BivariatePolynomial:
    """Numerator of f(A1(x), A2(y)): denominators cleared exactly."""
    m, n = f.deg_x(), f.deg_y()
    n1 = BivariatePolynomial.from_x_polynomial(A1.num)
    d1 = BivariatePolynomial.from_x_polynomial(A1.den)
    n2 = BivariatePolynomial.from_y_polynomial(A2.num)
    d2 = BivariatePolynomial.from_y_polynomial(A2.den)
    pn1 = _pow_list(n1, m)
    pd1 = _pow_list(d1, m)
    pn2 = _pow_list(n2, n)
    pd2 = _pow_list(d2, n)
    out = BivariatePolynomial.zero()
    for (i, j), c in f.terms.items():
        out = out + (pn1[i] * pd1[m - i] * pn2[j] * pd2[n - j]).scale(c)
    return out


def _pow_list(b: BivariatePolynomial, top: int):
    out = [BivariatePolynomial.one()]
    for _ in range(top):
        out.append(out[-1] * b)
    return out


def verify_invariant_curve(
    f: BivariatePolynomial,
    A1: RationalFunction,
    A2: RationalFunction,
    param=None,
) -> bool:
    """Check that the curve f = 0 maps into itself under (A1, A2).

    With a parametrization, f(A1(X1(t)), A2(X2(t))) must vanish identically;
    without one, f must divide the cleared numerator of f(A1(x), A2(y)) in
    Q[x, y], with content in x tracked explicitly.  This is the inclusion
    half of invariance; surjectivity holds automatically for nonconstant
    maps on an irreducible curve.
    """
    if f.is_zero():
        raise ValueError("invariant-curve check needs a nonzero curve")
    if param is not None:
        X1, X2 = param
        if not _vanishes_on_param(f, X1, X2):
            raise ParamMismatch("the supplied map pair does not parametrize f")
        return _vanishes_on_param(f, compose(A1, X1), compose(A2, X2))
    F = substitute_maps(f, A1, A2)
    return _divides_with_content(f, F)


def _divides_with_content(f: BivariatePolynomial, F: BivariatePolynomial) -> bool:
    if F.is_zero():
        return True
    if f.deg_y() == 0:
        fx = f.y_coeffs()[0]
        if fx.degree() == 0:
            return True
        return all((p % fx).is_zero() for p in F.y_coeffs())
    c = content_y(f)
    fp = primitive_part_y(f)
    if not prem_y(F, fp).is_zero():
        return False
    quotient = F.exact_div(fp)
    if c.degree() <= 0:
        return True
    return all((p % c).is_zero() for p in quotient.y_coeffs())
