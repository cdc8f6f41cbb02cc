"""Bivariate polynomials over exact scalars.

Carries the relation certificates f(x, y) and the elimination machinery:
pseudo-division, primitive-PRS gcd, squarefree part, and the resultant via
the subresultant polynomial remainder sequence.
"""

from __future__ import annotations

from .poly import Polynomial
from .scalars import ExactScalar, ONE, ZERO


def _key(ij):
    # graded-lex with x ahead of y: ascending total degree, then higher
    # x-power first within a degree
    i, j = ij
    return (i + j, j, i)


class BivariatePolynomial:
    """Sparse polynomial in x and y with ExactScalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        data = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for (i, j), c in items:
            if not isinstance(c, ExactScalar):
                c = ExactScalar(c)
            if c.is_zero():
                continue
            if (i, j) in data:
                c = data[(i, j)] + c
                if c.is_zero():
                    del data[(i, j)]
                    continue
            data[(i, j)] = c
        object.__setattr__(self, "terms", data)

    def __setattr__(self, name, v):
        raise AttributeError("BivariatePolynomial is immutable by convention")

    @staticmethod
    def zero() -> "BivariatePolynomial":
        return BivariatePolynomial()

    @staticmethod
    def one() -> "BivariatePolynomial":
        return BivariatePolynomial({(0, 0): ONE})

    @staticmethod
    def monomial(i: int, j: int, c=ONE) -> "BivariatePolynomial":
        return BivariatePolynomial({(i, j): c})

    @staticmethod
    def from_x_polynomial(p: Polynomial) -> "BivariatePolynomial":
        return BivariatePolynomial({(k, 0): c for k, c in enumerate(p.coeffs)})

    @staticmethod
    def from_y_polynomial(p: Polynomial) -> "BivariatePolynomial":
        return BivariatePolynomial({(0, k): c for k, c in enumerate(p.coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(ij == (0, 0) for ij in self.terms)

    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def bidegree(self) -> tuple[int, int]:
        return (self.deg_x(), self.deg_y())

    def coeff(self, i: int, j: int) -> ExactScalar:
        return self.terms.get((i, j), ZERO)

    def __eq__(self, other):
        return (
            isinstance(other, BivariatePolynomial) and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for ij, c in other.terms.items():
            s = out.get(ij, ZERO) + c
            if s.is_zero():
                out.pop(ij, None)
            else:
                out[ij] = s
        return BivariatePolynomial(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return BivariatePolynomial({ij: -c for ij, c in self.terms.items()})

    def scale(self, c) -> "BivariatePolynomial":
        if not isinstance(c, ExactScalar):
            c = ExactScalar(c)
        return BivariatePolynomial({ij: a * c for ij, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ExactScalar):
            return self.scale(other)
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                ij = (i1 + i2, j1 + j2)
                s = out.get(ij, ZERO) + a * b
                if s.is_zero():
                    out.pop(ij, None)
                else:
                    out[ij] = s
        return BivariatePolynomial(out)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = BivariatePolynomial.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def monomials(self):
        """Monomials in ascending graded-lex order."""
        return sorted(self.terms, key=_key)

    def normalized(self) -> "BivariatePolynomial":
        """Content normalization: first graded-lex coefficient becomes 1."""
        if self.is_zero():
            return self
        lead = self.terms[self.monomials()[0]]
        return self.scale(ONE / lead)

    def evaluate(self, x: ExactScalar, y: ExactScalar) -> ExactScalar:
        out = ZERO
        for (i, j), c in self.terms.items():
            out = out + c * x**i * y**j
        return out

    def y_coeffs(self) -> list[Polynomial]:
        """Coefficients as a polynomial in y over Q[x], ascending in y."""
        dy = self.deg_y()
        cols = [[ZERO] * (self.deg_x() + 1) for _ in range(dy + 1)]
        for (i, j), c in self.terms.items():
            cols[j][i] = c
        return [Polynomial(col) for col in cols]

    def x_coeffs(self) -> list[Polynomial]:
        dx = self.deg_x()
        cols = [[ZERO] * (self.deg_y() + 1) for _ in range(dx + 1)]
        for (i, j), c in self.terms.items():
            cols[i][j] = c
        return [Polynomial(col) for col in cols]

    @staticmethod
    def from_y_coeffs(cs: list[Polynomial]) -> "BivariatePolynomial":
        terms = {}
        for j, p in enumerate(cs):
            for i, c in enumerate(p.coeffs):
                if not c.is_zero():
                    terms[(i, j)] = c
        return BivariatePolynomial(terms)

    @staticmethod
    def from_x_coeffs(cs: list[Polynomial]) -> "BivariatePolynomial":
        terms = {}
        for i, p in enumerate(cs):
            for j, c in enumerate(p.coeffs):
                if not c.is_zero():
                    terms[(i, j)] = c
        return BivariatePolynomial(terms)

    def derivative_x(self) -> "BivariatePolynomial":
        return BivariatePolynomial(
            {(i - 1, j): c * i for (i, j), c in self.terms.items() if i > 0}
        )

    def derivative_y(self) -> "BivariatePolynomial":
        return BivariatePolynomial(
            {(i, j - 1): c * j for (i, j), c in self.terms.items() if j > 0}
        )

    def exact_div(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        """Exact quotient self / other; raises ValueError when inexact."""
        if other.is_zero():
            raise ZeroDivisionError("bivariate division by zero")
        if self.is_zero():
            return self
        num = self.y_coeffs()
        den = other.y_coeffs()
        dden = len(den) - 1
        q: list[Polynomial] = [Polynomial()] * (len(num) - len(den) + 1)
        if len(num) < len(den):
            raise ValueError("inexact bivariate division")
        rem = list(num)
        for k in range(len(q) - 1, -1, -1):
            top = rem[k + dden]
            if top.is_zero():
                continue
            qc, r = top.divmod(den[dden])
            if not r.is_zero():
                raise ValueError("inexact bivariate division")
            q[k] = qc
            for j, d in enumerate(den):
                rem[k + j] = rem[k + j] - qc * d
        if any(not r.is_zero() for r in rem):
            raise ValueError("inexact bivariate division")
        return BivariatePolynomial.from_y_coeffs(q)

    def json_monomials(self):
        return [[str(i), str(j), str(self.terms[(i, j)])] for i, j in self.monomials()]

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, j in self.monomials():
            c = self.terms[(i, j)]
            bits = []
            if i:
                bits.append("x" if i == 1 else f"x^{i}")
            if j:
                bits.append("y" if j == 1 else f"y^{j}")
            mono = "*".join(bits)
            if not mono:
                parts.append(str(c))
            elif c.is_one():
                parts.append(mono)
            elif c == ExactScalar(-1):
                parts.append(f"-{mono}")
            else:
                cs = str(c) if c.is_real() else f"({c})"
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"BivariatePolynomial({str(self)})"


# -- gcd machinery in y over Q[x] -------------------------------------------


def content_y(f: BivariatePolynomial) -> Polynomial:
    """Monic gcd in Q[x] of the y-coefficients."""
    out = Polynomial()
    for p in f.y_coeffs():
        out = out.gcd(p)
        if out.degree() == 0:
            break
    return out


def primitive_part_y(f: BivariatePolynomial) -> BivariatePolynomial:
    c = content_y(f)
    if c.degree() <= 0:
        return f
    return BivariatePolynomial.from_y_coeffs(
        [p // c for p in f.y_coeffs()]
    )


def prem_y(F: BivariatePolynomial, G: BivariatePolynomial) -> BivariatePolynomial:
    """Pseudo-remainder of F by G as polynomials in y over Q[x]."""
    dG = G.deg_y()
    if G.is_zero():
        raise ZeroDivisionError("pseudo-division by zero")
    lG = BivariatePolynomial.from_x_polynomial(G.y_coeffs()[dG])
    R = F
    e = max(F.deg_y() - dG + 1, 0)
    while not R.is_zero() and R.deg_y() >= dG:
        dR = R.deg_y()
        lR = BivariatePolynomial.from_x_polynomial(R.y_coeffs()[dR])
        shift = BivariatePolynomial.monomial(0, dR - dG)
        R = R * lG - G * lR * shift
        e -= 1
    for _ in range(e):
        R = R * lG
    return R


def gcd_bivariate(
    F: BivariatePolynomial, G: BivariatePolynomial
) -> BivariatePolynomial:
    """Greatest common divisor in Q[x, y], graded-lex normalized."""
    if F.is_zero():
        return G.normalized()
    if G.is_zero():
        return F.normalized()
    if F.deg_y() == 0 and G.deg_y() == 0:
        fx = F.y_coeffs()[0]
        gx = G.y_coeffs()[0]
        return BivariatePolynomial.from_x_polynomial(fx.gcd(gx)).normalized()
    if F.deg_y() == 0:
        g = content_y(G).gcd(F.y_coeffs()[0])
        return BivariatePolynomial.from_x_polynomial(g).normalized()
    if G.deg_y() == 0:
        return gcd_bivariate(G, F)
    cF, cG = content_y(F), content_y(G)
    A, B = primitive_part_y(F), primitive_part_y(G)
    if A.deg_y() < B.deg_y():
        A, B = B, A
    while True:
        R = prem_y(A, B)
        if R.is_zero():
            g = B
            break
        if R.deg_y() == 0:
            g = BivariatePolynomial.one()
            break
        A, B = B, primitive_part_y(R)
    g = primitive_part_y(g)
    cont = BivariatePolynomial.from_x_polynomial(cF.gcd(cG))
    return (g * cont).normalized()


def squarefree_part(f: BivariatePolynomial) -> BivariatePolynomial:
    """Product of the distinct irreducible factors of f, normalized."""
    if f.is_zero() or f.is_constant():
        return f.normalized() if not f.is_zero() else f
    g = gcd_bivariate(f, f.derivative_x())
    g = gcd_bivariate(g, f.derivative_y())
    if g.is_constant():
        return f.normalized()
    return f.exact_div(g).normalized()


# -- resultants of polynomials in t over Q[x, y] -----------------------------


def _t_trim(L):
    while L and L[-1].is_zero():
        L.pop()
    return L


def _t_deg(L):
    return len(L) - 1


def _t_scale(L, c: BivariatePolynomial):
    return _t_trim([a * c for a in L])


def _t_sub(A, B):
    n = max(len(A), len(B))
    zero = BivariatePolynomial.zero()
    out = []
    for k in range(n):
        a = A[k] if k < len(A) else zero
        b = B[k] if k < len(B) else zero
        out.append(a - b)
    return _t_trim(out)


def _t_prem(A, B):
    """Pseudo-remainder lc(B)^(dA-dB+1) * A mod B for t-polynomials."""
    dB = _t_deg(B)
    lB = B[dB]
    R = list(A)
    e = _t_deg(A) - dB + 1
    while R and _t_deg(R) >= dB:
        dR = _t_deg(R)
        lR = R[dR]
        shifted = [BivariatePolynomial.zero()] * (dR - dB) + list(B)
        R = _t_sub(_t_scale(R, lB), _t_scale(shifted, lR))
        e -= 1
    for _ in range(e):
        R = _t_scale(R, lB)
    return R


def resultant_t(A_coeffs, B_coeffs) -> BivariatePolynomial:
    """Resultant in t of two t-polynomials with coefficients in Q[x, y].

    Subresultant polynomial remainder sequence; all internal divisions are
    exact by the subresultant theory.
    """
    A = _t_trim(list(A_coeffs))
    B = _t_trim(list(B_coeffs))
    zero = BivariatePolynomial.zero()
    one = BivariatePolynomial.one()
    if not A or not B:
        return zero
    s = 1
    if _t_deg(A) < _t_deg(B):
        if (_t_deg(A) * _t_deg(B)) % 2 == 1:
            s = -s
        A, B = B, A
    if _t_deg(A) == 0:
        return one
    if _t_deg(B) == 0:
        out = B[0] ** _t_deg(A)
        return out if s == 1 else -out
    g = one
    h = one
    while True:
        dA, dB = _t_deg(A), _t_deg(B)
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R = _t_prem(A, B)
        if not R:
            return zero
        A = B
        divisor = g * h**delta
        B = [c.exact_div(divisor) for c in R]
        B = _t_trim(B)
        g = A[_t_deg(A)]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g**delta).exact_div(h ** (delta - 1))
        if _t_deg(B) == 0:
            dA = _t_deg(A)
            num = B[0] ** dA
            if dA >= 1:
                res = num.exact_div(h ** (dA - 1))
            else:
                res = num
            return res if s == 1 else -res
