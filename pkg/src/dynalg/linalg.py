"""Exact dense linear algebra over Q and Q(i): rank and nullspace.

Elimination is fraction-free (Bareiss) on denominator-cleared rows, with
pivots chosen by minimal bit-size to damp coefficient blowup.  Everything
is exact; there is no floating-point fallback here.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import ExactScalar, ONE


class ExactMatrix:
    """Immutable rectangular matrix of ExactScalar entries."""

    def __init__(self, entries):
        rows = [list(r) for r in entries]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("matrix rows must have equal length")
        self.entries = tuple(tuple(_as_scalar(x) for x in r) for r in rows)
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


def _as_scalar(x):
    if isinstance(x, ExactScalar):
        return x
    return ExactScalar(x)


def _cleared_rows(m: ExactMatrix):
    """Copy of the rows scaled to Gaussian-integer entries."""
    out = []
    for row in m.entries:
        lcm = 1
        for e in row:
            for d in (e.re.denominator, e.im.denominator):
                lcm = lcm * d // _gcd(lcm, d)
        out.append([e * lcm for e in row])
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _echelon(rows, cols):
    """Fraction-free forward elimination.

    Returns (rows, pivots) where pivots is a list of (row, col) in echelon
    order.  Divisions follow the Bareiss scheme and are exact.
    """
    pivots = []
    r = 0
    prev = ONE
    for c in range(cols):
        best = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                size = rows[i][c].bit_size()
                if best is None or size < best[1]:
                    best = (i, size)
        if best is None:
            continue
        i = best[0]
        rows[r], rows[i] = rows[i], rows[r]
        piv = rows[r][c]
        for k in range(r + 1, len(rows)):
            head = rows[k][c]
            if head.is_zero():
                # leaving the row unscaled keeps the echelon shape; any
                # non-Bareiss division later just produces exact fractions
                continue
            row_k, row_r = rows[k], rows[r]
            rows[k] = [
                (piv * row_k[j] - head * row_r[j]) / prev for j in range(cols)
            ]
        pivots.append((r, c))
        prev = piv
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: ExactMatrix) -> int:
    """Exact rank via fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = _echelon(_cleared_rows(m), m.cols)
    return len(pivots)


def nullspace(m: ExactMatrix) -> list[list[ExactScalar]]:
    """Basis of the right kernel; empty iff the matrix has full column rank.

    Basis vectors are canonicalized: integral entries with unit content and
    the first nonzero entry rotated positive.
    """
    if m.cols == 0:
        return []
    if m.rows == 0:
        rows, pivots = [], []
    else:
        rows, pivots = _echelon(_cleared_rows(m), m.cols)
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(m.cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [ExactScalar(0)] * m.cols
        vec[fc] = ONE
        # back-substitute through the echelon rows
        for (r, c) in reversed(pivots):
            s = ExactScalar(0)
            row = rows[r]
            for j in range(c + 1, m.cols):
                if not vec[j].is_zero() and not row[j].is_zero():
                    s = s + row[j] * vec[j]
            vec[c] = -s / row[c]
        basis.append(_canonical_vector(vec))
    return basis


def _canonical_vector(vec):
    lcm = 1
    for e in vec:
        for d in (e.re.denominator, e.im.denominator):
            lcm = lcm * d // _gcd(lcm, d)
    vec = [e * lcm for e in vec]
    content = 0
    for e in vec:
        content = _gcd(content, _gcd(abs(e.re.numerator), abs(e.im.numerator)))
    if content > 1:
        inv = Fraction(1, content)
        vec = [e * inv for e in vec]
    for e in vec:
        if not e.is_zero():
            # rotate the leading entry to re > 0 (then im >= 0)
            for u in (ONE, -ONE, ExactScalar(0, 1), ExactScalar(0, -1)):
                lead = e * u
                if lead.re > 0 or (lead.re == 0 and lead.im > 0):
                    return [x * u for x in vec]
    return vec
