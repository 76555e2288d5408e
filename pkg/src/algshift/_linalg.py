"""Exact linear algebra over the rationals on sparse rows.

Rows are dicts ``{column: value}`` with no zero entries.  Values may be
``int`` or ``Fraction``; everything is promoted to ``Fraction`` internally.
Pivots are always chosen at the smallest available column so that results
are reproducible.
"""

from fractions import Fraction
from math import gcd


def _axpy(row, scale, other):
    # row -= scale * other, in place
    for col, val in other.items():
        new = row.get(col, 0) - scale * val
        if new:
            row[col] = new
        else:
            row.pop(col, None)


class RowReducer:
    """Incremental reduced row echelon form.

    Rows are fed one at a time with :meth:`add`; the pivot rows stay fully
    reduced against each other after every insertion.
    """

    def __init__(self):
        self.pivots = {}  # pivot column -> normalized row (pivot entry 1)

    def reduce(self, row):
        row = {c: Fraction(v) for c, v in row.items() if v}
        for col in [c for c in row if c in self.pivots]:
            val = row.get(col)
            if val:
                _axpy(row, val, self.pivots[col])
        return row

    def add(self, row):
        """Insert ``row``; return the new pivot column or None if dependent."""
        row = self.reduce(row)
        if not row:
            return None
        col = min(row)
        lead = row[col]
        row = {c: v / lead for c, v in row.items()}
        for other in self.pivots.values():
            val = other.get(col)
            if val:
                _axpy(other, val, row)
        self.pivots[col] = row
        return col

    @property
    def rank(self):
        return len(self.pivots)


def nullspace(rows, ncols):
    """Basis of ``{x : A x = 0}`` for the sparse matrix ``rows``.

    One basis vector per free column, in increasing free-column order; the
    free column carries a 1 and the other free columns carry 0.
    """
    red = RowReducer()
    for r in rows:
        red.add(r)
    free = [j for j in range(ncols) if j not in red.pivots]
    basis = []
    for j in free:
        vec = [Fraction(0)] * ncols
        vec[j] = Fraction(1)
        for p, prow in red.pivots.items():
            v = prow.get(j)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def solve(rows, rhs, ncols):
    """One rational solution of ``A x = b`` or None if inconsistent.

    ``rhs`` maps row index to value (absent means 0).  Free variables are set
    to zero.
    """
    red = RowReducer()
    aug = ncols
    for i, r in enumerate(rows):
        row = dict(r)
        b = rhs.get(i, 0)
        if b:
            row[aug] = b
        red.add(row)
    if aug in red.pivots:
        return None
    x = [Fraction(0)] * ncols
    for p, prow in red.pivots.items():
        x[p] = prow.get(aug, Fraction(0))
    return x


def rank(rows):
    red = RowReducer()
    for r in rows:
        red.add(r)
    return red.rank


def clear_denominators(values):
    """Scale rationals to coprime integers (sign preserved).

    Returns the integer list and the positive scale factor used.
    """
    values = [Fraction(v) for v in values]
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in values]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        raise ValueError("cannot clear denominators of an all-zero vector")
    return [v // g for v in ints], Fraction(den, g)
