"""Exact linear algebra over the rationals.

Elimination is fraction-free (Bareiss): every row is first scaled to
integers, and each elimination step divides exactly by the previous pivot,
so intermediate entries stay integers of controlled size.  Pivots are
chosen as the first nonzero entry in the column, which keeps results
deterministic.
"""

from fractions import Fraction
from math import lcm

from .errors import NoSolution, Underdetermined


def _integer_row(row):
    den = 1
    for x in row:
        x = Fraction(x)
        if x.denominator != 1:
            den = lcm(den, x.denominator)
    return [int(Fraction(x) * den) for x in row]


def bareiss_echelon(rows, ncols=None):
    """Row-echelon form of an integer-scaled copy of ``rows``.

    Returns ``(matrix, pivots)`` where ``pivots`` lists ``(row, col)`` pairs.
    The matrix entries below each pivot are zero; entries are integers.
    """
    m = [_integer_row(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, ncols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        # rows above r stay as they are; only the echelon shape is needed
        pivots.append((r, c))
        prev = p
        r += 1
    return m, pivots


def rank(rows):
    _, pivots = bareiss_echelon(list(rows))
    return len(pivots)


def solve(columns, rhs):
    """Solve ``sum_j x_j * columns[j] == rhs`` exactly.

    ``columns`` is a list of equal-length vectors.  Returns the unique
    solution as a list of Fractions.

    Raises NoSolution if the system is inconsistent and Underdetermined if
    it is consistent but the columns are dependent.
    """
    n = len(columns)
    m = len(rhs)
    if any(len(col) != m for col in columns):
        raise ValueError("all columns must have the length of the right-hand side")
    aug = [[columns[j][i] for j in range(n)] + [rhs[i]] for i in range(m)]
    ech, pivots = bareiss_echelon(aug, n + 1)
    if any(c == n for _, c in pivots):
        raise NoSolution("right-hand side is not in the column span")
    if len(pivots) < n:
        raise Underdetermined(n - len(pivots))
    x = [Fraction(0)] * n
    for r, c in reversed(pivots):
        row = ech[r]
        acc = Fraction(row[n])
        for j in range(c + 1, n):
            if row[j]:
                acc -= row[j] * x[j]
        x[c] = acc / row[c]
    return x


def kernel_dimension(columns):
    return len(columns) - rank([list(r) for r in zip(*columns)]) if columns else 0


class RowSpace:
    """Incrementally built span of rational vectors, for greedy basis selection."""

    def __init__(self, length):
        self.length = length
        self._rows = []  # (pivot column, row with 1 at the pivot)

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec):
        v = [Fraction(x) for x in vec]
        if len(v) != self.length:
            raise ValueError("vector length mismatch")
        for p, row in self._rows:
            f = v[p]
            if f:
                for j in range(p, self.length):
                    if row[j]:
                        v[j] -= f * row[j]
        return v

    def add(self, vec):
        """Add ``vec`` if it is independent of the span; return whether it was."""
        v = self.reduce(vec)
        p = next((j for j, x in enumerate(v) if x), None)
        if p is None:
            return False
        lead = v[p]
        self._rows.append((p, [x / lead for x in v]))
        return True
