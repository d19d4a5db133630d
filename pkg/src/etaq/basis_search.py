"""Enumeration of holomorphic eta-quotients in M_k(Gamma0(N), chi).

Rather than walking the exponent box |r_delta| <= r_max directly, the search
runs over cusp orders.  For an eta-quotient of level N the vector

    v_d = sum_delta gcd(d, delta)^2 * (N / delta) * r_delta      (d | N)

is 24 gcd(d, N/d) d times the order at the cusps of denominator d, the map
r -> v is injective, and the valence formula fixes a positive weighted sum of
the v_d in terms of the weight.  Holomorphic quotients are therefore the
lattice points of a simplex, which a lower-triangular lattice basis lets us
walk coordinate by coordinate.  Ligozat's two congruences are linear
conditions mod 24 on r, so they are built into the lattice before the walk.  The search is complete for every weight; the
exponent cap only filters the output.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .arith import coprime, divisors, euler_phi, kronecker
from .errors import InsufficientPrecision
from .etacore import (
    EtaQuotient,
    eq_character,
    eq_weight,
    eta_quotient_expand,
    ligozat_check,
)
from .linalg import RowSpace
from .spaces import index_gamma0, sturm_bound

DEFAULT_R_MAX = 24


@dataclass(frozen=True)
class SearchBounds:
    r_max: int = DEFAULT_R_MAX
    max_results: int = 100_000

    def __post_init__(self):
        if self.r_max < 1:
            raise ValueError("r_max must be at least 1")
        if self.max_results < 1:
            raise ValueError("max_results must be at least 1")


@dataclass
class Enumeration:
    quotients: list = field(default_factory=list)
    complete: bool = True
    # holomorphic quotients of the right weight dropped only by r_max
    excluded_by_r_max: int = 0


def cusp_matrix(n):
    """Integer matrix A with (A r)_d = 24 gcd(d, n/d) d * ord_d(r)."""
    ds = divisors(n)
    return [[gcd(d, delta) ** 2 * (n // delta) for delta in ds] for d in ds]


def valence_weights(n):
    """Positive integers w_d and the scale L with sum_d w_d v_d = L * k * index / 12."""
    ds = divisors(n)
    scale = lcm(*(24 * gcd(d, n // d) * d for d in ds))
    w = [scale * euler_phi(gcd(d, n // d)) // (24 * gcd(d, n // d) * d) for d in ds]
    return w, scale


def column_echelon(a):
    """Unimodular column operations putting ``a`` (m x n) in lower column-echelon form.

    Returns (B, U, rank) with B = a U.  The first ``rank`` columns of B are
    nonzero, each with a positive leading entry strictly below the previous
    one; the trailing columns of U span the integer kernel of ``a``.
    """
    m, n = len(a), len(a[0])
    b = [row[:] for row in a]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(i, j, x, y, z, w):
        # (col_i, col_j) <- (x col_i + y col_j, z col_i + w col_j)
        for mat in (b, u):
            for row in mat:
                ci, cj = row[i], row[j]
                row[i], row[j] = x * ci + y * cj, z * ci + w * cj

    c = 0
    for i in range(m):
        if c == n:
            break
        for j in range(c + 1, n):
            if b[i][j] == 0:
                continue
            p, q = b[i][c], b[i][j]
            g, s, t = _ext_gcd(p, q)
            # [[s, -q/g], [t, p/g]] has determinant 1
            colop(c, j, s, t, -q // g, p // g)
        if b[i][c] == 0:
            continue
        if b[i][c] < 0:
            for mat in (b, u):
                for row in mat:
                    row[c] = -row[c]
        c += 1
    return b, u, c


def _ext_gcd(a, b):
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def ligozat_lattice(n):
    """Basis (as columns) of the exponent vectors satisfying both of Ligozat's congruences."""
    ds = divisors(n)
    m = len(ds)
    cond = [list(ds) + [-24, 0], [n // d for d in ds] + [0, -24]]
    _, u, rank = column_echelon(cond)
    return [row[rank:] for row in u[:m]]


def _matmul(x, y):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*y)] for row in x]


def _weight_slice(g, k):
    """Affine parametrisation p + K y of {r in span(g) : sum(r) = 2k}.

    ``g`` is a lattice basis given as columns.  Returns (p, K) with p a vector
    and K a list of columns, or None when no lattice point has weight k.
    """
    sums = [[sum(col) for col in zip(*g)]]
    _, u, rank = column_echelon(sums)
    if rank == 0:
        return None
    lead = _matmul(sums, [[row[0]] for row in u])[0][0]
    if (2 * k) % lead:
        return None
    y0 = [row[0] * (2 * k // lead) for row in u]
    p = [sum(x * y for x, y in zip(row, y0)) for row in g]
    kernel = _matmul(g, [row[1:] for row in u])
    return p, kernel


def holomorphic_exponent_vectors(n, k, order=None):
    """Iterate over the exponent vectors (over divisors of n) of every weight-k
    eta-quotient that satisfies Ligozat's congruences and has non-negative
    order at all cusps.  The iteration order is deterministic.
    """
    ds = divisors(n)
    m = len(ds)
    sliced = _weight_slice(ligozat_lattice(n), k)
    if sliced is None:
        return iter(())
    p, kernel = sliced
    a = cusp_matrix(n)
    w, scale = valence_weights(n)
    if order is None:
        # cusps with small valence weight first prune noticeably better
        order = sorted(range(m), key=lambda i: (w[i], i))
    a = [a[i] for i in order]
    w = [w[i] for i in order]
    v0 = [sum(x * y for x, y in zip(row, p)) for row in a]
    b, u, rank = column_echelon(_matmul(a, kernel))
    if rank != m - 1:
        raise ArithmeticError("cusp matrix is singular")
    to_r = _matmul(kernel, u)
    target = scale * k * index_gamma0(n)
    if target % 12:
        return iter(())
    target //= 12

    # pivot row of each free coordinate; the rows in between are determined
    pivots = [next(r for r in range(m) if b[r][c]) for c in range(m - 1)]
    bounds = pivots[1:] + [m]
    z = [0] * (m - 1)

    def walk(c, vals, used):
        row = pivots[c]
        step = b[row][c]
        base = vals[row]
        lo = -(base // step)  # ceil(-base / step)
        hi = ((target - used) // w[row] - base) // step
        col = [b[r][c] for r in range(m)]
        for zc in range(lo, hi + 1):
            z[c] = zc
            nxt = [vals[r] + col[r] * zc if r >= row else vals[r] for r in range(m)]
            spent = used
            ok = True
            for r in range(row, bounds[c]):
                if nxt[r] < 0:
                    ok = False
                    break
                spent += w[r] * nxt[r]
            if not ok or spent > target:
                continue
            if c == m - 2:
                if spent == target:
                    yield tuple(
                        pi + sum(t[j] * z[j] for j in range(m - 1)) for pi, t in zip(p, to_r)
                    )
            else:
                yield from walk(c + 1, nxt, spent)

    if m == 1:
        # level 1: the only free parameter is fixed by the weight
        return iter([tuple(p)] if all(x >= 0 for x in v0) else [])
    for r in range(pivots[0]):
        if v0[r] < 0:
            return iter(())
    return walk(0, v0, sum(w[r] * v0[r] for r in range(pivots[0])))


def _character_matches(f, discriminant, n, limit=100):
    desc = eq_character(f, n)
    return all(
        desc.chi(d) == kronecker(discriminant, d)
        for d in range(1, limit + 1)
        if coprime(d, 24 * n)
    )


def enumerate_eta_quotients(n, k, bounds=None, character_discriminant=1):
    """Holomorphic eta-quotients of level n in M_k(Gamma0(n), chi).

    Returns an :class:`Enumeration` sorted lexicographically by exponent
    vector over the sorted divisors of n.  ``complete`` is False when
    ``max_results`` stopped the search early or ``r_max`` excluded a solution.
    """
    bounds = bounds or SearchBounds()
    if k < 1:
        raise ValueError("weight must be at least 1")
    ds = divisors(n)
    result = Enumeration()
    found = []
    for vec in holomorphic_exponent_vectors(n, k):
        f = EtaQuotient.make(n, dict(zip(ds, vec)))
        if not ligozat_check(f, n).passed:
            continue
        if not _character_matches(f, character_discriminant, n):
            continue
        if max(map(abs, vec), default=0) > bounds.r_max:
            result.excluded_by_r_max += 1
            continue
        if len(found) == bounds.max_results:
            result.complete = False
            break
        found.append((vec, f))
    found.sort(key=lambda item: item[0])
    if result.excluded_by_r_max:
        result.complete = False
    result.quotients = [f for _, f in found]
    return result


def prune_to_rank_basis(candidates, precision=None):
    """Greedy maximal independent subset, by exact rank on sturm_bound + 1 coefficients."""
    if not candidates:
        return []
    levels = {f.level for f in candidates}
    weights = {eq_weight(f) for f in candidates}
    if len(weights) != 1:
        raise ValueError("candidates must share one weight")
    level = lcm(*levels)
    k = weights.pop()
    if k.denominator != 1:
        raise ValueError("half-integral weight is not supported")
    need = sturm_bound(level, int(k)) + 1
    if precision is None:
        precision = need
    if precision < need:
        raise InsufficientPrecision(f"precision {precision} below sturm_bound + 1 = {need}")
    space = RowSpace(need)
    chosen = []
    for f in candidates:
        series = eta_quotient_expand(f, need)
        if series.offset24 % 24:
            raise ValueError(f"{f} has a non-integral leading exponent")
        if space.add(series.list(0, need)):
            chosen.append(f)
    return chosen
