"""Eta-quotient identities: decomposition, Sturm-bound certificates, weight-zero
functions, the j-invariant, and the prime-level feasibility test.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .arith import coprime, divisors, kronecker, require_prime
from .basis_search import SearchBounds, enumerate_eta_quotients, prune_to_rank_basis
from .errors import InsufficientPrecision, NoSolution, ZeroSeries
from .etacore import (
    EtaQuotient,
    cusp_order,
    eq_character,
    eq_weight,
    eta_quotient_expand,
    ligozat_check,
)
from .linalg import solve
from .qseries import QSeries, qs_agree_to, qs_inv, qs_pow, qs_substitute
from .spaces import SpaceSpec, eisenstein_level1, sturm_bound


@dataclass(frozen=True)
class EtaSum:
    """A formal rational combination sum_i c_i * f_i of eta-quotients."""

    terms: tuple = ()

    @classmethod
    def of(cls, pairs):
        return cls(tuple((Fraction(c), f) for c, f in pairs))

    @property
    def level(self):
        return lcm(*(f.level for _, f in self.terms)) if self.terms else 1

    @property
    def quotients(self):
        return [f for _, f in self.terms]

    @property
    def coefficients(self):
        return [c for c, _ in self.terms]

    @property
    def weights(self):
        return [eq_weight(f) for _, f in self.terms]

    @property
    def is_homogeneous(self):
        return len(set(self.weights)) <= 1

    def expand(self, precision):
        """Sum of the expansions, known for q^0 ... q^(precision-1)."""
        total = QSeries.zero(24 * precision)
        for c, f in self.terms:
            if c:
                total = total + c * eta_quotient_expand(f, precision)
        return total.truncate_to(24 * precision)

    def to_list(self):
        return [{"coeff": str(c), "quotient": f.to_dict()} for c, f in self.terms]

    @classmethod
    def from_list(cls, items):
        return cls.of((Fraction(str(t["coeff"])), EtaQuotient.from_dict(t["quotient"])) for t in items)


VALID, INVALID, MALFORMED = "valid", "invalid", "malformed"


@dataclass
class Certificate:
    space: SpaceSpec
    target_name: str
    sum: EtaSum
    verified_bound: int
    matched_coefficients: int
    status: str
    detail: str = ""
    # 1-based index of the offending term (malformed) or exponent of the
    # first differing coefficient (invalid)
    mismatch_index: int = None
    term_index: int = None

    @property
    def valid(self):
        return self.status == VALID

    def to_dict(self):
        return {
            "space": self.space.to_dict(),
            "target": self.target_name,
            "terms": self.sum.to_list(),
            "verified_bound": self.verified_bound,
            "matched_coefficients": self.matched_coefficients,
            "status": self.status,
            "detail": self.detail,
            "term_index": self.term_index,
            "mismatch_index": self.mismatch_index,
        }


def _malformed(space, name, etasum, detail, term_index=None):
    return Certificate(space, name, etasum, -1, 0, MALFORMED, detail, term_index=term_index)


def _term_problem(f, space):
    """Reason a single term cannot live in ``space``, or None."""
    if space.level % f.level:
        return f"level {f.level} does not divide {space.level}"
    k = eq_weight(f)
    if k != space.weight:
        return f"weight {k} differs from the space weight {space.weight}"
    report = ligozat_check(f, space.level)
    if not (report.cond_delta and report.cond_N_over_delta):
        return "fails Ligozat's congruences"
    for d in divisors(space.level):
        if cusp_order(f, d, space.level) < 0:
            return f"has a pole at the cusps of denominator {d}"
    desc = eq_character(f, space.level)
    for d in range(1, 101):
        if coprime(d, 24 * space.level) and desc.chi(d) != kronecker(space.character, d):
            return f"character differs from ({space.character}/.)"
    return None


def certify_identity(space, target, etasum, n_coefficients=None, target_name="target"):
    """Check ``etasum == target`` in ``space`` through at least sturm_bound + 1 coefficients.

    Every term is validated first (weight, Ligozat, holomorphy, character);
    the weights are checked for all terms before anything else so that the
    reported offending term is the first inhomogeneous one.
    """
    if not etasum.terms:
        return _malformed(space, target_name, etasum, "empty sum")
    for i, (_, f) in enumerate(etasum.terms, 1):
        k = eq_weight(f)
        if k != space.weight:
            return _malformed(
                space, target_name, etasum, f"term {i}: weight {k} differs from the space weight {space.weight}", i
            )
    for i, (_, f) in enumerate(etasum.terms, 1):
        problem = _term_problem(f, space)
        if problem:
            return _malformed(space, target_name, etasum, f"term {i}: {problem}", i)
    need = sturm_bound(space.level, space.weight) + 1
    n = max(need, n_coefficients or 0)
    if target.end24 < 24 * n:
        return _malformed(space, target_name, etasum, f"target is known only below q^{Fraction(target.end24, 24)}")
    lhs = etasum.expand(n)
    for e in range(n):
        if lhs[e] != target[e]:
            return Certificate(
                space, target_name, etasum, n - 1, e, INVALID,
                f"coefficient of q^{e}: sum gives {lhs[e]}, target has {target[e]}",
                mismatch_index=e,
            )
    return Certificate(space, target_name, etasum, n - 1, n, VALID, f"agrees through q^{n - 1}; sturm bound {need - 1}")


def decompose_in_basis(target, basis, precision=None):
    """Exact coefficients x with target == sum x_i * basis_i on q^0 ... q^(precision-1).

    Raises NoSolution, Underdetermined or InsufficientPrecision.  A solution
    is re-checked by expanding the resulting EtaSum.
    """
    if not basis:
        raise NoSolution("empty basis")
    weights = {eq_weight(f) for f in basis}
    if len(weights) != 1:
        raise ValueError("basis is not weight-homogeneous")
    k = weights.pop()
    if k.denominator != 1:
        raise ValueError("half-integral weight is not supported")
    level = lcm(*(f.level for f in basis))
    need = sturm_bound(level, int(k)) + 1
    if precision is None:
        precision = need
    if precision < need:
        raise InsufficientPrecision(f"precision {precision} below sturm_bound + 1 = {need}")
    if target.end24 < 24 * precision:
        raise InsufficientPrecision("target is not known to the requested precision")
    columns = [eta_quotient_expand(f, precision).list(0, precision) for f in basis]
    x = solve(columns, target.list(0, precision))
    result = EtaSum.of(zip(x, basis))
    if not qs_agree_to(result.expand(precision), target, precision - 1):
        raise ArithmeticError("solution failed re-verification")
    return result


def decompose_by_search(target, level, weight, r_max=24, character=1, precision=None):
    """Enumerate holomorphic eta-quotients at ``level``, prune to a basis, decompose."""
    found = enumerate_eta_quotients(level, weight, SearchBounds(r_max=r_max), character)
    basis = prune_to_rank_basis(found.quotients)
    return decompose_in_basis(target, basis, precision)


def propose_corrections(space, target, etasum, term_index, r_max=24, n_coefficients=None):
    """Candidates that could replace term ``term_index`` (1-based) to make the identity hold.

    Keeps every other term and coefficient, and the offending term's
    coefficient, and returns the holomorphic eta-quotients g in ``space``
    with certify(others + c*g) valid.  Purely exploratory.
    """
    coeff = etasum.terms[term_index - 1][0]
    others = [t for i, t in enumerate(etasum.terms, 1) if i != term_index]
    found = enumerate_eta_quotients(space.level, space.weight, SearchBounds(r_max=r_max), space.character)
    hits = []
    for g in found.quotients:
        trial = EtaSum(tuple(others[: term_index - 1]) + ((coeff, g),) + tuple(others[term_index - 1 :]))
        if certify_identity(space, target, trial, n_coefficients).valid:
            hits.append(g)
    return hits


def level1_monomials(k):
    """Exponent pairs (a, b) with 4a + 6b = k, a descending."""
    return [(a, (k - 4 * a) // 6) for a in range(k // 4, -1, -1) if (k - 4 * a) % 6 == 0]


def level1_polynomial_decomposition(target, k):
    """Write a level-1 weight-k expansion as sum c_ab E4^a E6^b."""
    if k < 0 or k % 2:
        raise ValueError("weight must be a non-negative even integer")
    if not target.is_zero() and (target.offset24 < 0 or target.offset24 % 24):
        raise NoSolution("target must have integral, non-negative exponents")
    monos = level1_monomials(k)
    if not monos:
        raise NoSolution(f"M_{k}(SL2(Z)) is zero")
    need = len(monos) + 1
    if target.end24 < 24 * need:
        raise InsufficientPrecision(f"need {need} coefficients of the target")
    check = max(need, target.known_through() + 1)
    e4, e6 = eisenstein_level1(4, check), eisenstein_level1(6, check)
    columns = [(qs_pow(e4, a) * qs_pow(e6, b)).truncate(check) for a, b in monos]
    x = solve([c.list(0, need) for c in columns], target.list(0, need))
    total = QSeries.zero(24 * check)
    for c, col in zip(x, columns):
        total = total + c * col
    if not qs_agree_to(total, target, check - 1):
        raise NoSolution("target is not a level-1 modular form of this weight")
    return {mono: c for mono, c in zip(monos, x) if c}


def weight_zero_exponents(k):
    """(a, b, c) with a in {0,1,2}, b in {0,1}, c >= 1 and k + 4a + 6b - 12c = 0."""
    if k <= 0 or k % 2:
        raise ValueError("weight must be a positive even integer")
    for b in (0, 1):
        for a in (0, 1, 2):
            if (k + 4 * a + 6 * b) % 12 == 0:
                return a, b, (k + 4 * a + 6 * b) // 12
    raise AssertionError("unreachable for even k")


def delta_series(precision):
    return eta_quotient_expand(EtaQuotient.make(1, {1: 24}), precision)


def weight_zero_function(f, k, precision=None):
    """Expansion of f * E4^a * E6^b / Delta^c, a modular function of weight zero."""
    if f.is_zero():
        raise ZeroSeries("f is zero")
    if f.offset24 % 24:
        raise ValueError("f must have integral exponents")
    a, b, c = weight_zero_exponents(k)
    p = precision or f.precision
    g = f.truncate(p) * qs_pow(eisenstein_level1(4, p), a) * qs_pow(eisenstein_level1(6, p), b)
    return g * qs_pow(qs_inv(delta_series(p)), c)


def j_invariant_series(m=1, precision=50):
    """j(q^m) = E4(q^m)^3 / Delta(q^m), ``precision`` coefficients from q^(-m)."""
    if m < 1:
        raise ValueError("m must be positive")
    p = -(-precision // m)
    j = qs_pow(eisenstein_level1(4, p), 3) * qs_inv(delta_series(p))
    return qs_substitute(j, m).truncate(precision)


E4_ETA_SUM = EtaSum.of([
    (1, EtaQuotient.make(2, {1: 16, 2: -8})),
    (256, EtaQuotient.make(2, {2: 16, 1: -8})),
])

E6_ETA_SUM = EtaSum.of([
    (1, EtaQuotient.make(4, {1: 24, 2: -12})),
    (-480, EtaQuotient.make(4, {2: 12})),
    (-16896, EtaQuotient.make(4, {2: 12, 4: 8, 1: -8})),
    (8192, EtaQuotient.make(4, {4: 24, 2: -12})),
])


def j_from_eta_route(precision=50):
    """j computed only from eta-quotients: (E4 as an eta-sum)^3 / eta^24."""
    e4 = E4_ETA_SUM.expand(precision)
    return qs_pow(e4, 3) * qs_inv(delta_series(precision))


FEASIBLE = "feasible"
INFEASIBLE_CONGRUENCE = "infeasible-congruence"
INFEASIBLE_PARITY = "infeasible-parity"


@dataclass
class FeasibilityVerdict:
    status: str
    detail: str
    necessary_only: bool = False
    params: dict = field(default_factory=dict)

    def to_dict(self):
        return {"status": self.status, "detail": self.detail, "necessary_only": self.necessary_only, **self.params}


def prime_level_feasibility(p, r, k=2):
    """Can a weight-k form with nonzero constant term be a sum of eta-quotients
    of level p^r (trivial character)?

    Each term must have leading exponent 0 and weight k, so
    sum_i (p^i - 1) r_{p^i} = -2k; reducing mod p - 1 kills the left side.
    For p = 5 the trivial character makes sum_{i odd} r_{p^i} even, and after
    dividing by 4 the left side is even while the right side is -k/2.
    """
    require_prime(p)
    if r < 1:
        raise ValueError("r must be positive")
    if k < 2 or k % 2:
        raise ValueError("k must be an even integer >= 2")
    params = {"prime": p, "power": r, "weight": k}
    necessary_only = k != 2
    rhs = -2 * k
    eq = " + ".join(f"({p}^{i}-1)*r{i}" for i in range(1, r + 1)) + f" = {rhs}"
    if rhs % (p - 1):
        return FeasibilityVerdict(
            INFEASIBLE_CONGRUENCE,
            f"{eq}: left side is 0 mod {p - 1}, right side is {rhs % (p - 1)} mod {p - 1}",
            necessary_only, params,
        )
    if p == 5 and (k // 2) % 2 == 1:
        return FeasibilityVerdict(
            INFEASIBLE_PARITY,
            f"{eq}: divided by 4 the left side is even under a trivial character, the right side is {rhs // 4}",
            necessary_only, params,
        )
    return FeasibilityVerdict(
        FEASIBLE,
        f"{eq}: congruence mod {p - 1} is satisfiable (necessary condition only)",
        True, params,
    )
