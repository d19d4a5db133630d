"""Dedekind eta, eta-quotients and the Ligozat modularity criterion."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import divisors, fundamental_discriminant, kronecker, sigma
from .errors import HalfIntegralWeight, NotADivisor
from .qseries import QSeries


def pentagonal_exponents(limit):
    """Yield (exponent, sign) for generalized pentagonal numbers below ``limit``.

    Euler: prod_{n>=1} (1 - q^n) = sum_k (-1)^k q^(k(3k-1)/2), k over all integers.
    """
    yield 0, 1
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        if e1 >= limit:
            return
        sign = -1 if k % 2 else 1
        yield e1, sign
        e2 = e1 + k  # the k -> -k partner
        if e2 < limit:
            yield e2, sign
        k += 1


def euler_product(precision):
    """prod_{n>=1} (1 - q^n) to O(q^precision), without the q^(1/24) factor."""
    coeffs = [0] * precision
    for e, sign in pentagonal_exponents(precision):
        coeffs[e] = sign
    return QSeries(coeffs, 0, precision)


def eta_series(precision):
    """q^(1/24) prod (1 - q^n), with ``precision`` coefficients past q^(1/24)."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    coeffs = [0] * precision
    for e, sign in pentagonal_exponents(precision):
        coeffs[e] = sign
    return QSeries(coeffs, 1, precision)


@dataclass(frozen=True)
class EtaQuotient:
    """prod_{delta | level} eta(q^delta)^r_delta.

    ``exponents`` is stored as a sorted tuple of ``(delta, r)`` pairs with
    r != 0; build instances with :meth:`make` or :meth:`from_dict`.
    """

    level: int
    exponents: tuple = ()

    def __post_init__(self):
        if not isinstance(self.level, int) or self.level < 1:
            raise ValueError(f"level must be a positive integer, got {self.level!r}")
        for delta, r in self.exponents:
            if self.level % delta:
                raise NotADivisor(f"{delta} does not divide the level {self.level}")

    @classmethod
    def make(cls, level, exponents=None):
        exps = {}
        for delta, r in (exponents or {}).items():
            delta, r = int(delta), int(r)
            if delta < 1:
                raise NotADivisor(f"eta(q^{delta}) needs a positive divisor")
            exps[delta] = exps.get(delta, 0) + r
        return cls(int(level), tuple(sorted((d, r) for d, r in exps.items() if r)))

    @property
    def exponent_map(self):
        return dict(self.exponents)

    def r(self, delta):
        return self.exponent_map.get(delta, 0)

    def vector(self, level=None):
        """Exponents listed over all divisors of ``level`` (default: own level)."""
        level = level or self.level
        m = self.exponent_map
        return tuple(m.get(d, 0) for d in divisors(level))

    def at_level(self, level):
        if level % self.level:
            raise NotADivisor(f"{self.level} does not divide {level}")
        return EtaQuotient(level, self.exponents)

    def __mul__(self, other):
        level = self.level * other.level // gcd(self.level, other.level)
        m = self.exponent_map
        for d, r in other.exponents:
            m[d] = m.get(d, 0) + r
        return EtaQuotient.make(level, m)

    def __pow__(self, e):
        return EtaQuotient.make(self.level, {d: r * e for d, r in self.exponents})

    def to_dict(self):
        return {"level": self.level, "exponents": {str(d): r for d, r in self.exponents}}

    @classmethod
    def from_dict(cls, data):
        return cls.make(data["level"], data.get("exponents", {}))

    def __str__(self):
        if not self.exponents:
            return "1"
        return "*".join(f"eta(q^{d})^{r}" if d != 1 else f"eta(q)^{r}" for d, r in self.exponents)


def eta_quotient_expand(f, precision):
    """Exact q-expansion of an eta-quotient with ``precision`` coefficients.

    Uses the logarithmic derivative: for F = prod_delta (q^delta; q^delta)^r_delta
    we have n*a_n = sum_{t=1}^n b_t a_{n-t} with
    b_t = -sum_{delta | t} r_delta * delta * sigma_1(t/delta), all in integers.
    """
    if precision < 1:
        raise ValueError("precision must be at least 1")
    offset24 = sum(d * r for d, r in f.exponents)
    b = [0] * precision
    for d, r in f.exponents:
        for m in range(1, (precision - 1) // d + 1):
            b[d * m] -= r * d * sigma(m, 1)
    a = [0] * precision
    a[0] = 1
    nz = [t for t in range(1, precision) if b[t]]
    for n in range(1, precision):
        acc = 0
        for t in nz:
            if t > n:
                break
            acc += b[t] * a[n - t]
        a[n] = acc // n
    return QSeries(a, offset24, precision)


def eq_weight(f):
    return Fraction(sum(r for _, r in f.exponents), 2)


@dataclass(frozen=True)
class LigozatReport:
    cond_delta: bool
    cond_N_over_delta: bool
    integral_weight: bool

    @property
    def passed(self):
        return self.cond_delta and self.cond_N_over_delta and self.integral_weight


def ligozat_check(f, level=None):
    """Ligozat's sufficient conditions, evaluated at ``level`` (default f.level)."""
    level = level or f.level
    if level % f.level:
        raise NotADivisor(f"{f.level} does not divide {level}")
    s1 = sum(d * r for d, r in f.exponents)
    s2 = sum((level // d) * r for d, r in f.exponents)
    return LigozatReport(
        cond_delta=s1 % 24 == 0,
        cond_N_over_delta=s2 % 24 == 0,
        integral_weight=sum(r for _, r in f.exponents) % 2 == 0,
    )


@dataclass(frozen=True)
class CharacterDescriptor:
    """Weight, s = prod delta^r_delta and the quadratic character of an eta-quotient.

    ``discriminant`` is the field discriminant of Q(sqrt((-1)^k s)), so that
    chi(d) = kronecker(discriminant, d) for d coprime to 2*s.  ``certified``
    is False when the quotient fails Ligozat's conditions and the character
    formula is therefore not backed by the theorem.
    """

    weight: Fraction
    s_value: Fraction
    discriminant: int
    certified: bool

    @property
    def symbol_top(self):
        """(-1)^k * numerator(s) * denominator(s); same symbol as (-1)^k s on units."""
        sign = -1 if int(self.weight) % 2 else 1
        return sign * self.s_value.numerator * self.s_value.denominator

    def chi(self, d):
        """Evaluate ((-1)^k s / d) as a Kronecker symbol."""
        return kronecker(self.symbol_top, d)

    @property
    def is_trivial(self):
        return self.discriminant == 1


def eq_character(f, level=None):
    k = eq_weight(f)
    if k.denominator != 1:
        raise HalfIntegralWeight(f"weight {k} is not an integer")
    s = Fraction(1)
    for d, r in f.exponents:
        s *= Fraction(d) ** r
    top = (-1) ** (int(k) % 2) * s.numerator * s.denominator
    return CharacterDescriptor(
        weight=k,
        s_value=s,
        discriminant=fundamental_discriminant(top),
        certified=ligozat_check(f, level).passed,
    )


def cusp_order(f, d, level=None):
    """Order of vanishing at the cusps c/d of X0(level), in the local parameter.

    ord = level/(24 gcd(d, level/d) d) * sum_delta gcd(d, delta)^2 r_delta / delta,
    which reduces to sum delta r_delta / 24 at the cusp at infinity (d = level).
    """
    level = level or f.level
    if level % f.level:
        raise NotADivisor(f"{f.level} does not divide {level}")
    if not isinstance(d, int) or d < 1 or level % d:
        raise NotADivisor(f"{d} does not divide {level}")
    total = sum(Fraction(gcd(d, delta) ** 2 * r, delta) for delta, r in f.exponents)
    return Fraction(level, 24 * gcd(d, level // d) * d) * total


def is_holomorphic_form(f, level=None, allow_half_integral=False):
    """Ligozat conditions hold and every cusp order is non-negative."""
    level = level or f.level
    report = ligozat_check(f, level)
    if not (report.cond_delta and report.cond_N_over_delta):
        return False
    k = eq_weight(f)
    if k < 0 or (k.denominator != 1 and not allow_half_integral):
        return False
    return all(cusp_order(f, d, level) >= 0 for d in divisors(level))


def partition_numbers(n_max):
    """p(0), ..., p(n_max) by Euler's pentagonal recurrence."""
    if n_max < 0:
        return []
    pent = [(e, s) for e, s in pentagonal_exponents(n_max + 1) if e]
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        acc = 0
        for e, s in pent:
            if e > n:
                break
            acc += s * p[n - e]
        # prod (1 - q^m) * sum p(n) q^n = 1
        p[n] = -acc
    return p
