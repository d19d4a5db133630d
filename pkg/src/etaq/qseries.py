"""Truncated q-expansions with exact rational coefficients.

A :class:`QSeries` stands for

    q^(offset24/24) * (c_0 + c_1 q + ... + c_{P-1} q^(P-1) + O(q^P))

so every eta-quotient, whose leading exponent is a multiple of 1/24, fits
without general rational exponents.  Precision is tracked pessimistically:
an operation never reports a coefficient its inputs do not determine.

The zero series has no coefficients; its ``offset24`` then records how far
it is known to vanish (``O(q^(offset24/24))``).
"""

from fractions import Fraction
from math import lcm

from .errors import IncompatibleOffsets, InsufficientPrecision, ZeroSeries

# Above this length products go through big-integer packing instead of the
# schoolbook loop.  Both paths are exact and give identical coefficients.
PACKED_MUL_THRESHOLD = 64


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"coefficients must be exact rationals, got {type(x).__name__}")


def _scaled_integers(coeffs):
    """Return (ints, den) with coeffs[i] == ints[i] / den."""
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = lcm(den, c.denominator)
    if den == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve_schoolbook(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def _convolve_packed(a, b, n):
    """Truncated integer convolution via Kronecker substitution."""
    a, b = a[:n], b[:n]
    bound = max(map(abs, a), default=0) * max(map(abs, b), default=0) * min(len(a), len(b))
    if bound == 0:
        return [0] * n
    shift = bound.bit_length() + 2
    half = 1 << (shift - 1)
    mask = (1 << shift) - 1

    def pack(seq):
        value = 0
        for c in reversed(seq):
            value = (value << shift) + c
        return value

    product = pack(a) * pack(b)
    out = []
    # balanced digit extraction; product may be negative
    for _ in range(n):
        digit = product & mask
        if digit >= half:
            digit -= 1 << shift
        out.append(digit)
        product = (product - digit) >> shift
    return out


def convolve(a, b, n):
    """First n coefficients of the product of two integer sequences."""
    if min(len(a), len(b), n) >= PACKED_MUL_THRESHOLD:
        return _convolve_packed(a, b, n)
    return _convolve_schoolbook(a, b, n)


class QSeries:
    """Immutable truncated q-series; see the module docstring."""

    __slots__ = ("_offset24", "_coeffs")

    def __init__(self, coeffs=(), offset24=0, precision=None):
        coeffs = [_as_fraction(c) for c in coeffs]
        if precision is not None:
            if precision < 0:
                raise ValueError("precision must be non-negative")
            coeffs = coeffs[:precision] + [Fraction(0)] * (precision - len(coeffs))
        # normalise so that c_0 != 0
        lead = 0
        while lead < len(coeffs) and coeffs[lead] == 0:
            lead += 1
        self._offset24 = int(offset24) + 24 * lead
        self._coeffs = tuple(coeffs[lead:])

    @classmethod
    def _raw(cls, coeffs, offset24):
        obj = cls.__new__(cls)
        obj._offset24 = offset24
        obj._coeffs = tuple(coeffs)
        return obj

    @classmethod
    def zero(cls, known_to24=0):
        """The zero series, known to vanish below q^(known_to24/24)."""
        return cls._raw((), known_to24)

    @classmethod
    def one(cls, precision):
        return cls([1], 0, precision)

    @classmethod
    def monomial(cls, coefficient, exponent24, precision):
        return cls([coefficient], exponent24, precision)

    # -- accessors -----------------------------------------------------

    @property
    def offset24(self):
        return self._offset24

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def precision(self):
        return len(self._coeffs)

    @property
    def end24(self):
        """First exponent (in 1/24 units) whose coefficient is unknown."""
        return self._offset24 + 24 * len(self._coeffs)

    def is_zero(self):
        return not self._coeffs

    @property
    def integral_exponents(self):
        return self._offset24 % 24 == 0

    @property
    def valuation(self):
        """Leading exponent as an exact rational power of q."""
        return Fraction(self._offset24, 24)

    def coefficient24(self, e24):
        """Coefficient of q^(e24/24)."""
        if e24 >= self.end24:
            raise InsufficientPrecision(f"coefficient of q^({e24}/24) is beyond the known precision")
        if e24 < self._offset24 or (e24 - self._offset24) % 24:
            return Fraction(0)
        return self._coeffs[(e24 - self._offset24) // 24]

    def __getitem__(self, n):
        """Coefficient of q^n for an integer n."""
        return self.coefficient24(24 * n)

    def list(self, start, stop):
        """Coefficients of q^start ... q^(stop-1) (integer exponents)."""
        return [self[n] for n in range(start, stop)]

    def known_through(self):
        """Largest integer n with the coefficient of q^n known."""
        return -((-self.end24) // 24) - 1

    def truncate(self, precision):
        """Keep at most ``precision`` coefficients past the offset."""
        if precision >= len(self._coeffs):
            return self
        return QSeries(self._coeffs[:precision], self._offset24)

    def truncate_to(self, end24):
        """Discard everything at or beyond q^(end24/24)."""
        if end24 >= self.end24:
            return self
        if end24 <= self._offset24:
            return QSeries.zero(end24)
        keep = -((self._offset24 - end24) // 24)
        return QSeries(self._coeffs[:keep], self._offset24)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries([other], 0, max(0, -((-self.end24) // 24)))
        if not isinstance(other, QSeries):
            return NotImplemented
        return qs_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw([-c for c in self._coeffs], self._offset24)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return qs_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return QSeries.zero(self.end24)
            return QSeries._raw([c * other for c in self._coeffs], self._offset24)
        if not isinstance(other, QSeries):
            return NotImplemented
        return qs_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not isinstance(other, QSeries):
            return NotImplemented
        return qs_mul(self, qs_inv(other))

    def __pow__(self, e):
        return qs_pow(self, e)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._offset24 == other._offset24 and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._offset24, self._coeffs))

    def __repr__(self):
        head = ", ".join(str(c) for c in self._coeffs[:6])
        more = ", ..." if len(self._coeffs) > 6 else ""
        return f"QSeries(offset24={self._offset24}, coeffs=[{head}{more}], precision={self.precision})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self._coeffs):
            if c:
                e = Fraction(self._offset24 + 24 * i, 24)
                terms.append(f"{c}*q^{e}" if e else f"{c}")
            if len(terms) == 8:
                break
        terms.append(f"O(q^{Fraction(self.end24, 24)})")
        return " + ".join(terms)

    # -- serialisation -------------------------------------------------

    def to_dict(self):
        return {"offset24": self._offset24, "coeffs": [str(c) for c in self._coeffs]}

    @classmethod
    def from_dict(cls, data):
        return cls([Fraction(c) for c in data["coeffs"]], int(data["offset24"]))


def qs_add(a, b):
    if a.is_zero() and b.is_zero():
        return QSeries.zero(min(a.end24, b.end24))
    if not a.is_zero() and not b.is_zero() and (a.offset24 - b.offset24) % 24:
        raise IncompatibleOffsets(
            f"cannot add series with offsets {a.offset24}/24 and {b.offset24}/24"
        )
    end = min(a.end24, b.end24)
    start = min(s.offset24 for s in (a, b) if not s.is_zero())
    if end <= start:
        return QSeries.zero(end)
    n = (end - start + 23) // 24
    out = [Fraction(0)] * n
    for s in (a, b):
        base = (s.offset24 - start) // 24
        for i, c in enumerate(s.coeffs):
            if base + i < n:
                out[base + i] += c
    return QSeries(out, start)


def qs_mul(a, b):
    offset = a.offset24 + b.offset24
    n = min(a.precision, b.precision)
    if n == 0:
        # one factor is an (inexact) zero; the product vanishes up to the
        # first exponent either side leaves undetermined
        return QSeries.zero(min(a.end24 + b.offset24, b.end24 + a.offset24))
    ia, da = _scaled_integers(a.coeffs)
    ib, db = _scaled_integers(b.coeffs)
    prod = convolve(ia, ib, n)
    den = da * db
    if den == 1:
        return QSeries(prod, offset)
    return QSeries([Fraction(x, den) for x in prod], offset)


def qs_inv(a):
    if a.is_zero():
        raise ZeroSeries("cannot invert the zero series")
    n = a.precision
    ints, den = _scaled_integers(a.coeffs)
    lead = ints[0]
    # b_k = B_k / lead^(k+1) keeps the recurrence in integers
    big = [0] * n
    if abs(lead) == 1:
        big[0] = lead
        for k in range(1, n):
            acc = 0
            for j in range(1, k + 1):
                if ints[j]:
                    acc += ints[j] * big[k - j]
            big[k] = -acc * lead
        out = [b * den for b in big]
    else:
        big[0] = 1
        powers = [1]
        for _ in range(n):
            powers.append(powers[-1] * lead)
        for k in range(1, n):
            acc = 0
            for j in range(1, k + 1):
                if ints[j]:
                    acc += ints[j] * big[k - j] * powers[j - 1]
            big[k] = -acc
        out = [Fraction(big[k] * den, powers[k + 1]) for k in range(n)]
    return QSeries(out, -a.offset24)


def qs_pow(a, e):
    if not isinstance(e, int):
        raise TypeError("exponent must be an integer")
    if e < 0:
        return qs_pow(qs_inv(a), -e)
    if e == 0:
        return QSeries.one(max(a.precision, 1))
    result = None
    base = a
    while True:
        if e & 1:
            result = base if result is None else qs_mul(result, base)
        e >>= 1
        if not e:
            return result
        base = qs_mul(base, base)


def qs_substitute(a, m):
    """q -> q^m."""
    if not isinstance(m, int) or m < 1:
        raise ValueError("substitution factor must be a positive integer")
    if m == 1 or a.is_zero():
        return QSeries.zero(a.end24 * m) if a.is_zero() else a
    out = [Fraction(0)] * (m * a.precision)
    out[::m] = a.coeffs
    return QSeries._raw(out, a.offset24 * m)


def qs_agree_to(a, b, bound):
    """True iff a and b have identical coefficients for all exponents <= q^bound."""
    limit = 24 * bound
    for s in (a, b):
        if s.end24 <= limit:
            raise InsufficientPrecision(
                f"series known only below q^{Fraction(s.end24, 24)}, need through q^{bound}"
            )
    exps = set()
    for s in (a, b):
        exps.update(range(s.offset24, limit + 1, 24))
    return all(a.coefficient24(e) == b.coefficient24(e) for e in exps)


def first_mismatch(a, b, bound):
    """Smallest integer n <= bound where the q^n coefficients differ, else None."""
    if not qs_agree_to(a, b, bound):
        for e in sorted(set(range(a.offset24, 24 * bound + 1, 24)) | set(range(b.offset24, 24 * bound + 1, 24))):
            if a.coefficient24(e) != b.coefficient24(e):
                return Fraction(e, 24) if e % 24 else e // 24
    return None
