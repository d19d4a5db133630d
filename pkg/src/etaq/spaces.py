"""Dimensions, Sturm bounds and Eisenstein series for Gamma0(N)."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import factorize, kronecker, require_prime, sigma
from .errors import OutOfDomain
from .qseries import QSeries, qs_substitute


@dataclass(frozen=True)
class SpaceSpec:
    """The space M_k(Gamma0(N), chi); ``character`` is a discriminant, 1 = trivial."""

    level: int
    weight: int
    character: int = 1

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        if self.weight < 1:
            raise ValueError("weight must be at least 1")

    def to_dict(self):
        return {"level": self.level, "weight": self.weight, "character": self.character}

    @classmethod
    def from_dict(cls, data):
        return cls(int(data["level"]), int(data["weight"]), int(data.get("character", 1)))


def index_gamma0(n):
    """[SL2(Z) : Gamma0(n)] = n * prod_{p | n} (1 + 1/p)."""
    if n < 1:
        raise ValueError("level must be positive")
    result = n
    for p in factorize(n):
        result = result // p * (p + 1)
    return result


def genus_X0p(p):
    require_prime(p)
    g = (p + 1) // 12
    return g - 1 if p % 12 == 1 else g


def dim_cusp_gamma0p(p, k):
    """dim S_k(Gamma0(p)) for a prime p >= 5 and even k >= 2."""
    require_prime(p)
    if p < 5 or k < 2 or k % 2:
        raise OutOfDomain(f"formula covers primes p >= 5 and even k >= 2, got p={p}, k={k}")
    g = genus_X0p(p)
    if k == 2:
        return g
    return (
        (k - 1) * (g - 1)
        + (k // 4) * (1 + kronecker(-1, p))
        + (k // 3) * (1 + kronecker(-3, p))
        + k
        - 2
    )


def dim_eisenstein_gamma0p(p, k):
    require_prime(p)
    if k < 2 or k % 2:
        raise OutOfDomain(f"weight must be even and at least 2, got {k}")
    return 1 if k == 2 else 2


def dim_modular_gamma0p(p, k):
    return dim_cusp_gamma0p(p, k) + dim_eisenstein_gamma0p(p, k)


def sturm_bound(n, k):
    """floor(k * [SL2(Z) : Gamma0(n)] / 12)."""
    return k * index_gamma0(n) // 12


# weight -> -2k / B_k
_EISENSTEIN_FACTOR = {2: -24, 4: 240, 6: -504}


@lru_cache(maxsize=64)
def eisenstein_level1(k, precision):
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for k in {2, 4, 6}."""
    if k not in _EISENSTEIN_FACTOR:
        raise OutOfDomain(f"only E_2, E_4, E_6 are provided, got k={k}")
    c = _EISENSTEIN_FACTOR[k]
    coeffs = [1] + [c * sigma(n, k - 1) for n in range(1, precision)]
    return QSeries(coeffs, 0, precision)


@lru_cache(maxsize=64)
def eisenstein_weight2_level_p(p, precision):
    """(p E_2(q^p) - E_2(q)) / (p - 1), the weight-2 Eisenstein series on Gamma0(p)."""
    require_prime(p)
    e2 = eisenstein_level1(2, precision)
    lifted = qs_substitute(eisenstein_level1(2, -(-precision // p)), p).truncate(precision)
    return (p * lifted - e2) * Fraction(1, p - 1)


def eisenstein_target(name, precision):
    """Look up a named Eisenstein series: ``E2``, ``E4``, ``E6`` or ``Ep2:<p>``."""
    key = name.strip()
    if key.upper() in ("E2", "E4", "E6"):
        return eisenstein_level1(int(key[1]), precision)
    if key.lower().startswith("ep2:"):
        p = int(key.split(":", 1)[1])
        return eisenstein_weight2_level_p(p, precision)
    raise ValueError(f"unknown target {name!r}; expected E2, E4, E6 or Ep2:<p>")
