"""Exact eta-quotient representations of modular forms on Gamma0(N)."""

__version__ = "0.1.0"

from .qseries import QSeries, qs_add, qs_agree_to, qs_inv, qs_mul, qs_pow, qs_substitute
from .etacore import (
    EtaQuotient,
    cusp_order,
    eq_character,
    eq_weight,
    eta_quotient_expand,
    eta_series,
    is_holomorphic_form,
    ligozat_check,
    partition_numbers,
)
from .spaces import (
    SpaceSpec,
    dim_cusp_gamma0p,
    dim_eisenstein_gamma0p,
    eisenstein_level1,
    eisenstein_weight2_level_p,
    genus_X0p,
    index_gamma0,
    sturm_bound,
)
from .basis_search import SearchBounds, enumerate_eta_quotients, prune_to_rank_basis
from .identity_lab import (
    Certificate,
    EtaSum,
    FeasibilityVerdict,
    certify_identity,
    decompose_in_basis,
    j_from_eta_route,
    j_invariant_series,
    level1_polynomial_decomposition,
    prime_level_feasibility,
    weight_zero_exponents,
    weight_zero_function,
)
