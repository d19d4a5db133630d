import random

import pytest

from etaq.arith import divisors
from etaq.basis_search import (
    SearchBounds,
    column_echelon,
    cusp_matrix,
    enumerate_eta_quotients,
    holomorphic_exponent_vectors,
    ligozat_lattice,
    prune_to_rank_basis,
    valence_weights,
)
from etaq.errors import InsufficientPrecision
from etaq.etacore import EtaQuotient, eq_character, eq_weight, eta_quotient_expand, is_holomorphic_form
from etaq.linalg import rank
from etaq.spaces import index_gamma0, sturm_bound

from oracles import holomorphic_box, ligozat_ok, square_free_class_of_s

DELTA = EtaQuotient.make(1, {1: 24})
LEVEL11 = EtaQuotient.make(11, {1: 2, 11: 2})
E52_PRINTED = [
    {2: 3, 4: 4, 5: 3, 10: 5, 1: -7, 20: -4},
    {2: 7, 4: 2, 5: 3, 10: 1, 1: -7, 20: -2},
    {2: 7, 4: 7, 10: 5, 1: -7, 5: -5, 20: -3},
    {4: 4, 5: 6, 10: 4, 1: -6, 20: -4},
    {2: 4, 4: 2, 5: 6, 1: -6, 20: -2},
    {2: 4, 4: 7, 10: 4, 1: -6, 5: -2, 20: -3},
]


def trivial_character_box(n, k, r_max):
    """Oracle: box search, then keep even weight with s a perfect square."""
    ds = divisors(n)
    return sorted(v for v in holomorphic_box(n, k, r_max) if square_free_class_of_s(dict(zip(ds, v))) == 1)


class TestLatticeMachinery:
    @pytest.mark.parametrize("n", [4, 12, 20, 27, 28, 36])
    def test_column_echelon_is_unimodular_transform(self, n):
        a = cusp_matrix(n)
        b, u, r = column_echelon(a)
        product = [[sum(x * y for x, y in zip(row, col)) for col in zip(*u)] for row in a]
        assert product == b
        assert r == len(a) == rank(a)

    @pytest.mark.parametrize("n", [2, 6, 12, 20, 28])
    def test_ligozat_lattice_vectors_pass(self, n):
        ds = divisors(n)
        for col in zip(*ligozat_lattice(n)):
            exps = dict(zip(ds, col))
            assert sum(d * r for d, r in exps.items()) % 24 == 0
            assert sum((n // d) * r for d, r in exps.items()) % 24 == 0

    @pytest.mark.parametrize("n", [1, 4, 11, 20, 27, 28])
    def test_valence_identity(self, n):
        # sum_d w_d v_d is L k index / 12 for every quotient of weight k
        w, scale = valence_weights(n)
        a = cusp_matrix(n)
        rng = random.Random(n)
        for _ in range(25):
            r = [rng.randint(-6, 6) for _ in divisors(n)]
            if sum(r) % 2:
                r[0] += 1
            v = [sum(x * y for x, y in zip(row, r)) for row in a]
            k2 = sum(r)  # 2k
            assert 2 * sum(wi * vi for wi, vi in zip(w, v)) * 12 == scale * k2 * index_gamma0(n)


class TestEnumeration:
    def test_delta(self):
        assert DELTA in enumerate_eta_quotients(1, 12).quotients

    def test_level_11(self):
        assert LEVEL11 in enumerate_eta_quotients(11, 2).quotients

    @pytest.mark.parametrize("n, k, r_max", [(4, 2, 8), (4, 4, 8), (6, 2, 6), (8, 2, 6), (9, 2, 6), (10, 2, 5), (12, 2, 4), (20, 2, 4), (20, 2, 6), (28, 2, 4)])
    def test_matches_box_oracle(self, n, k, r_max):
        found = enumerate_eta_quotients(n, k, SearchBounds(r_max=r_max))
        assert [f.vector() for f in found.quotients] == trivial_character_box(n, k, r_max)

    def test_odd_weight_with_character(self):
        found = enumerate_eta_quotients(4, 1, character_discriminant=-4)
        assert EtaQuotient.make(4, {2: 10, 1: -4, 4: -4}) in found.quotients
        for f in found.quotients:
            assert eq_character(f).discriminant == -4

    def test_e52_printed_terms_found(self):
        # Expected to fail: the published quotients have poles at the cusp 0.
        found = enumerate_eta_quotients(20, 2, SearchBounds(r_max=8)).quotients
        missing = [e for e in E52_PRINTED if EtaQuotient.make(20, e) not in found]
        assert missing == []

    @pytest.mark.parametrize("n, k", [(20, 2), (28, 2), (8, 4)])
    def test_soundness(self, n, k):
        for f in enumerate_eta_quotients(n, k, SearchBounds(r_max=10)).quotients:
            assert is_holomorphic_form(f)
            assert eq_weight(f) == k
            assert ligozat_ok(n, f.exponent_map)

    def test_deterministic(self):
        a = enumerate_eta_quotients(28, 2, SearchBounds(r_max=8))
        b = enumerate_eta_quotients(28, 2, SearchBounds(r_max=8))
        assert a.quotients == b.quotients
        vectors = [f.vector() for f in a.quotients]
        assert vectors == sorted(vectors)

    def test_r_max_flags_incomplete(self):
        small = enumerate_eta_quotients(20, 2, SearchBounds(r_max=2))
        full = enumerate_eta_quotients(20, 2, SearchBounds(r_max=24))
        assert not small.complete and small.excluded_by_r_max > 0
        assert full.complete
        assert set(small.quotients) < set(full.quotients)

    def test_max_results_stops_early(self):
        found = enumerate_eta_quotients(20, 2, SearchBounds(max_results=3))
        assert len(found.quotients) == 3 and not found.complete

    @pytest.mark.parametrize("seed", range(5))
    def test_spot_check_inserted_form(self, seed):
        # f(q^m) for the level-11 form is holomorphic of level 11m
        rng = random.Random(seed)
        n = rng.choice([22, 33, 44, 55])
        m = rng.choice([d for d in divisors(n // 11)])
        f = EtaQuotient.make(n, {m: 2, 11 * m: 2})
        assert f in enumerate_eta_quotients(n, 2, SearchBounds(r_max=2)).quotients

    def test_bounds_validated(self):
        with pytest.raises(ValueError):
            SearchBounds(r_max=0)


class TestPrune:
    def test_duplicate(self):
        assert prune_to_rank_basis([DELTA, DELTA]) == [DELTA]

    def test_empty(self):
        assert prune_to_rank_basis([]) == []

    def test_e52_printed_independent(self):
        quotients = [EtaQuotient.make(20, e) for e in E52_PRINTED]
        assert prune_to_rank_basis(quotients) == quotients

    def test_precision_guard(self):
        with pytest.raises(InsufficientPrecision):
            prune_to_rank_basis([LEVEL11], precision=1)

    @pytest.mark.parametrize("n, k", [(20, 2), (28, 2), (27, 2), (4, 6)])
    def test_rank_equals_length(self, n, k):
        basis = prune_to_rank_basis(enumerate_eta_quotients(n, k).quotients)
        need = sturm_bound(n, k) + 1
        rows = [eta_quotient_expand(f, need).list(0, need) for f in basis]
        assert rank(rows) == len(basis)

    def test_level_20_has_six(self):
        assert len(prune_to_rank_basis(enumerate_eta_quotients(20, 2).quotients)) >= 6

    def test_level_11_vector(self):
        assert enumerate_eta_quotients(11, 2).quotients == [LEVEL11]
        assert list(holomorphic_exponent_vectors(11, 2)) == [(2, 2)]
