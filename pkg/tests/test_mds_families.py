import numpy as np
import pytest

from trs.core.config import settings
from trs.core.exceptions import (
    DegreeMismatch,
    EtaInGroup,
    EtaInverseInGroup,
    InfeasibleParameters,
    InvalidCodeParameters,
    NotASubgroupOrder,
    NotAdditiveSubgroup,
    TooLarge,
)
from trs.core.rng import make_rng
from trs.models.code import TwistedCode
from trs.services.finite_field import additive_subgroup, embed_subfield, make_field, subfield_elements
from trs.services.mds_families import (
    MdsMethod,
    is_k_sum_generator,
    is_mds_exhaustive,
    is_mds_matrix,
    make_chain_eta,
    make_chain_spec,
    make_plus_twisted,
    make_power_basis_eta,
    make_power_basis_spec,
    make_star_twisted,
    mds_check,
    plus_k_sum_obstruction,
    minimum_distance,
    plus_mds_condition,
    star_mds_condition,
    sum_product_free_check,
)
from trs.services.twisted_code import generator_canonical


def _inverse_outside(spec, V):
    GF = spec.GF
    return next(e for e in range(1, spec.q) if int(GF(e) ** -1) not in V)


class TestExhaustive:
    def test_reed_solomon_is_mds(self, gf13):
        assert is_mds_exhaustive(TwistedCode(gf13, 7, 3, tuple(range(7))), cross_check=True)

    def test_dependent_columns(self, small_code):
        verdict = mds_check(small_code, MdsMethod.EXHAUSTIVE)
        assert not verdict.mds
        assert verdict.witness == (2, 3)
        assert minimum_distance(generator_canonical(small_code)) < 3

    @pytest.mark.parametrize("eta, expected", [(1, True), (3, False)])
    def test_dimension_one(self, gf7, eta, expected):
        # g_0 = 1 + eta X vanishes at -1/eta
        code = TwistedCode(gf7, 3, 1, (1, 2, 3), (1,), (0,), (eta,))
        assert is_mds_exhaustive(code, cross_check=True) is expected

    def test_enumeration_budget(self, star_code, monkeypatch):
        monkeypatch.setattr(settings, "ENUMERATION_BUDGET", 10)
        with pytest.raises(TooLarge):
            minimum_distance(generator_canonical(star_code))


class TestStarCondition:
    def test_agrees_with_minor_scan_for_every_eta(self, gf13, squares13):
        alpha = tuple(squares13) + (0,)
        for eta in range(13):
            code = TwistedCode(gf13, 7, 3, alpha, (1,), (0,), (eta,))
            assert star_mds_condition(gf13, 7, 3, alpha, eta) == is_mds_exhaustive(code)

    @pytest.mark.parametrize("instance", range(25))
    def test_agrees_on_random_instances(self, gf13, instance):
        rng = make_rng(13, instance)
        n = int(rng.integers(3, 11))
        k = int(rng.integers(1, n))
        alpha = tuple(int(a) for a in rng.choice(13, size=n, replace=False))
        eta = int(rng.integers(0, 13))
        code = TwistedCode(gf13, n, k, alpha, (1,), (0,), (eta,))
        assert star_mds_condition(gf13, n, k, alpha, eta) == is_mds_exhaustive(code)

    def test_witness_matches_minor_scan(self, small_code):
        verdict = mds_check(small_code)
        assert verdict.method == MdsMethod.STAR
        assert verdict.witness == (2, 3)

    def test_zero_eta(self, gf13):
        assert star_mds_condition(gf13, 4, 2, (1, 2, 3, 4), 0)


class TestPlusCondition:
    def test_agrees_with_minor_scan_for_every_eta(self, gf16):
        alpha = (1, 2, 3, 5, 9, 14)
        for eta in range(16):
            code = TwistedCode(gf16, 6, 3, alpha, (1,), (2,), (eta,))
            assert plus_mds_condition(gf16, 6, 3, alpha, eta) == is_mds_exhaustive(code)

    @pytest.mark.parametrize("instance", range(25))
    def test_agrees_on_random_instances(self, gf16, instance):
        rng = make_rng(16, instance)
        n = int(rng.integers(3, 10))
        k = int(rng.integers(1, n))
        alpha = tuple(int(a) for a in rng.choice(16, size=n, replace=False))
        eta = int(rng.integers(0, 16))
        code = TwistedCode(gf16, n, k, alpha, (1,), (k - 1,), (eta,))
        assert plus_mds_condition(gf16, n, k, alpha, eta) == is_mds_exhaustive(code)

    @pytest.mark.parametrize("eta", range(1, 16, 3))
    def test_extended_code_keeps_the_condition(self, gf16, eta):
        code = TwistedCode(gf16, 6, 3, (0, 1, 2, 4, 7, 11), (1,), (2,), (eta,), at_infinity=True)
        verdict = mds_check(code)
        assert verdict.method == MdsMethod.PLUS
        assert verdict.mds == is_mds_exhaustive(code)

    def test_extended_code_with_zero_eta(self, gf16):
        alpha = tuple(additive_subgroup(gf16, [1, 2, 4]))
        code = TwistedCode(gf16, 8, 3, alpha, (1,), (2,), (0,), at_infinity=True)
        verdict = mds_check(code)
        assert not verdict.mds
        assert verdict.mds == is_mds_exhaustive(code)
        assert verdict.witness == is_mds_matrix(generator_canonical(code))[1] == (0, 1, 8)

    def test_method_must_fit_the_shape(self, small_code):
        with pytest.raises(InvalidCodeParameters):
            mds_check(small_code, MdsMethod.PLUS)


class TestStarFamily:
    @pytest.mark.parametrize("k", range(1, 7))
    def test_squares_of_gf13(self, gf13, k):
        code = make_star_twisted(gf13, 6, k, 2)
        assert code.n == (13 + 1) // 2
        assert is_mds_exhaustive(code)

    def test_eta_in_group(self, gf13):
        # (-1)^3 / 12 = 1 is a square
        with pytest.raises(EtaInGroup):
            make_star_twisted(gf13, 6, 3, 12)

    @pytest.mark.parametrize("order", [5, 12])
    def test_bad_subgroup_order(self, gf13, order):
        with pytest.raises(NotASubgroupOrder):
            make_star_twisted(gf13, order, 3, 2)

    def test_long_codes_are_not_mds(self):
        gf11 = make_field(11)
        rng = make_rng(11)
        for _ in range(10):
            alpha = tuple(int(a) for a in rng.choice(np.arange(1, 11), size=7, replace=False))
            eta = int(rng.integers(1, 11))
            assert not is_mds_exhaustive(TwistedCode(gf11, 7, 3, alpha, (1,), (0,), (eta,)))


class TestPlusFamily:
    def test_index_two_subgroup_of_gf16(self, gf16):
        V = additive_subgroup(gf16, [1, 2, 4])
        eta = _inverse_outside(gf16, V)
        code = make_plus_twisted(gf16, V, 3, eta)
        assert code.n == 8 and is_mds_exhaustive(code)

        extended = make_plus_twisted(gf16, V, 3, eta, at_infinity=True)
        assert extended.length == 9 and is_mds_exhaustive(extended)

    def test_prime_subfield_of_gf9(self):
        gf9 = make_field(3, 2)
        V = subfield_elements(gf9, 3)
        code = make_plus_twisted(gf9, V, 1, _inverse_outside(gf9, V))
        assert code.n == 3 and is_mds_exhaustive(code)

    def test_eta_inverse_in_group(self, gf16):
        with pytest.raises(EtaInverseInGroup):
            make_plus_twisted(gf16, list(range(8)), 3, 1)

    def test_not_a_subgroup(self, gf16):
        with pytest.raises(NotAdditiveSubgroup):
            make_plus_twisted(gf16, [0, 1, 2], 2, 5)


class TestKSumGenerators:
    def test_whole_group(self, gf13):
        assert is_k_sum_generator(gf13, range(1, 13), 1, "mul")
        assert is_k_sum_generator(gf13, range(13), 1, "add")

    def test_large_set_forces_non_mds(self):
        gf11 = make_field(11)
        S = [1, 2, 3, 4, 5, 6]
        assert is_k_sum_generator(gf11, S, 3, "mul")
        for eta in range(1, 11):
            assert not is_mds_exhaustive(TwistedCode(gf11, 6, 3, tuple(S), (1,), (0,), (eta,)))

    def test_subgroup_is_not_a_generator(self):
        squares = [1, 3, 4, 5, 9]
        assert not is_k_sum_generator(make_field(11), squares, 2, "mul")

    def test_needs_k_elements(self, gf13):
        with pytest.raises(InfeasibleParameters):
            is_k_sum_generator(gf13, [1, 2], 3, "mul")

    def test_budget(self, gf13, monkeypatch):
        monkeypatch.setattr(settings, "K_SUM_BUDGET", 10)
        with pytest.raises(TooLarge):
            is_k_sum_generator(gf13, range(1, 13), 3, "mul")


class TestSumProductFree:
    def test_single_eta(self):
        emb = embed_subfield(make_field(2), make_field(2, 2))
        assert sum_product_free_check([2], emb)
        assert not sum_product_free_check([1], emb)

    def test_budget(self, monkeypatch):
        emb = embed_subfield(make_field(2), make_field(2, 2))
        monkeypatch.setattr(settings, "SUM_PRODUCT_BUDGET", 2)
        with pytest.raises(TooLarge):
            sum_product_free_check([2, 3], emb)


class TestChains:
    def test_gf2_in_gf4(self):
        cs = make_chain_spec(2, [1, 2])
        eta = make_chain_eta(cs)
        assert eta == [2]
        assert sum_product_free_check(eta, cs.embeddings[0])

    @pytest.mark.parametrize("k, t, h", [(1, (1, 2), (0, 0)), (2, (1, 1), (0, 1))])
    def test_three_step_chain_gives_mds(self, k, t, h):
        cs = make_chain_spec(3, [1, 2, 4])
        eta = make_chain_eta(cs)
        assert len(eta) == 2
        assert sum_product_free_check(eta, cs.embeddings[0])
        code = TwistedCode(cs.top, 3, k, tuple(cs.base_points()), t, h, tuple(eta))
        assert is_mds_exhaustive(code)

    def test_trivial_chain(self):
        assert make_chain_eta(make_chain_spec(2, [2])) == []

    def test_chain_must_be_proper(self):
        with pytest.raises(DegreeMismatch):
            make_chain_spec(2, [2, 3])


class TestPowerBasis:
    def test_single_scalar(self):
        pb = make_power_basis_spec(2, 1, 2, [1])
        assert make_power_basis_eta(pb) == [pb.psi]

    @pytest.mark.parametrize("p, m0, m, scalars", [(2, 1, 3, [1, 1]), (2, 2, 6, [1, 2]), (3, 1, 3, [1, 2])])
    def test_sum_product_free(self, p, m0, m, scalars):
        pb = make_power_basis_spec(p, m0, m, scalars)
        assert sum_product_free_check(make_power_basis_eta(pb), pb.embedding)

    @pytest.mark.parametrize("k, t, h", [(1, (1, 2), (0, 0)), (2, (1, 1), (0, 1))])
    def test_codes_over_the_subfield_are_mds(self, k, t, h):
        pb = make_power_basis_spec(3, 1, 3, [1, 2])
        eta = make_power_basis_eta(pb)
        code = TwistedCode(pb.sup, 3, k, tuple(pb.base_points()), t, h, tuple(eta))
        assert is_mds_exhaustive(code)

    def test_degree_must_exceed_ell(self):
        assert make_power_basis_spec(2, 1, 3, [1, 1]).degree == 3
        with pytest.raises(InfeasibleParameters):
            make_power_basis_spec(2, 1, 2, [1, 1])


def test_additive_k_sum_obstruction(gf7):
    # every residue mod 7 is a sum of two distinct elements of 0..5
    alpha = (0, 1, 2, 3, 4, 5)
    assert plus_k_sum_obstruction(gf7, alpha, 2)
    for eta in range(1, 7):
        assert not is_mds_exhaustive(TwistedCode(gf7, 6, 2, alpha, (1,), (1,), (eta,)))
