import numpy as np
import pytest

from trs.core.exceptions import InvalidCodeParameters, NotMultiplicativeGroup, ZeroPointHypothesis
from trs.core.rng import make_rng
from trs.models.code import TwistedCode
from trs.services.duality import (
    dual_generic,
    dual_parity_check,
    dual_twisted,
    reversal_matrix,
    same_row_space,
    scaling_vector,
    star_dual_corollary_code,
    twist_block,
    vandermonde,
    vandermonde_inverse_mult_group,
)
from trs.services.finite_field import make_field, multiplicative_subgroup
from trs.services.mds_families import is_mds_exhaustive
from trs.services.twisted_code import generator_canonical, sample_random_code


def _orthogonal(G, H):
    return not np.any(G @ H.T != 0)


def _block_generator(spec, L, alpha):
    k, r = L.shape
    left = spec.GF.Zeros((k, k + r))
    left[:, :k] = spec.GF.Identity(k)
    left[:, k:] = L
    return left @ vandermonde(spec.GF(list(alpha)), k + r)


class TestVandermondeInverse:
    @pytest.mark.parametrize("p, order", [(5, 4), (13, 6), (17, 8), (5, 1)])
    def test_inverts_the_transpose(self, p, order):
        spec = make_field(p)
        alpha = multiplicative_subgroup(spec, order)
        M = vandermonde_inverse_mult_group(spec, alpha)
        V = vandermonde(spec.GF(alpha), order)
        assert np.array_equal(M @ V.T, spec.GF.Identity(order))

    def test_needs_a_group(self, gf5):
        with pytest.raises(NotMultiplicativeGroup):
            vandermonde_inverse_mult_group(gf5, [1, 2, 3])

    def test_reversal(self, gf5):
        J = reversal_matrix(gf5.GF, 3)
        assert np.array_equal(J @ J, gf5.GF.Identity(3))
        assert int(J[0, 2]) == 1


class TestParityCheck:
    def test_untwisted(self, gf5):
        alpha = [1, 2, 3, 4]
        H = dual_parity_check(gf5, gf5.GF.Zeros((2, 2)), alpha)
        assert _orthogonal(vandermonde(gf5.GF(alpha), 2), H)
        assert np.linalg.matrix_rank(H) == 2

    @pytest.mark.parametrize("seed", range(10))
    def test_arbitrary_blocks(self, seed):
        spec = make_field(17)
        alpha = multiplicative_subgroup(spec, 8)
        k = int(make_rng(seed).integers(1, 8))
        L = spec.GF.Random((k, 8 - k), seed=seed)
        H = dual_parity_check(spec, L, alpha)
        assert _orthogonal(_block_generator(spec, L, alpha), H)
        assert np.linalg.matrix_rank(H) == 8 - k


class TestDualTwisted:
    def test_single_twist_over_gf5(self, gf5):
        code = TwistedCode(gf5, 4, 2, (1, 2, 3, 4), (1,), (1,), (2,))
        params, H = dual_twisted(code)
        assert (params.k, params.t, params.h, params.eta) == (2, (1,), (1,), (3,))
        assert _orthogonal(generator_canonical(code), H)
        assert int(twist_block(code)[1, 0]) == 2
        assert int(twist_block(params.to_code(gf5, code.alpha))[1, 0]) == 3

    def test_dual_of_star_code(self, gf13, squares13):
        code = TwistedCode(gf13, 6, 3, tuple(squares13), (1,), (0,), (2,))
        params, H = dual_twisted(code)
        assert (params.t, params.h, params.eta) == ((3,), (2,), (11,))
        assert _orthogonal(generator_canonical(code), H)

    @pytest.mark.parametrize("seed", range(10))
    def test_involution(self, seed):
        spec = make_field(13)
        alpha = tuple(multiplicative_subgroup(spec, 12))
        rng = make_rng(seed)
        k = int(rng.integers(2, 11))
        base = sample_random_code(spec, 12, k, int(rng.integers(1, 4)), seed=rng)
        code = TwistedCode(spec, 12, k, alpha, base.t, base.h, base.eta)

        params, H = dual_twisted(code)
        back, _ = dual_twisted(params.to_code(spec, alpha))
        assert sorted(zip(back.h, back.t, back.eta)) == sorted(zip(code.h, code.t, code.eta))
        assert same_row_space(dual_generic(code), H)

    def test_scaling_vector(self, gf5):
        code = TwistedCode(gf5, 4, 2, (1, 2, 3, 4), (1,), (1,), (2,))
        # alpha / 4 = -alpha over GF(5)
        assert scaling_vector(code) == [4, 3, 2, 1]

    def test_needs_a_group(self, small_code):
        with pytest.raises(NotMultiplicativeGroup):
            dual_twisted(small_code)

    def test_no_infinity(self, gf5):
        code = TwistedCode(gf5, 4, 2, (1, 2, 3, 4), (1,), (1,), (2,), at_infinity=True)
        with pytest.raises(InvalidCodeParameters):
            dual_twisted(code)


class TestZeroPoint:
    def test_star_code_with_zero(self, star_code):
        with pytest.raises(NotMultiplicativeGroup):
            dual_twisted(star_code)
        params, H = dual_twisted(star_code, allow_zero_point=True)
        assert params.k == 4
        assert _orthogonal(generator_canonical(star_code), H)
        assert np.linalg.matrix_rank(H) == 4
        assert scaling_vector(star_code)[-1] == 12

    def test_hooks_away_from_zero(self, gf13, squares13):
        code = TwistedCode(gf13, 7, 3, (0,) + tuple(squares13), (4, 2), (1, 2), (5, 7))
        params, H = dual_twisted(code, allow_zero_point=True)
        assert _orthogonal(generator_canonical(code), H)

    def test_hypothesis(self, gf13, squares13):
        code = TwistedCode(gf13, 7, 3, tuple(squares13) + (0,), (4,), (0,), (2,))
        with pytest.raises(ZeroPointHypothesis):
            dual_twisted(code, allow_zero_point=True)


class TestGenericDual:
    def test_nullspace_contract(self, small_code):
        H = dual_generic(small_code)
        assert H.shape == (2, 4)
        assert _orthogonal(generator_canonical(small_code), H)

    def test_single_dual_row(self, gf7):
        code = TwistedCode(gf7, 5, 4, (0, 1, 2, 3, 4), (1,), (2,), (6,))
        assert dual_generic(code).shape == (1, 5)


class TestCorollary:
    @pytest.mark.parametrize("k", range(1, 6))
    def test_dual_of_star_family_is_mds(self, gf13, k):
        code = star_dual_corollary_code(gf13, 6, k, 2)
        assert code.t == (6 - k,) and code.h == (k - 1,)
        assert is_mds_exhaustive(code)
