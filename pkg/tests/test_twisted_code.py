import numpy as np
import pytest

from trs.core.exceptions import InfeasibleParameters, InvalidCodeParameters, LengthMismatch, SingularLeftBlock
from trs.models.code import TwistedCode
from trs.models.field import to_ints
from trs.services.mds_families import is_mds_exhaustive
from trs.services.polynomial import to_coeffs
from trs.services.twisted_code import (
    basis_polys,
    code_from_block,
    code_from_params,
    code_to_params,
    encode,
    generator_canonical,
    grs_generator,
    random_mds_search,
    sample_random_code,
    systematic_form,
    twisted_poly,
)


class TestValidation:
    @pytest.mark.parametrize(
        "n, k, alpha, t, h, eta",
        [
            (4, 4, (1, 2, 3, 4), (), (), ()),
            (4, 2, (1, 1, 3, 4), (), (), ()),
            (4, 2, (1, 2, 3, 4), (3,), (0,), (1,)),
            (4, 2, (1, 2, 3, 4), (1,), (2,), (1,)),
            (4, 2, (1, 2, 3, 4), (1, 1), (0, 0), (1, 2)),
            (4, 2, (1, 2, 3, 4), (1,), (0,), ()),
            (4, 2, (1, 2, 3, 9), (), (), ()),
        ],
    )
    def test_invalid_parameters(self, gf7, n, k, alpha, t, h, eta):
        with pytest.raises(InvalidCodeParameters):
            TwistedCode(gf7, n, k, alpha, t, h, eta)

    def test_infinity_needs_one_twist(self, gf7):
        with pytest.raises(InvalidCodeParameters):
            TwistedCode(gf7, 4, 2, (1, 2, 3, 4), at_infinity=True)

    def test_lists_are_normalised(self, gf7):
        code = TwistedCode(gf7, 4, 2, [1, 2, 3, 4], [1], [0], [3])
        assert code.alpha == (1, 2, 3, 4) and code.ell == 1
        assert hash(code) == hash(TwistedCode(gf7, 4, 2, (1, 2, 3, 4), (1,), (0,), (3,)))


class TestGenerator:
    def test_basis_polynomials(self, small_code):
        g0, g1 = basis_polys(small_code)
        assert to_coeffs(g0) == [1, 0, 3]
        assert to_coeffs(g1) == [0, 1]

    def test_canonical_generator(self, small_code):
        assert to_ints(generator_canonical(small_code)) == [[4, 6, 0, 0], [1, 2, 3, 4]]

    def test_reed_solomon_is_vandermonde(self, gf7):
        code = TwistedCode(gf7, 4, 3, (1, 2, 3, 4))
        assert to_ints(generator_canonical(code)) == [[1, 1, 1, 1], [1, 2, 3, 4], [1, 4, 2, 2]]

    def test_encode_matches_twisted_polynomial(self, small_code):
        codeword = encode(small_code, [1, 1])
        assert to_ints(codeword) == [5, 1, 3, 4]
        f = twisted_poly(small_code, small_code.GF([1, 1]))
        assert to_ints(f(small_code.alpha_array)) == [5, 1, 3, 4]

    def test_message_length(self, small_code):
        with pytest.raises(LengthMismatch):
            encode(small_code, [1, 2, 3])

    def test_systematic_form(self, small_code):
        G = generator_canonical(small_code)
        A = systematic_form(small_code)
        assert np.array_equal(G[:, :2] @ A, G[:, 2:])

    def test_singular_left_block(self, gf7):
        code = TwistedCode(gf7, 4, 2, (3, 4, 1, 2), (1,), (0,), (3,))
        with pytest.raises(SingularLeftBlock):
            systematic_form(code)

    def test_evaluation_at_infinity(self, gf7):
        code = TwistedCode(gf7, 4, 2, (1, 2, 3, 4), (1,), (0,), (3,), at_infinity=True)
        G = generator_canonical(code)
        assert code.length == 5 and G.shape == (2, 5)
        assert to_ints(G[:, 4]) == [3, 0]

    def test_grs_generator_needs_nonzero_multipliers(self, gf7):
        with pytest.raises(InfeasibleParameters):
            grs_generator(gf7, (1, 2, 3), (1, 0, 1), 2)

    def test_code_from_block(self, gf7):
        GF = gf7.GF
        X = GF.Zeros((2, 2))
        X[0, 0] = 3
        code = code_from_block(gf7, (1, 2, 3, 4), X)
        assert (code.t, code.h, code.eta) == ((1,), (0,), (3,))


class TestSampling:
    def test_seeded_sampling_is_reproducible(self, gf13):
        a = sample_random_code(gf13, 12, 4, 2, seed=11)
        b = sample_random_code(gf13, 12, 4, 2, seed=11)
        assert a == b
        assert 0 not in a.alpha and 0 not in a.eta
        assert len(set(zip(a.h, a.t))) == 2

    def test_sampling_needs_room(self, gf13):
        with pytest.raises(InfeasibleParameters):
            sample_random_code(gf13, 13, 4, 1, seed=1)
        with pytest.raises(InfeasibleParameters):
            sample_random_code(gf13, 4, 3, 4, seed=1)

    def test_params_round_trip(self, gf13):
        code = sample_random_code(gf13, 10, 3, 2, seed=5)
        assert code_from_params(code_to_params(code)) == code

    def test_random_mds_search_only_returns_mds_codes(self, gf7):
        found = random_mds_search(gf7, 4, 2, [1], [0], attempts=10, seed=3)
        assert all(is_mds_exhaustive(code) for code in found)
