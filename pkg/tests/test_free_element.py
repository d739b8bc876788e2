import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipfree.free_element import (
    FreeElement,
    Molecule,
    NormBracket,
    delta,
    two_point_norm_complex_bracket,
    two_point_norm_real,
)
from lipfree.norm_oracle import real_norm_lp

from .conftest import random_metric_space


class TestCanonicalForm:
    def test_base_terms_dropped(self, tiny_space):
        assert delta(tiny_space, 0).is_zero

    def test_zero_coefficients_dropped(self, tiny_space):
        g = FreeElement(tiny_space, {1: 0.0, 2: 3.0})
        assert g.support() == {2}

    def test_terms_sorted_and_immutable(self, tiny_space):
        g = FreeElement(tiny_space, {3: 1.0, 1: 2.0})
        assert list(g.terms) == [1, 3]
        with pytest.raises(TypeError):
            g.terms[1] = 5.0

    def test_out_of_range_index(self, tiny_space):
        with pytest.raises(ValueError):
            FreeElement(tiny_space, {9: 1.0})


class TestAlgebra:
    def test_add_merges_and_cancels(self, tiny_space):
        g = FreeElement(tiny_space, {1: 2.0, 2: 1.0})
        h = FreeElement(tiny_space, {1: -2.0, 3: 1.0})
        assert (g + h).terms == FreeElement(tiny_space, {2: 1.0, 3: 1.0}).terms

    def test_scalar_multiplication(self, tiny_space):
        g = FreeElement(tiny_space, {1: 2.0})
        assert (0.5 * g).coefficient(1) == 1.0
        assert (0 * g).is_zero

    def test_subtraction_and_negation(self, tiny_space):
        g = FreeElement(tiny_space, {1: 2.0})
        assert (g - g).is_zero
        assert (-g).coefficient(1) == -2.0

    def test_real_imag_split(self, tiny_space):
        g = FreeElement(tiny_space, {1: 2 + 3j})
        assert g.real_part().coefficient(1) == 2.0
        assert g.imag_part().coefficient(1) == 3.0
        assert not g.is_real and g.real_part().is_real

    def test_cross_space_rejected(self, tiny_space, rng):
        other = random_metric_space(rng, 4)
        with pytest.raises(ValueError):
            FreeElement(tiny_space, {1: 1.0}) + FreeElement(other, {1: 1.0})

    def test_json_round_trip(self, tiny_space):
        g = FreeElement(tiny_space, {1: 2 + 3j, 3: -1.0})
        back = FreeElement.from_json(tiny_space, g.to_json())
        assert back.terms == g.terms


class TestNormBracket:
    def test_empty_bracket_rejected(self):
        with pytest.raises(ValueError):
            NormBracket(2.0, 1.0)

    def test_properties(self):
        br = NormBracket(1.0, 3.0)
        assert br.midpoint == 2.0 and br.width == 2.0 and not br.is_exact
        assert br.contains(1.0) and br.contains(3.0) and not br.contains(3.5)


class TestTwoPointNorm:
    def test_single_point_special_case(self, tiny_space):
        # with b = 0 the formula reduces to |a| d(x, 0)
        assert two_point_norm_real(tiny_space, 2.0, 0.0, 1, 2) == 2.0 * tiny_space.d0(1)

    def test_rejects_degenerate_pairs(self, tiny_space):
        with pytest.raises(ValueError):
            two_point_norm_real(tiny_space, 1.0, 1.0, 1, 1)
        with pytest.raises(ValueError):
            two_point_norm_real(tiny_space, 1.0, 1.0, 0, 1)

    @settings(max_examples=100, deadline=None)
    @given(
        seed=st.integers(0, 10**6),
        a=st.floats(-5, 5),
        b=st.floats(-5, 5),
    )
    def test_matches_lp_oracle(self, seed, a, b):
        rng = np.random.default_rng(seed)
        space = random_metric_space(rng, 4)
        got = two_point_norm_real(space, a, b, 1, 2)
        want = real_norm_lp(FreeElement(space, {1: a, 2: b}))
        assert got == pytest.approx(want, rel=1e-9, abs=1e-9)

    def test_complex_bracket_shape(self, tiny_space):
        br = two_point_norm_complex_bracket(tiny_space, 1 + 1j, -2j, 1, 2)
        assert br.hi == pytest.approx(2.0 * br.lo)

    def test_complex_bracket_contains_real_value(self, tiny_space):
        v = two_point_norm_real(tiny_space, 1.5, -0.5, 1, 2)
        br = two_point_norm_complex_bracket(tiny_space, 1.5, -0.5, 1, 2)
        assert br.contains(v)


class TestMolecule:
    def test_rejects_equal_points(self, tiny_space):
        with pytest.raises(ValueError):
            Molecule(tiny_space, 1, 1)

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 10**6))
    def test_norm_at_most_one(self, seed):
        rng = np.random.default_rng(seed)
        space = random_metric_space(rng, 5)
        x, y = rng.choice(5, size=2, replace=False)
        mol = Molecule(space, int(x), int(y)).element()
        assert real_norm_lp(mol) <= 1.0 + 1e-9

    def test_base_molecule_is_normalized_delta(self, tiny_space):
        mol = Molecule(tiny_space, 1, 0).element()
        assert real_norm_lp(mol) == pytest.approx(1.0, rel=1e-12)
