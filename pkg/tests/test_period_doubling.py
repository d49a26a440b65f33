"""Doubling-chain tests: labels, autocorrelation, amplitudes, peak mass.

Every closed form here has an independent route: congruence labels against
the substitution fixed point, the autocorrelation recursion against its
closed form, amplitudes against exact identities and Parseval-style mass.
The windowed-sum cross-checks live in test_numerics and the acceptance run.
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from limitper import period_doubling as pd
from limitper.dyadic import Dyadic, module_interval

BALANCED = pd.Weights(1, -1)

_shifts = st.integers(min_value=1, max_value=1 << 40)


# ---------------------------------------------------------------------------
# Labels
# ---------------------------------------------------------------------------


class TestLabels:
    def test_positions_near_the_origin(self):
        # The fixed point reads ...abaa|abaa...: b first appears at 1.
        assert [pd.label(n) for n in range(-4, 4)] == [0, 1, 0, 0, 0, 1, 0, 0]
        assert pd.label(-1) == pd.LETTER_A

    def test_b_occupies_its_residue_classes(self):
        for i in range(1, 8):
            modulus = 4**i
            assert pd.label(2 * 4 ** (i - 1) - 1) == pd.LETTER_B
            assert pd.label(2 * 4 ** (i - 1) - 1 + modulus) == pd.LETTER_B

    @given(st.integers(min_value=-(1 << 30), max_value=1 << 30))
    def test_label_window_matches_label(self, n):
        assert pd.label_window(n, n + 1)[0] == pd.label(n)

    def test_window_agreement_with_the_fixed_point(self):
        iterations = 9
        half = 4**iterations
        window = pd.pattern_window(iterations)
        assert window.origin == (-half,)
        assert np.array_equal(window.labels, pd.label_window(-half, half))

    def test_label_window_rejects_empty_range(self):
        with pytest.raises(ValueError):
            pd.label_window(3, 2)

    def test_letter_frequencies(self):
        labels = pd.label_window(-(1 << 16), 1 << 16)
        assert abs(np.mean(labels == pd.LETTER_A) - 2 / 3) <= 0.005


# ---------------------------------------------------------------------------
# Autocorrelation
# ---------------------------------------------------------------------------


class TestBalancedAutocorrelation:
    def test_base_values(self):
        assert pd.autocorr_balanced(0) == 1
        assert pd.autocorr_balanced(1) == Fraction(-1, 3)
        assert pd.autocorr_balanced(2) == Fraction(1, 3)
        assert pd.autocorr_balanced(4) == Fraction(2, 3)
        assert pd.autocorr_balanced(6) == Fraction(1, 3)

    def test_recursion_equals_closed_form_exhaustively(self):
        for m in range(1, (1 << 12) + 1):
            assert pd.autocorr_balanced(m) == pd.autocorr_balanced_closed_form(m)

    @given(_shifts)
    def test_recursion_equals_closed_form(self, m):
        assert pd.autocorr_balanced(m) == pd.autocorr_balanced_closed_form(m)

    @given(_shifts)
    def test_halving_recursion(self, m):
        assert pd.autocorr_balanced(2 * m) == (1 + pd.autocorr_balanced(m)) / 2

    @given(_shifts)
    def test_odd_shifts_and_symmetry(self, m):
        assert pd.autocorr_balanced(2 * m - 1) == Fraction(-1, 3)
        assert pd.autocorr_balanced(-m) == pd.autocorr_balanced(m)

    @given(_shifts)
    def test_range(self, m):
        value = pd.autocorr_balanced(m)
        assert Fraction(-1, 3) <= value < 1


_reals = st.floats(min_value=-4, max_value=4, allow_nan=False)


class TestWeightedAutocorrelation:
    def test_reference_values(self):
        assert pd.autocorr(0, pd.Weights(1, 0)) == pytest.approx(2 / 3, abs=1e-15)
        assert pd.autocorr(5, pd.Weights(1, 1)) == pytest.approx(1.0, abs=1e-15)
        assert pd.autocorr(3, BALANCED) == pytest.approx(-1 / 3, abs=1e-15)
        assert pd.autocorr(0, BALANCED) == pytest.approx(1.0, abs=1e-15)

    @given(_reals, _reals, st.integers(min_value=-(1 << 20), max_value=1 << 20))
    def test_real_weight_decomposition(self, alpha, beta, z):
        # Splitting w = p + q * sign gives a mean-field term plus the
        # balanced autocorrelation scaled by q^2.
        eta = float(pd.autocorr_balanced(z))
        expected = (
            0.25 * (alpha - beta) ** 2 * eta
            + (3 * (alpha + beta) ** 2 + 2 * (alpha**2 - beta**2)) / 12
        )
        assert pd.autocorr(z, pd.Weights(alpha, beta)) == pytest.approx(
            expected, abs=1e-9
        )

    @given(_reals, _reals)
    def test_zero_shift_is_the_mean_square(self, alpha, beta):
        expected = (2 * abs(alpha) ** 2 + abs(beta) ** 2) / 3
        assert pd.autocorr(0, pd.Weights(alpha, beta)) == pytest.approx(
            expected, abs=1e-9
        )


# ---------------------------------------------------------------------------
# Amplitudes and intensities
# ---------------------------------------------------------------------------


class TestAmplitudes:
    def test_pinned_pairs(self):
        pairs = {
            Dyadic(0): (2 / 3 + 0j, 1 / 3 + 0j),
            Dyadic(1, 1): (1 / 3 + 0j, -1 / 3 + 0j),
            Dyadic(1, 2): (1j / 6, -1j / 6),
            Dyadic(3, 2): (-1j / 6, 1j / 6),
        }
        for k, (amp_a, amp_b) in pairs.items():
            got = pd.amplitudes(k)
            assert got.a == pytest.approx(amp_a, abs=1e-15)
            assert got.b == pytest.approx(amp_b, abs=1e-15)

    def test_pair_sums_to_the_lattice_comb(self):
        # alpha = beta = 1 collapses the chain to the integer lattice, so
        # A + B is 1 on integers and 0 everywhere else, exactly.
        for k in module_interval(8, 0, 1):
            total = pd.amplitudes(k).a + pd.amplitudes(k).b
            assert total == (1 + 0j if k.r == 0 else 0j)

    def test_magnitude_is_lattice_periodic_exactly(self):
        for k in module_interval(8, 0, 1, include_hi=False):
            shifted = Dyadic(k.m + (1 << k.r), k.r)
            assert abs(pd.amplitudes(k).a) == abs(pd.amplitudes(shifted).a)
            assert abs(pd.amplitudes(k).b) == abs(pd.amplitudes(shifted).b)

    def test_magnitude_depends_only_on_the_level(self):
        for r in range(1, 7):
            for m in range(1, 1 << r, 2):
                size = abs(pd.amplitudes(Dyadic(m, r)).a)
                assert size == pytest.approx(2 / (3 * 2**r), abs=1e-15)

    def test_balanced_intensities(self):
        assert pd.intensity(Dyadic(0), BALANCED) == pytest.approx(1 / 9, abs=1e-12)
        assert pd.intensity(Dyadic(1, 1), BALANCED) == pytest.approx(4 / 9, abs=1e-12)
        assert pd.intensity(Dyadic(1, 2), BALANCED) == pytest.approx(1 / 9, abs=1e-12)

    def test_lattice_weights_extinguish_refinements(self):
        ones = pd.Weights(1, 1)
        assert pd.intensity(Dyadic(0), ones) == pytest.approx(1.0, abs=1e-15)
        assert pd.intensity(Dyadic(1, 1), ones) == 0.0
        assert pd.intensity(Dyadic(3, 3), ones) == 0.0


class TestPeakMass:
    def test_balanced_mass_converges_to_one(self):
        masses = [pd.peak_mass(r, BALANCED) for r in range(13)]
        for lower, higher in zip(masses, masses[1:]):
            assert higher >= lower
        assert masses[-1] <= 1 + 1e-9
        assert masses[-1] >= 0.99
        # The tail is geometric: mass(r) = 1 - (8/9) 2^-r for balanced weights.
        assert masses[-1] == pytest.approx(1 - (8 / 9) / 4096, abs=1e-9)

    def test_single_letter_mass_converges_to_the_density_mean(self):
        # Bessel: partial peak masses stay below eta(0) = 2/3 and approach it.
        masses = [pd.peak_mass(r, pd.Weights(1, 0)) for r in range(13)]
        assert all(m <= 2 / 3 + 1e-9 for m in masses)
        assert masses[-1] >= 2 / 3 - 0.01
