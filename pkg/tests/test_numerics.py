"""Estimator tests: windowed sums against direct oracles and closed forms.

``empirical_amplitude`` groups the exponential sum by residue classes; the
oracle here is the ungrouped sum evaluated with floating exponentials, so
agreement to 1e-10 exercises the grouping and the exact phase tables at
once.  Convergence, symmetry, and the layer-sum approximant round out the
estimator contracts.
"""

import math

import numpy as np
import pytest

from limitper import chair, numerics, period_doubling as pd
from limitper.dyadic import Dyadic, DyadicPoint2, module_box, module_interval
from limitper.subst import PatternWindow


def _direct_amplitude(comb: numerics.WeightedComb, k) -> complex:
    """Ungrouped exponential sum, the definition taken literally."""
    half = comb.half
    weights = comb.weight_array()
    positions = np.arange(-half, half + 1, dtype=np.float64)
    if comb.dim == 1:
        kernel = np.exp(-2j * math.pi * float(k.value) * positions)
        return complex(np.sum(weights * kernel)) / (2 * half + 1)
    kx, ky = (float(v) for v in k.value)
    kernel = np.exp(-2j * math.pi * (ky * positions[:, None] + kx * positions[None, :]))
    return complex(np.sum(weights * kernel)) / float((2 * half + 1) ** 2)


# ---------------------------------------------------------------------------
# Comb construction
# ---------------------------------------------------------------------------


class TestWeightedComb:
    def test_validation(self):
        with pytest.raises(ValueError, match="cube"):
            numerics.WeightedComb(
                PatternWindow((-1, -1), np.zeros((3, 5), dtype=np.uint8)), (1,)
            )
        with pytest.raises(ValueError, match="odd"):
            numerics.WeightedComb(PatternWindow((-2,), np.zeros(4, dtype=np.uint8)), (1,))
        with pytest.raises(ValueError, match="centred"):
            numerics.WeightedComb(PatternWindow((0,), np.zeros(5, dtype=np.uint8)), (1,))
        with pytest.raises(ValueError, match="weight"):
            numerics.WeightedComb(PatternWindow((-1,), np.array([0, 1, 0], dtype=np.uint8)), (1,))

    def test_weight_array_lookup(self):
        comb = numerics.WeightedComb(
            PatternWindow((-1,), np.array([0, 1, 0], dtype=np.uint8)), (2, -1j)
        )
        assert comb.weight_array().tolist() == [2 + 0j, -1j, 2 + 0j]

    def test_residue_counts_are_complete(self):
        comb = numerics.pd_comb(64, (1, -1))
        for modulus in (1, 2, 4, 8):
            counts = comb.residue_counts(modulus)
            assert counts.shape == (2, modulus)
            assert counts.sum() == 129
        grid = numerics.chair_comb(8, (1, 1, 1, 1))
        counts = grid.residue_counts(4)
        assert counts.shape == (4, 4, 4)
        assert counts.sum() == 17 * 17

    def test_builders(self):
        comb = numerics.pd_comb(8, (1, 0))
        assert comb.dim == 1 and comb.half == 8
        grid = numerics.chair_comb(4, (1, 2, 3, 4))
        assert grid.dim == 2 and grid.half == 4
        assert grid.window.label_at((0, 0)) == 0


# ---------------------------------------------------------------------------
# Autocorrelation estimator
# ---------------------------------------------------------------------------


class TestEmpiricalAutocorrelation:
    def test_constant_comb_counts_overlap(self):
        comb = numerics.pd_comb(8, (1, 1))
        assert numerics.empirical_autocorrelation(comb, 0) == pytest.approx(1.0)
        # 17-cell window, shift 3: 14 overlapping terms over 17.
        assert numerics.empirical_autocorrelation(comb, 3) == pytest.approx(14 / 17)
        assert numerics.empirical_autocorrelation(comb, -3) == pytest.approx(14 / 17)

    def test_constant_comb_in_the_plane(self):
        comb = numerics.chair_comb(8, (1, 1, 1, 1))
        got = numerics.empirical_autocorrelation(comb, (1, 0))
        assert got == pytest.approx(16 * 17 / 17**2)

    def test_balanced_chain_values(self):
        comb = numerics.pd_comb(1 << 18, (1, -1))
        assert numerics.empirical_autocorrelation(comb, 3) == pytest.approx(
            -1 / 3, abs=0.01
        )
        assert numerics.empirical_autocorrelation(comb, 4) == pytest.approx(
            2 / 3, abs=0.01
        )
        assert numerics.empirical_autocorrelation(comb, 0) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_shift_validation(self):
        comb = numerics.pd_comb(16, (1, -1))
        with pytest.raises(ValueError, match="outside"):
            numerics.empirical_autocorrelation(comb, 9)
        with pytest.raises(TypeError):
            numerics.empirical_autocorrelation(comb, (1, 0))
        grid = numerics.chair_comb(8, (1, 1, 1, 1))
        with pytest.raises(ValueError):
            numerics.empirical_autocorrelation(grid, (1, 0, 0))
        with pytest.raises(ValueError, match="outside"):
            numerics.empirical_autocorrelation(grid, (0, 5))

    def test_hermitian_symmetry(self):
        comb = numerics.pd_comb(256, (1 + 0.5j, -0.25 - 1j))
        for z in range(0, 65, 7):
            plus = numerics.empirical_autocorrelation(comb, z)
            minus = numerics.empirical_autocorrelation(comb, -z)
            assert minus == pytest.approx(plus.conjugate(), abs=1e-12)
        grid = numerics.chair_comb(32, (1, 1j, -1, -1j))
        for z in ((3, 1), (-2, 5), (0, 7)):
            plus = numerics.empirical_autocorrelation(grid, z)
            minus = numerics.empirical_autocorrelation(grid, (-z[0], -z[1]))
            assert minus == pytest.approx(plus.conjugate(), abs=1e-12)

    def test_zero_shift_dominates(self):
        comb = numerics.pd_comb(1 << 12, (1.5, -0.5 + 2j))
        peak = abs(numerics.empirical_autocorrelation(comb, 0))
        for z in range(1, 33):
            assert abs(numerics.empirical_autocorrelation(comb, z)) <= peak + 1e-12


# ---------------------------------------------------------------------------
# Amplitude estimator
# ---------------------------------------------------------------------------


class TestEmpiricalAmplitude:
    def test_matches_the_direct_sum_on_the_chain(self):
        comb = numerics.pd_comb(64, (1 + 0.5j, -1))
        points = module_interval(3, 0, 1, include_hi=False) + [Dyadic(5, 3), Dyadic(-3, 2)]
        for k in points:
            grouped = numerics.empirical_amplitude(comb, k)
            direct = _direct_amplitude(comb, k)
            assert grouped == pytest.approx(direct, abs=1e-10)

    def test_matches_the_direct_sum_on_the_grid(self):
        comb = numerics.chair_comb(16, (1, 1j, -0.5, 2 - 1j))
        for k in module_box(2, (0, 1), include_hi=False):
            grouped = numerics.empirical_amplitude(comb, k)
            direct = _direct_amplitude(comb, k)
            assert grouped == pytest.approx(direct, abs=1e-10)

    def test_wave_number_type_checks(self):
        comb = numerics.pd_comb(8, (1, 0))
        grid = numerics.chair_comb(4, (1, 1, 1, 1))
        with pytest.raises(TypeError):
            numerics.empirical_amplitude(comb, DyadicPoint2(0, 0, 0))
        with pytest.raises(TypeError):
            numerics.empirical_amplitude(grid, Dyadic(0))
        with pytest.raises(TypeError):
            numerics.empirical_amplitude(comb, 0.5)

    def test_chain_estimates_approach_the_closed_forms(self):
        comb = numerics.pd_comb(1 << 16, (1, 0))
        assert numerics.empirical_amplitude(comb, Dyadic(0)) == pytest.approx(
            2 / 3, abs=0.005
        )
        balanced = numerics.pd_comb(1 << 16, (1, -1))
        assert numerics.empirical_amplitude(balanced, Dyadic(1, 1)) == pytest.approx(
            2 / 3, abs=0.01
        )

    def test_grid_estimate_of_the_lattice_comb(self):
        comb = numerics.chair_comb(256, (1, 1, 1, 1))
        assert numerics.empirical_amplitude(comb, DyadicPoint2(1, 1, 1)) == pytest.approx(
            0, abs=0.01
        )
        assert numerics.empirical_amplitude(comb, DyadicPoint2(1, 0, 0)) == pytest.approx(
            1, abs=0.01
        )

    def test_error_does_not_grow_under_window_doubling(self):
        k = Dyadic(1, 2)
        expected = pd.amplitudes(k).a - pd.amplitudes(k).b
        errors = []
        for half in (1 << 12, 1 << 13, 1 << 14, 1 << 15):
            comb = numerics.pd_comb(half, (1, -1))
            errors.append(abs(numerics.empirical_amplitude(comb, k) - expected))
        for before, after in zip(errors, errors[1:]):
            assert after <= 1.1 * before + 1e-12

    def test_determinism_across_rebuilds(self):
        first = numerics.empirical_amplitude(
            numerics.pd_comb(1 << 12, (1, -1)), Dyadic(3, 4)
        )
        second = numerics.empirical_amplitude(
            numerics.pd_comb(1 << 12, (1, -1)), Dyadic(3, 4)
        )
        assert first == second


# ---------------------------------------------------------------------------
# Layer-sum approximant
# ---------------------------------------------------------------------------


class TestApproximant:
    def test_reference_values_at_twenty_levels(self):
        assert numerics.approximant_amplitude_chair(
            20, 0, DyadicPoint2(0, 0, 0)
        ) == pytest.approx(0.25, abs=1e-6)
        assert numerics.approximant_amplitude_chair(
            20, 2, DyadicPoint2(1, 0, 1)
        ) == pytest.approx(-0.125, abs=1e-6)
        assert numerics.approximant_amplitude_chair(
            20, 1, DyadicPoint2(1, 0, 2)
        ) == pytest.approx((1 - 1j) / 32, abs=1e-6)

    def test_validation(self):
        with pytest.raises(ValueError):
            numerics.approximant_amplitude_chair(-1, 0, DyadicPoint2(0, 0, 0))
        with pytest.raises(ValueError):
            numerics.approximant_amplitude_chair(4, 7, DyadicPoint2(0, 0, 0))

    def test_geometric_truncation_error(self):
        # The discarded tail is bounded by 2^-(levels+2), uniformly in k.
        for k in (DyadicPoint2(0, 0, 0), DyadicPoint2(1, 1, 1), DyadicPoint2(3, 1, 3)):
            closed = chair.amplitudes(k).values
            for levels in (8, 12, 16, 20):
                for colour in range(4):
                    error = abs(
                        numerics.approximant_amplitude_chair(levels, colour, k)
                        - closed[colour]
                    )
                    assert error <= 2.0 ** (-levels - 2)

    def test_deep_truncation_reaches_1e9_on_coarse_points(self):
        for k in module_box(1, (-1, 1)):
            closed = chair.amplitudes(k).values
            for colour in range(4):
                got = numerics.approximant_amplitude_chair(28, colour, k)
                assert got == pytest.approx(closed[colour], abs=1e-9)

    def test_full_sweep_within_1e6(self):
        worst = 0.0
        for k in module_box(3, (-1, 1)):
            closed = chair.amplitudes(k).values
            for colour in range(4):
                got = numerics.approximant_amplitude_chair(20, colour, k)
                worst = max(worst, abs(got - closed[colour]))
        assert worst <= 1e-6


# ---------------------------------------------------------------------------
# Comparison reports
# ---------------------------------------------------------------------------


class TestCompare:
    def test_empty_point_list(self):
        report = numerics.compare(lambda k: 1, lambda k: 1, [])
        assert report.records == ()
        assert report.max_error == 0.0
        assert report.mean_error == 0.0

    def test_statistics(self):
        points = [Dyadic(0), Dyadic(1, 1)]
        report = numerics.compare(
            lambda k: float(k.value),
            lambda k: float(k.value) + 0.25,
            points,
            window_size=17,
        )
        assert report.window_size == 17
        assert [r.k for r in report.records] == points
        assert report.max_error == pytest.approx(0.25)
        assert report.mean_error == pytest.approx(0.25)
        for record in report.records:
            assert record.abs_error == abs(record.closed_form - record.empirical)

    def test_closed_vs_empirical_sweep(self):
        comb = numerics.pd_comb(1 << 14, (1, -1))
        points = module_interval(4, 0, 1, include_hi=False)
        report = numerics.compare(
            lambda k: pd.amplitudes(k).a - pd.amplitudes(k).b,
            lambda k: numerics.empirical_amplitude(comb, k),
            points,
            window_size=(1 << 15) + 1,
        )
        assert report.max_error <= 0.05
        assert len(report.records) == 16
