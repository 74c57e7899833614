import math

import numpy as np
import pytest

from ssamask import fixtures
from ssamask.errors import GroupingError, ParameterError
from ssamask.ssa import (
    Grouping,
    Series,
    advise_grouping,
    decompose,
    diagonal_average,
    embed,
    estimate_period,
    reconstruct,
)


def decompose_series(values, window):
    return decompose(embed(Series(values), window))


class TestSeries:
    def test_rejects_short_series(self):
        with pytest.raises(ParameterError):
            Series([1.0, 2.0])

    def test_rejects_non_finite(self):
        with pytest.raises(ParameterError):
            Series([1.0, float("nan"), 3.0])

    def test_values_read_only(self):
        s = Series([1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            s.values[0] = 9.0


class TestEmbed:
    def test_small_hankel(self):
        t = embed(Series([1, 2, 3, 4, 5]), 3)
        assert t.lag_count == 3
        assert np.array_equal(
            t.cells, np.array([[1, 2, 3], [2, 3, 4], [3, 4, 5]], dtype=float)
        )

    def test_reference_signal_endpoints(self, adjusted_signal):
        t = embed(adjusted_signal.series, 20)
        assert t.cells.shape == (20, 21)
        assert t.cells[0, 0] == 2
        assert t.cells[19, 20] == 3

    def test_window_equal_to_length_rejected(self):
        with pytest.raises(ParameterError, match="between 1 and 3"):
            embed(Series([1, 2, 3]), 3)

    def test_window_one_rejected(self):
        with pytest.raises(ParameterError):
            embed(Series([1, 2, 3, 4]), 1)

    def test_hankel_property(self):
        values = np.arange(12.0) ** 2
        t = embed(Series(values), 5)
        for i in range(t.window_length):
            for j in range(t.lag_count):
                assert t.cells[i, j] == values[i + j]


class TestDecompose:
    def test_rank_one_two_by_two(self):
        # S = [[5, 10], [10, 20]] has eigenvalues 25 and 0 (trace 25, det 0)
        d = decompose_series([1.0, 2.0, 4.0], 2)
        assert d.eigenvalues == pytest.approx([25.0, 0.0], abs=1e-9)
        assert d.effective_rank == 1
        assert d.singular_values[0] == pytest.approx(5.0)

    def test_constant_series_rank_one(self):
        d = decompose_series([3.0] * 12, 5)
        assert d.effective_rank == 1
        assert d.eigenvalues[1:] == pytest.approx(np.zeros(4), abs=1e-9)

    def test_reference_spectrum_has_two_close_pairs(self, adjusted_signal):
        d = decompose(embed(adjusted_signal.series, 20))
        sv = d.singular_values
        for i in (2, 4):  # pairs (3,4) and (5,6), zero-based
            gap = (sv[i] - sv[i + 1]) / (sv[i] + sv[i + 1])
            assert gap < 0.06

    def test_eigenvalues_sorted_non_negative(self, adjusted_signal):
        d = decompose(embed(adjusted_signal.series, 13))
        assert np.all(np.diff(d.eigenvalues) <= 1e-9)
        assert np.all(d.eigenvalues >= 0)

    def test_left_vectors_orthonormal(self, adjusted_signal):
        d = decompose(embed(adjusted_signal.series, 20))
        gram = d.left_vectors.T @ d.left_vectors
        assert np.allclose(gram, np.eye(d.effective_rank), atol=1e-9)

    def test_factor_vector_relation(self, adjusted_signal):
        t = embed(adjusted_signal.series, 20)
        d = decompose(t)
        for i in range(d.effective_rank):
            expected = t.cells.T @ d.left_vectors[:, i] / d.singular_values[i]
            assert np.allclose(d.factor_vectors[:, i], expected, atol=1e-9)

    def test_elementary_matrices_sum_to_trajectory(self, adjusted_signal):
        t = embed(adjusted_signal.series, 20)
        d = decompose(t)
        total = sum(
            d.elementary_matrix(i) for i in range(1, d.effective_rank + 1)
        )
        assert np.allclose(total, t.cells, atol=1e-8)

    def test_sign_convention_deterministic(self, adjusted_signal):
        d1 = decompose(embed(adjusted_signal.series, 20))
        d2 = decompose(embed(adjusted_signal.series, 20))
        assert np.array_equal(d1.left_vectors, d2.left_vectors)
        for i in range(d1.effective_rank):
            col = d1.left_vectors[:, i]
            assert col[np.argmax(np.abs(col))] > 0


class TestDiagonalAverage:
    def test_hankel_inversion(self):
        s = diagonal_average([[1, 2], [2, 3]])
        assert np.array_equal(s.values, [1, 2, 3])

    def test_anti_diagonal_means(self):
        s = diagonal_average([[1, 4], [2, 5]])
        assert np.array_equal(s.values, [1, 3, 5])

    def test_empty_matrix_rejected(self):
        with pytest.raises(ParameterError):
            diagonal_average(np.zeros((0, 3)))

    def test_reference_components_sum_at_first_element(self, adjusted_signal):
        # leading values of the four reference components add up to the signal
        total = sum(c[0] for c in fixtures.ADJUSTED_COMPONENTS)
        assert total == pytest.approx(2.000, abs=5e-3)


class TestGrouping:
    def test_overlap_rejected(self):
        with pytest.raises(GroupingError) as err:
            Grouping(subsets=((1, 2), (2, 3)))
        assert err.value.offending_indices == (2,)

    def test_index_beyond_rank_rejected(self, adjusted_signal):
        d = decompose(embed(adjusted_signal.series, 20))
        g = Grouping(subsets=((1, 2), (21,)))
        with pytest.raises(GroupingError) as err:
            reconstruct(d, g)
        assert err.value.offending_indices == (21,)

    def test_trend_subset_exposed(self):
        g = Grouping(subsets=((1, 2), (3, 4)), trend_index=0)
        assert g.trend_subset == (1, 2)


class TestReconstruct:
    def test_identity_reconstruction(self):
        rng = np.random.default_rng(7)
        series = Series(rng.normal(size=30))
        d = decompose(embed(series, 12))
        full = Grouping(subsets=(tuple(range(1, d.effective_rank + 1)),))
        component = reconstruct(d, full).components[0]
        assert np.allclose(
            component.values, series.values, rtol=1e-9, atol=1e-9
        )

    def test_reference_component_leading_values(self, adjusted_signal, reference_grouping):
        d = decompose(embed(adjusted_signal.series, 20))
        components = reconstruct(d, reference_grouping)
        leading = [c.values[0] for c in components]
        assert leading == pytest.approx(
            [-10.345, -2.600, 14.835, 0.110], abs=5e-3
        )

    def test_components_sum_to_signal(self, adjusted_signal, reference_grouping):
        d = decompose(embed(adjusted_signal.series, 20))
        components = reconstruct(d, reference_grouping)
        total = sum(c.values for c in components)
        assert np.allclose(total, adjusted_signal.series.values, atol=1e-9)


class TestAdviseGrouping:
    def test_reference_pairs(self, adjusted_signal):
        d = decompose(embed(adjusted_signal.series, 20))
        advice = advise_grouping(d, pair_tolerance=0.1)
        assert advice.periodic_pairs == ((3, 4), (5, 6))
        assert advice.noise_cutoff == 7
        assert advice.trend_candidates == (1, 2)

    def test_geometric_spectrum_no_pairs(self):
        # synthesize a decomposition-like spectrum via a diagonal trajectory
        from dataclasses import replace

        d = decompose_series(list(np.arange(1.0, 41.0)), 20)
        lam = 2.0 ** -np.arange(20)
        d = replace(d, eigenvalues=lam, effective_rank=20)
        advice = advise_grouping(d, pair_tolerance=0.05)
        assert advice.periodic_pairs == ()

    def test_noise_cutoff_threshold(self):
        from dataclasses import replace

        d = decompose_series(list(np.arange(1.0, 41.0)), 20)
        lam = np.ones(20)
        lam[4:] = 1e-12
        d = replace(d, eigenvalues=lam, effective_rank=20)
        advice = advise_grouping(d, noise_floor=1e-10)
        assert advice.noise_cutoff == 5

    def test_degenerate_decomposition_empty_advice(self):
        from dataclasses import replace

        d = decompose_series([1.0, 2.0, 3.0, 4.0], 2)
        d = replace(d, effective_rank=0)
        advice = advise_grouping(d)
        assert advice.periodic_pairs == ()
        assert advice.trend_candidates == ()

    def test_bad_tolerances_rejected(self, adjusted_signal):
        d = decompose(embed(adjusted_signal.series, 20))
        with pytest.raises(ParameterError):
            advise_grouping(d, pair_tolerance=0.0)
        with pytest.raises(ParameterError):
            advise_grouping(d, noise_floor=1.5)


def oracle_first_acf_peak(values, threshold=0.1):
    """Independent brute-force autocorrelation peak scan (plain Python)."""
    n = len(values)
    mean = sum(values) / n
    x = [v - mean for v in values]
    denom = sum(v * v for v in x)
    if denom == 0:
        return None
    r = [
        sum(x[t] * x[t + lag] for t in range(n - lag)) / denom
        for lag in range(n)
    ]
    for lag in range(1, n - 2):
        right = r[lag + 1] if lag + 1 <= n - 3 else -math.inf
        if r[lag] >= r[lag - 1] and r[lag] >= right and r[lag] > threshold:
            return lag
    return None


class TestEstimatePeriod:
    def test_sine_period_eight(self):
        values = [math.sin(2 * math.pi * k / 8) for k in range(64)]
        assert oracle_first_acf_peak(values) == 8
        assert estimate_period(Series(values)) == 8

    def test_constant_series_none(self):
        assert estimate_period(Series([4.0] * 20)) is None

    def test_reference_slow_component(self):
        period = estimate_period(Series(fixtures.ADJUSTED_COMPONENT_2))
        assert period == oracle_first_acf_peak(fixtures.ADJUSTED_COMPONENT_2)
        assert 18 <= period <= 22

    def test_matches_oracle_on_random_noise(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            values = list(rng.normal(size=40))
            assert estimate_period(Series(values)) == oracle_first_acf_peak(values)

    def test_too_short_rejected(self):
        with pytest.raises(ParameterError):
            estimate_period(Series([1.0, 2.0, 3.0]))
