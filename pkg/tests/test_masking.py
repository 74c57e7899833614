import numpy as np
import pytest

from ssamask import fixtures
from ssamask.errors import GroupingError, ParameterError
from ssamask.masking import (
    MaskPlan,
    TrendSpec,
    detect_extremes,
    evaluate_utility,
    generate_replacement_trend,
    mask_signal,
)
from ssamask.ssa import Grouping, Series
from ssamask.microdata import QuantitySignal


def signal_from(values, labels=None):
    labels = labels or tuple(str(i + 1) for i in range(len(values)))
    return QuantitySignal(series=Series(values, label="q"), parameter_labels=labels)


class TestTrendSpec:
    def test_unknown_mode_rejected(self):
        with pytest.raises(ParameterError):
            TrendSpec(mode="wavelet")

    def test_explicit_needs_values(self):
        with pytest.raises(ParameterError):
            TrendSpec(mode="explicit")

    def test_plateau_needs_positive_cap(self):
        with pytest.raises(ParameterError):
            TrendSpec(mode="plateau_smooth", cap=0.0)

    def test_scale_needs_positive_factor(self):
        with pytest.raises(ParameterError):
            TrendSpec(mode="scale", factor=-1.0)


class TestMaskPlan:
    def test_requires_designated_trend(self):
        grouping = Grouping(subsets=((1, 2), (3, 4)))
        with pytest.raises(GroupingError):
            MaskPlan(
                window_length=10,
                grouping=grouping,
                trend_spec=TrendSpec(mode="scale", factor=0.5),
            )


class TestDetectExtremes:
    def test_hand_built(self):
        sig = signal_from([5, 9, 9, 1, 7])
        assert detect_extremes(sig, 3) == [(2, 9), (3, 9), (5, 7)]

    def test_reference_extremes(self, adjusted_signal):
        positions = [p for p, _ in detect_extremes(adjusted_signal, 4)]
        assert sorted(positions) == [3, 4, 5, 6]

    def test_top_extreme_value(self, adjusted_signal):
        assert detect_extremes(adjusted_signal, 1)[0][1] == 241

    def test_bad_top_k(self, adjusted_signal):
        with pytest.raises(ParameterError):
            detect_extremes(adjusted_signal, 0)


class TestGenerateReplacementTrend:
    def test_explicit_passthrough(self):
        trend = Series([1.0, 2.0, 3.0])
        spec = TrendSpec(mode="explicit", values=(0.5, 0.6, 0.7))
        out = generate_replacement_trend(trend, spec)
        assert np.array_equal(out.values, [0.5, 0.6, 0.7])

    def test_explicit_length_mismatch(self):
        trend = Series([1.0, 2.0, 3.0])
        spec = TrendSpec(mode="explicit", values=(0.5, 0.6))
        with pytest.raises(ParameterError):
            generate_replacement_trend(trend, spec)

    def test_scale_halves(self):
        trend = Series([2.0, 4.0, 6.0])
        out = generate_replacement_trend(trend, TrendSpec(mode="scale", factor=0.5))
        assert np.array_equal(out.values, [1.0, 2.0, 3.0])

    def test_plateau_caps_exceedance(self):
        trend = Series([1.0, 2.0, 9.0, 9.0, 2.0, 1.0, 1.0, 1.0])
        spec = TrendSpec(mode="plateau_smooth", cap=3.0, half_width=1)
        out = generate_replacement_trend(trend, spec)
        assert np.all(out.values <= 3.0 + 1e-12)
        # untouched region past the blend keeps the original trend
        assert np.array_equal(out.values[5:], trend.values[5:])

    def test_plateau_no_exceedance_is_identity(self):
        trend = Series([1.0, 2.0, 2.5])
        spec = TrendSpec(mode="plateau_smooth", cap=5.0)
        out = generate_replacement_trend(trend, spec)
        assert np.array_equal(out.values, trend.values)


class TestMaskSignal:
    def test_reference_masked_signal(self, adjusted_signal, reference_plan):
        masked, components, diagnostics = mask_signal(
            adjusted_signal, reference_plan
        )
        assert tuple(int(v) for v in masked.counts) == fixtures.Q_MASKED
        assert diagnostics["clamped_positions"] == []
        assert masked.parameter_labels == adjusted_signal.parameter_labels

    def test_reference_suppresses_extremes(self, adjusted_signal, reference_plan):
        masked, _, _ = mask_signal(adjusted_signal, reference_plan)
        assert int(np.max(masked.counts)) <= 133
        assert int(np.max(adjusted_signal.counts)) == 241

    def test_rounding_half_away_from_zero(self):
        from ssamask.masking import _round_half_away

        out = _round_half_away(np.array([0.5, 1.5, 2.4, 2.5, -0.5, -1.5]))
        assert np.array_equal(out, [1.0, 2.0, 2.0, 3.0, -1.0, -2.0])

    def test_negative_results_clamped_and_reported(self):
        sig = signal_from([5, 6, 5, 6, 5, 6, 5, 6])
        grouping = Grouping(subsets=((1,), (2,)), trend_index=0)
        plan = MaskPlan(
            window_length=4,
            grouping=grouping,
            trend_spec=TrendSpec(mode="explicit", values=(-10.0,) * 8),
        )
        masked, _, diagnostics = mask_signal(sig, plan)
        assert np.all(masked.counts == 0)
        assert diagnostics["clamped_positions"] == list(range(1, 9))

    def test_identity_replacement_round_trips(self, adjusted_signal, reference_grouping):
        plan = MaskPlan(
            window_length=fixtures.WINDOW_LENGTH,
            grouping=reference_grouping,
            trend_spec=TrendSpec(mode="scale", factor=1.0),
        )
        masked, _, _ = mask_signal(adjusted_signal, plan)
        assert np.array_equal(masked.counts, adjusted_signal.counts)

    def test_masked_components_match_reference(self, adjusted_signal, reference_plan):
        masked, _, _ = mask_signal(adjusted_signal, reference_plan)
        from ssamask.masking import decompose_signal

        _, components = decompose_signal(masked.series, reference_plan)
        for component, expected in zip(components, fixtures.MASKED_COMPONENTS):
            assert np.max(np.abs(component.values - expected)) <= 5e-3


class TestEvaluateUtility:
    def test_reference_report(self, adjusted_signal, reference_plan):
        masked, _, _ = mask_signal(adjusted_signal, reference_plan)
        report = evaluate_utility(adjusted_signal, masked, reference_plan)
        assert len(report.component_deltas) == 3
        fast = report.component_deltas[1]  # subset {5,6}
        assert fast.period_before is not None and fast.period_before <= 5
        assert fast.period_after is not None and fast.period_after <= 5
        slow = report.component_deltas[0]  # subset {3,4}
        assert 18 <= slow.period_before <= 22
        # the edge transient roughly doubles the slow component's half-range
        assert 0.3 <= slow.amplitude_ratio <= 3.0
        assert report.trend_max_abs_change > 50.0

    def test_identity_mask_reports_no_change(self, adjusted_signal, reference_grouping):
        plan = MaskPlan(
            window_length=fixtures.WINDOW_LENGTH,
            grouping=reference_grouping,
            trend_spec=TrendSpec(mode="scale", factor=1.0),
        )
        masked, _, _ = mask_signal(adjusted_signal, plan)
        report = evaluate_utility(adjusted_signal, masked, plan)
        assert report.trend_max_abs_change == pytest.approx(0.0, abs=1e-9)
        for delta in report.component_deltas:
            assert delta.period_before == delta.period_after
            assert delta.amplitude_ratio == pytest.approx(1.0)
            assert delta.phase_shift == 0

    def test_length_mismatch_rejected(self, adjusted_signal, reference_plan):
        other = signal_from([1] * 10)
        with pytest.raises(ParameterError):
            evaluate_utility(adjusted_signal, other, reference_plan)

    def test_to_dict_round_trips_through_json(self, adjusted_signal, reference_plan):
        import json

        masked, _, _ = mask_signal(adjusted_signal, reference_plan)
        report = evaluate_utility(adjusted_signal, masked, reference_plan)
        payload = json.loads(json.dumps(report.to_dict()))
        assert len(payload["spectrum_before"]) == fixtures.WINDOW_LENGTH
        assert payload["components"][0]["label"]
