"""Mask the bundled reference signal with its published replacement trend.

Shows the extremes before and after, the masked integers, and the
per-component utility report.
"""

from ssamask import fixtures, textio
from ssamask.masking import (
    MaskPlan,
    TrendSpec,
    detect_extremes,
    evaluate_utility,
    mask_signal,
)

signal = fixtures.adjusted_signal()
plan = MaskPlan(
    window_length=fixtures.WINDOW_LENGTH,
    grouping=textio.parse_grouping(fixtures.GROUPING_TEXT, trend_subset=1),
    trend_spec=TrendSpec(mode="explicit", values=fixtures.REPLACEMENT_TREND),
)

print("extremes before masking (position=age-16, value):")
for position, value in detect_extremes(signal, 4):
    print(f"  position {position:2d} (age {int(signal.parameter_labels[position - 1])}): {value}")

masked, components, diagnostics = mask_signal(signal, plan)
print(f"\nmasked signal: {list(int(v) for v in masked.counts)}")
print(f"clamped positions: {diagnostics['clamped_positions'] or 'none'}")

print("\nextremes after masking:")
for position, value in detect_extremes(masked, 4):
    print(f"  position {position:2d}: {value}")

report = evaluate_utility(signal, masked, plan)
print(f"\ntrend max |change|: {report.trend_max_abs_change:.2f} "
      f"({100 * report.trend_max_rel_change:.0f}% of the original trend peak)")
print("non-trend components:")
for delta in report.component_deltas:
    print(
        f"  {delta.label}: period {delta.period_before} -> {delta.period_after}, "
        f"amplitude ratio {delta.amplitude_ratio:.2f}, phase shift {delta.phase_shift}"
    )
