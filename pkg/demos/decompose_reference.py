"""Walk through the decomposition of the bundled reference signal.

Embeds the adjusted military-by-age signal (N=40) with window length 20,
inspects the singular spectrum and the advisory heuristics, and
reconstructs the four components of the reference grouping.
"""

import numpy as np

from ssamask import fixtures, ssa, textio

signal = fixtures.adjusted_signal()
print(f"signal: {signal.series.label}, N={len(signal)}")
print(f"counts: {list(signal.counts)}\n")

trajectory = ssa.embed(signal.series, fixtures.WINDOW_LENGTH)
print(f"trajectory matrix: {trajectory.cells.shape[0]} x {trajectory.cells.shape[1]} (Hankel)")

decomposition = ssa.decompose(trajectory)
print(f"effective rank: {decomposition.effective_rank}")
print("singular spectrum:")
for i, sv in enumerate(decomposition.singular_values, start=1):
    print(f"  {i:2d}  {sv:10.3f}  {'#' * int(50 * sv / decomposition.singular_values[0])}")

advice = ssa.advise_grouping(decomposition)
print(f"\nadvisory pairs:      {list(advice.periodic_pairs)}")
print(f"advisory noise from: index {advice.noise_cutoff}")
print(f"trend candidates:    {list(advice.trend_candidates)}")

grouping = textio.parse_grouping(fixtures.GROUPING_TEXT, trend_subset=1)
components = ssa.reconstruct(decomposition, grouping)
print(f"\ngrouping {fixtures.GROUPING_TEXT}:")
for subset, component in zip(grouping.subsets, components):
    period = ssa.estimate_period(component)
    span = component.values.max() - component.values.min()
    print(
        f"  subset {str(subset):>30}  range {span:8.2f}  "
        f"period {period if period is not None else '-'}"
    )

total = sum(c.values for c in components)
print(f"\nreconstruction error: {np.max(np.abs(total - signal.series.values)):.2e}")
