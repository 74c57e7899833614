"""Trend replacement masking of quantity signals and utility reporting.

Masking decomposes a signal, swaps its trend component for an
analyst-supplied replacement, and rounds the sum back to integers. The
utility report re-decomposes original and masked signals under the same
window and grouping and compares period, amplitude, and phase of every
non-trend component, leaving any pass/fail policy to the caller.
"""

from dataclasses import dataclass, field

import numpy as np

from . import ssa
from .errors import GroupingError, ParameterError
from .microdata import QuantitySignal
from .ssa import Grouping, Series


@dataclass(frozen=True)
class TrendSpec:
    """How to derive the replacement trend from the extracted one.

    ``explicit`` carries the full replacement vector; ``plateau_smooth``
    caps the leading hump at ``cap`` with a smooth arc blending back into
    the original within ``half_width`` samples; ``scale`` multiplies the
    trend by ``factor``.
    """

    mode: str
    values: tuple | None = None
    cap: float | None = None
    half_width: int | None = None
    factor: float | None = None

    def __post_init__(self):
        if self.mode not in ("explicit", "plateau_smooth", "scale"):
            raise ParameterError(
                f"unknown trend mode {self.mode!r}; expected 'explicit', "
                "'plateau_smooth', or 'scale'"
            )
        if self.mode == "explicit":
            if self.values is None:
                raise ParameterError("explicit trend spec needs values")
            object.__setattr__(
                self, "values", tuple(float(v) for v in self.values)
            )
        elif self.mode == "plateau_smooth":
            if self.cap is None or self.cap <= 0:
                raise ParameterError("plateau cap must be positive")
            hw = 0 if self.half_width is None else int(self.half_width)
            if hw < 0:
                raise ParameterError("blend half-width must be non-negative")
            object.__setattr__(self, "half_width", hw)
        elif self.mode == "scale":
            if self.factor is None or self.factor <= 0:
                raise ParameterError("scale factor must be positive")


@dataclass(frozen=True)
class MaskPlan:
    """Window length + grouping with designated trend + replacement spec."""

    window_length: int
    grouping: Grouping
    trend_spec: TrendSpec

    def __post_init__(self):
        if self.grouping.trend_index is None:
            raise GroupingError("mask plan grouping must designate a trend subset")


@dataclass(frozen=True)
class ComponentDelta:
    """Before/after comparison of one non-trend component."""

    label: str
    period_before: float | None
    period_after: float | None
    amplitude_ratio: float
    phase_shift: int
    degenerate: bool = False


@dataclass(frozen=True)
class UtilityReport:
    """Per-component deltas plus trend and spectrum comparison."""

    component_deltas: tuple
    trend_max_abs_change: float
    trend_max_rel_change: float
    spectrum_before: np.ndarray
    spectrum_after: np.ndarray
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "components": [
                {
                    "label": d.label,
                    "period_before": d.period_before,
                    "period_after": d.period_after,
                    "amplitude_ratio": d.amplitude_ratio,
                    "phase_shift": d.phase_shift,
                    "degenerate": d.degenerate,
                }
                for d in self.component_deltas
            ],
            "trend_max_abs_change": self.trend_max_abs_change,
            "trend_max_rel_change": self.trend_max_rel_change,
            "spectrum_before": list(self.spectrum_before),
            "spectrum_after": list(self.spectrum_after),
            "diagnostics": dict(self.diagnostics),
        }


def detect_extremes(signal, top_k):
    """The ``top_k`` largest signal values with 1-based positions.

    Ordered descending by value; equal values are ordered by position.
    """
    if top_k < 1:
        raise ParameterError("top_k must be at least 1")
    values = signal.series.values
    order = sorted(range(len(values)), key=lambda i: (-values[i], i))
    return [(i + 1, int(values[i])) for i in order[:top_k]]


def generate_replacement_trend(trend, spec):
    """Derive the replacement trend series from the extracted one."""
    values = trend.values
    n = values.size
    if spec.mode == "explicit":
        if len(spec.values) != n:
            raise ParameterError(
                f"explicit replacement trend has {len(spec.values)} values, "
                f"signal trend has {n}"
            )
        return Series(spec.values, label=f"{trend.label} (replaced)")
    if spec.mode == "scale":
        return Series(values * spec.factor, label=f"{trend.label} (scaled)")
    return _plateau_smooth(trend, spec.cap, spec.half_width)


def _plateau_smooth(trend, cap, half_width):
    """Cap the leading exceedance with a smooth arc peaking at ``cap``.

    The arc runs from the sample before the first exceedance to
    ``half_width`` samples past the last one, interpolating the endpoints
    linearly and lifting the midpoint to the cap; everything beyond is the
    original trend, giving a C0-continuous join.
    """
    values = trend.values.copy()
    n = values.size
    over = np.nonzero(values > cap)[0]
    if over.size == 0:
        return Series(values, label=f"{trend.label} (smoothed)")
    first, last = int(over[0]), int(over[-1])
    start = max(first - 1, 0)
    end = min(last + half_width, n - 1)
    left = min(values[start], cap)
    right = min(values[end], cap)
    span = end - start
    if span == 0:
        values[start] = cap
        return Series(values, label=f"{trend.label} (smoothed)")
    for i in range(start, end + 1):
        t = (i - start) / span
        base = left + (right - left) * t
        arc = base + (cap - (left + right) / 2.0) * np.sin(np.pi * t)
        values[i] = min(arc, cap)
    return Series(values, label=f"{trend.label} (smoothed)")


def _round_half_away(values):
    return np.sign(values) * np.floor(np.abs(values) + 0.5)


def decompose_signal(series, plan):
    """Embed, decompose, and reconstruct a series under a mask plan."""
    trajectory = ssa.embed(series, plan.window_length)
    decomposition = ssa.decompose(trajectory)
    components = ssa.reconstruct(decomposition, plan.grouping)
    return decomposition, components


def mask_signal(signal, plan, decomposition=None):
    """Replace the signal's trend component and round back to integers.

    Returns ``(masked signal, components of the original, diagnostics)``.
    Elements that would round below zero are clamped to 0 and listed under
    ``diagnostics['clamped_positions']`` (1-based).
    """
    series = signal.series
    if decomposition is None:
        decomposition, components = decompose_signal(series, plan)
    else:
        components = ssa.reconstruct(decomposition, plan.grouping)
    trend = components.trend
    replacement = generate_replacement_trend(trend, plan.trend_spec)
    raw = series.values - trend.values + replacement.values
    rounded = _round_half_away(raw)
    clamped = np.nonzero(rounded < 0)[0]
    rounded = np.maximum(rounded, 0.0)
    diagnostics = {
        "clamped_positions": [int(i) + 1 for i in clamped],
        "replacement_trend": replacement.values,
    }
    masked = QuantitySignal(
        series=Series(rounded, label=f"{series.label} (masked)"),
        parameter_labels=signal.parameter_labels,
    )
    return masked, components, diagnostics


def _phase_shift(before, after):
    """Lag of the maximum cross-correlation between two demeaned series."""
    a = before - before.mean()
    b = after - after.mean()
    if not a.any() or not b.any():
        return 0
    xc = np.correlate(b, a, mode="full")
    n = a.size
    lag = int(np.argmax(xc)) - (n - 1)
    return lag


def _safe_period(component):
    # signals too short for autocorrelation simply have no measured period
    if component.values.size < 4:
        return None
    return ssa.estimate_period(component)


def _half_range(values):
    return float(values.max() - values.min()) / 2.0


def evaluate_utility(original, masked, plan):
    """Compare every non-trend component of both signals under one plan.

    Pure computation: reports periods, amplitude ratios, phase shifts,
    trend deltas, and the singular spectra, enforcing no thresholds.
    """
    if len(original) != len(masked):
        raise ParameterError("signals must have equal length")
    dec_before, comps_before = decompose_signal(original.series, plan)
    dec_after, comps_after = decompose_signal(masked.series, plan)

    deltas = []
    diagnostics = {}
    trend_pos = plan.grouping.trend_index
    for k, (cb, ca) in enumerate(zip(comps_before, comps_after)):
        if k == trend_pos:
            continue
        amp_before = _half_range(cb.values)
        amp_after = _half_range(ca.values)
        degenerate = amp_before == 0.0 or amp_after == 0.0
        ratio = amp_after / amp_before if amp_before > 0 else 0.0
        if degenerate:
            diagnostics.setdefault("degenerate_components", []).append(cb.label)
        deltas.append(
            ComponentDelta(
                label=cb.label,
                period_before=_safe_period(cb),
                period_after=_safe_period(ca),
                amplitude_ratio=ratio,
                phase_shift=_phase_shift(cb.values, ca.values),
                degenerate=degenerate,
            )
        )

    tb = comps_before.trend.values
    ta = comps_after.trend.values
    abs_change = np.abs(ta - tb)
    max_abs = float(abs_change.max())
    scale = np.max(np.abs(tb))
    max_rel = float(max_abs / scale) if scale > 0 else float("inf")

    return UtilityReport(
        component_deltas=tuple(deltas),
        trend_max_abs_change=max_abs,
        trend_max_rel_change=max_rel,
        spectrum_before=dec_before.singular_values,
        spectrum_after=dec_after.singular_values,
        diagnostics=diagnostics,
    )
