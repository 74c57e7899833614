/**
 * Trend editing: the analyst either fills in a strategy form or drags
 * control points over the extracted trend. Dragging produces an explicit
 * replacement vector (piecewise-linear through the control points), not a
 * fitted model.
 */

import type { TrendSpecPayload } from './api.js';

export interface ControlPoint {
  /** 0-based sample position. */
  position: number;
  value: number;
}

/** Seed control points from the extracted trend, one every `step` samples. */
export function controlPointsFromTrend(
  trend: number[],
  step = 4,
): ControlPoint[] {
  const points: ControlPoint[] = [];
  for (let i = 0; i < trend.length; i += step) {
    points.push({ position: i, value: trend[i] });
  }
  const last = trend.length - 1;
  if (points[points.length - 1].position !== last) {
    points.push({ position: last, value: trend[last] });
  }
  return points;
}

export function movePoint(
  points: ControlPoint[],
  pointIndex: number,
  value: number,
): ControlPoint[] {
  if (pointIndex < 0 || pointIndex >= points.length) {
    throw new Error(`no control point ${pointIndex}`);
  }
  return points.map((p, k) => (k === pointIndex ? { ...p, value } : p));
}

/**
 * Sample the dragged curve back into a full-length explicit vector by
 * linear interpolation between neighboring control points.
 */
export function sampleCurve(points: ControlPoint[], length: number): number[] {
  if (points.length === 0) {
    throw new Error('no control points to sample');
  }
  const sorted = [...points].sort((a, b) => a.position - b.position);
  const values = new Array<number>(length);
  let k = 0;
  for (let i = 0; i < length; i++) {
    while (k + 1 < sorted.length && sorted[k + 1].position <= i) {
      k++;
    }
    if (i <= sorted[0].position) {
      values[i] = sorted[0].value;
    } else if (k + 1 >= sorted.length) {
      values[i] = sorted[sorted.length - 1].value;
    } else {
      const a = sorted[k];
      const b = sorted[k + 1];
      const t = (i - a.position) / (b.position - a.position);
      values[i] = a.value + (b.value - a.value) * t;
    }
  }
  return values;
}

export interface StrategyForm {
  mode: 'scale' | 'plateau_smooth';
  factor?: number;
  cap?: number;
  halfWidth?: number;
}

export function specFromStrategy(form: StrategyForm): TrendSpecPayload {
  if (form.mode === 'scale') {
    if (form.factor === undefined || form.factor <= 0) {
      throw new Error('scale strategy needs a positive factor');
    }
    return { mode: 'scale', factor: form.factor };
  }
  if (form.cap === undefined || form.cap <= 0) {
    throw new Error('plateau strategy needs a positive cap');
  }
  return {
    mode: 'plateau_smooth',
    cap: form.cap,
    half_width: form.halfWidth ?? 0,
  };
}

export function specFromCurve(points: ControlPoint[], length: number): TrendSpecPayload {
  return { mode: 'explicit', values: sampleCurve(points, length) };
}

export function specFromVector(values: number[]): TrendSpecPayload {
  return { mode: 'explicit', values: [...values] };
}
