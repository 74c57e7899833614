import { describe, expect, it } from 'vitest';

import {
  controlPointsFromTrend,
  movePoint,
  sampleCurve,
  specFromStrategy,
  specFromVector,
} from '../src/trend.js';
import { REPLACEMENT_TREND } from './reference.js';

describe('trend editing', () => {
  it('seeds control points including the last sample', () => {
    const points = controlPointsFromTrend(REPLACEMENT_TREND, 4);
    expect(points[0]).toEqual({ position: 0, value: REPLACEMENT_TREND[0] });
    expect(points[points.length - 1].position).toBe(39);
  });

  it('sampling unmoved control points at step 1 reproduces the trend', () => {
    const points = controlPointsFromTrend(REPLACEMENT_TREND, 1);
    const sampled = sampleCurve(points, REPLACEMENT_TREND.length);
    sampled.forEach((v, i) => expect(v).toBeCloseTo(REPLACEMENT_TREND[i], 9));
  });

  it('interpolates linearly between control points', () => {
    const sampled = sampleCurve(
      [
        { position: 0, value: 0 },
        { position: 4, value: 8 },
      ],
      5,
    );
    expect(sampled).toEqual([0, 2, 4, 6, 8]);
  });

  it('extends flat beyond the outermost control points', () => {
    const sampled = sampleCurve(
      [
        { position: 2, value: 5 },
        { position: 4, value: 5 },
      ],
      8,
    );
    expect(sampled[0]).toBe(5);
    expect(sampled[7]).toBe(5);
  });

  it('moving a point only changes that point', () => {
    const points = controlPointsFromTrend(REPLACEMENT_TREND, 8);
    const moved = movePoint(points, 1, 50);
    expect(moved[1].value).toBe(50);
    expect(moved[0]).toEqual(points[0]);
  });

  it('builds explicit specs from vectors and curves', () => {
    const spec = specFromVector(REPLACEMENT_TREND);
    expect(spec.mode).toBe('explicit');
    expect(spec.values).toHaveLength(40);
  });

  it('builds strategy specs with validation', () => {
    expect(specFromStrategy({ mode: 'scale', factor: 0.5 })).toEqual({
      mode: 'scale',
      factor: 0.5,
    });
    expect(
      specFromStrategy({ mode: 'plateau_smooth', cap: 124, halfWidth: 3 }),
    ).toEqual({ mode: 'plateau_smooth', cap: 124, half_width: 3 });
    expect(() => specFromStrategy({ mode: 'scale' })).toThrow(/factor/);
    expect(() => specFromStrategy({ mode: 'plateau_smooth' })).toThrow(/cap/);
  });
});
