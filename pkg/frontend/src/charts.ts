/**
 * Chart models and SVG rendering.
 *
 * Each panel is computed as a plain data model first (testable without a
 * DOM), then serialized to an SVG string. All values plotted come from
 * service payloads; shared y-scales keep original/masked overlays honest.
 */

import type { AdvisoryView, PreviewView, SpectrumView } from './api.js';

export interface SpectrumBar {
  index: number; // 1-based eigentriple index
  value: number; // singular value
  pair: number | null; // 0-based advisory pair number, or null
  noise: boolean;
}

export interface SpectrumModel {
  bars: SpectrumBar[];
  highlightedPairs: [number, number][];
  placeholder: string | null;
}

/** Build the spectrum panel model with advisory pair highlights. */
export function spectrumModel(
  spectrum: SpectrumView | null,
  advisory: AdvisoryView | null,
): SpectrumModel {
  if (spectrum === null) {
    return {
      bars: [],
      highlightedPairs: [],
      placeholder: 'decompose first: set a window length',
    };
  }
  const pairOf = new Map<number, number>();
  const pairs: [number, number][] = [];
  if (advisory) {
    advisory.periodic_pairs.forEach(([a, b], k) => {
      pairOf.set(a, k);
      pairOf.set(b, k);
      pairs.push([a, b]);
    });
  }
  const cutoff = advisory?.noise_cutoff ?? null;
  const bars = spectrum.singular_values.map((value, i) => ({
    index: i + 1,
    value,
    pair: pairOf.get(i + 1) ?? null,
    noise: cutoff !== null && i + 1 >= cutoff,
  }));
  return { bars, highlightedPairs: pairs, placeholder: null };
}

const PAIR_COLORS = ['#d97706', '#0e7490', '#7c3aed', '#be185d'];

function esc(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

/** Render the spectrum model as a clickable bar chart (log-free, linear y). */
export function renderSpectrum(
  model: SpectrumModel,
  width = 640,
  height = 240,
): string {
  if (model.placeholder !== null) {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}">` +
      `<text x="${width / 2}" y="${height / 2}" text-anchor="middle" ` +
      `class="placeholder">${esc(model.placeholder)}</text></svg>`
    );
  }
  const margin = 24;
  const innerW = width - 2 * margin;
  const innerH = height - 2 * margin;
  const max = Math.max(...model.bars.map((b) => b.value), 1e-12);
  const slot = innerW / model.bars.length;
  const barW = Math.max(2, slot * 0.7);
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" class="spectrum">`,
  ];
  for (const bar of model.bars) {
    const h = (bar.value / max) * innerH;
    const x = margin + (bar.index - 1) * slot + (slot - barW) / 2;
    const y = margin + innerH - h;
    const color =
      bar.pair !== null
        ? PAIR_COLORS[bar.pair % PAIR_COLORS.length]
        : bar.noise
          ? '#9ca3af'
          : '#1f2937';
    const classes = ['bar'];
    if (bar.pair !== null) classes.push('pair', `pair-${bar.pair}`);
    if (bar.noise) classes.push('noise');
    parts.push(
      `<rect class="${classes.join(' ')}" data-index="${bar.index}" ` +
        `x="${x.toFixed(1)}" y="${y.toFixed(1)}" width="${barW.toFixed(1)}" ` +
        `height="${Math.max(h, 1).toFixed(1)}" fill="${color}"><title>` +
        `index ${bar.index}: ${bar.value.toFixed(3)}</title></rect>`,
    );
    parts.push(
      `<text class="tick" x="${(x + barW / 2).toFixed(1)}" y="${height - 6}" ` +
        `text-anchor="middle">${bar.index}</text>`,
    );
  }
  parts.push('</svg>');
  return parts.join('');
}

export interface OverlaySeries {
  label: string;
  values: number[];
  color: string;
  dashed?: boolean;
}

/** Polyline path for one series on a shared scale. */
function path(
  values: number[],
  yMin: number,
  yMax: number,
  width: number,
  height: number,
  margin: number,
): string {
  const innerW = width - 2 * margin;
  const innerH = height - 2 * margin;
  const span = yMax - yMin || 1;
  return values
    .map((v, i) => {
      const x = margin + (i / (values.length - 1)) * innerW;
      const y = margin + innerH - ((v - yMin) / span) * innerH;
      return `${i === 0 ? 'M' : 'L'}${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(' ');
}

/**
 * Render original vs masked (plus replacement trend) with one shared
 * y-scale so extremum suppression is visible at true proportion.
 */
export function renderOverlay(
  series: OverlaySeries[],
  clampedPositions: number[] = [],
  width = 640,
  height = 280,
): string {
  const margin = 24;
  const all = series.flatMap((s) => s.values);
  const yMin = Math.min(0, ...all);
  const yMax = Math.max(...all, 1);
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" class="overlay">`,
  ];
  for (const s of series) {
    const dash = s.dashed ? ' stroke-dasharray="6 3"' : '';
    parts.push(
      `<path class="series" data-label="${esc(s.label)}" fill="none" ` +
        `stroke="${s.color}" stroke-width="1.5"${dash} ` +
        `d="${path(s.values, yMin, yMax, width, height, margin)}"/>`,
    );
  }
  const n = series[0]?.values.length ?? 0;
  for (const position of clampedPositions) {
    const x = margin + ((position - 1) / (n - 1)) * (width - 2 * margin);
    parts.push(
      `<line class="clamp" x1="${x.toFixed(1)}" y1="${margin}" ` +
        `x2="${x.toFixed(1)}" y2="${height - margin}" stroke="#dc2626" ` +
        `stroke-width="1" stroke-dasharray="2 2"/>`,
    );
  }
  parts.push('</svg>');
  return parts.join('');
}

export interface ExtremeRow {
  position: number; // 1-based
  before: number;
  after: number;
}

/** Top-k extremes of the original signal with their masked counterparts. */
export function extremesTable(preview: PreviewView, topK = 4): ExtremeRow[] {
  const order = preview.original
    .map((value, i) => ({ value, i }))
    .sort((a, b) => b.value - a.value || a.i - b.i)
    .slice(0, topK);
  return order.map(({ value, i }) => ({
    position: i + 1,
    before: value,
    after: preview.masked[i],
  }));
}
