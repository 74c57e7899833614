/**
 * DOM wiring for the workbench. All logic lives in the controller and the
 * pure chart/grouping/trend modules; this file only reads inputs and
 * paints panels.
 */

import { ApiClient } from './api.js';
import {
  extremesTable,
  renderOverlay,
  renderSpectrum,
  spectrumModel,
} from './charts.js';
import { WorkbenchController, type WorkbenchState } from './controller.js';
import {
  createSubset,
  deleteSubset,
  draftFromSubsets,
  markTrend,
  removeIndex,
  assignIndex,
} from './grouping.js';
import { specFromStrategy, specFromVector } from './trend.js';

const client = new ApiClient('');
const controller = new WorkbenchController(client);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function parseNumbers(text: string): number[] {
  return text
    .split(/[\s,]+/)
    .filter((t) => t.length > 0)
    .map((t) => {
      const v = Number(t);
      if (!Number.isFinite(v)) throw new Error(`not a number: ${t}`);
      return v;
    });
}

function setBanner(state: WorkbenchState): void {
  const banner = el<HTMLDivElement>('banner');
  if (state.conflict) {
    banner.textContent = `conflict: ${state.conflict} — session refreshed, please retry`;
    banner.className = 'banner conflict';
  } else if (state.lastError) {
    banner.textContent = state.lastError;
    banner.className = 'banner error';
  } else {
    banner.textContent = '';
    banner.className = 'banner';
  }
}

function paintSpectrum(state: WorkbenchState): void {
  const panel = el<HTMLDivElement>('spectrum-panel');
  panel.innerHTML = renderSpectrum(
    spectrumModel(state.spectrum, state.advisory),
  );
  panel.querySelectorAll('rect.bar').forEach((bar) => {
    bar.addEventListener('click', async () => {
      const index = Number((bar as SVGRectElement).dataset.index);
      const view = await controller.openEigenvector(index);
      const detail = el<HTMLDivElement>('eigenvector-panel');
      detail.innerHTML =
        `<h3>eigentriple ${view.index} (σ=${view.singular_value.toFixed(3)})</h3>` +
        renderOverlay([
          {
            label: `reconstruction ${view.index}`,
            values: view.reconstruction,
            color: '#0e7490',
          },
        ]);
    });
  });
  if (state.advisory) {
    el<HTMLDivElement>('advisory-line').textContent =
      `advisory: pairs ${JSON.stringify(state.advisory.periodic_pairs)}, ` +
      `noise cutoff ${state.advisory.noise_cutoff}, ` +
      `trend candidates ${JSON.stringify(state.advisory.trend_candidates)}`;
  }
}

function paintGrouping(state: WorkbenchState): void {
  const host = el<HTMLDivElement>('grouping-editor');
  host.innerHTML = '';
  state.groupingDraft.subsets.forEach((subset, k) => {
    const row = document.createElement('div');
    row.className = 'subset-row';
    const isTrend = state.groupingDraft.trendSubset === k + 1;
    row.innerHTML =
      `<span class="subset-name">${isTrend ? '★ ' : ''}subset ${k + 1}:</span>` +
      `<span class="subset-indices">{${subset.join(', ')}}</span>`;
    const add = document.createElement('input');
    add.type = 'number';
    add.placeholder = 'index';
    add.addEventListener('change', () => {
      try {
        const rank = state.spectrum?.effective_rank ?? 0;
        controller.setGroupingDraft(
          assignIndex(state.groupingDraft, Number(add.value), k, rank),
        );
      } catch (error) {
        el<HTMLDivElement>('banner').textContent = String(error);
      }
    });
    const drop = document.createElement('button');
    drop.textContent = 'delete';
    drop.addEventListener('click', () =>
      controller.setGroupingDraft(deleteSubset(state.groupingDraft, k)),
    );
    const trend = document.createElement('button');
    trend.textContent = 'mark trend';
    trend.addEventListener('click', () =>
      controller.setGroupingDraft(markTrend(state.groupingDraft, k)),
    );
    row.append(add, trend, drop);
    host.append(row);
  });
}

function paintComponents(state: WorkbenchState): void {
  const host = el<HTMLDivElement>('components-panel');
  if (!state.components) {
    host.innerHTML = '';
    return;
  }
  const colors = ['#1f2937', '#d97706', '#0e7490', '#7c3aed', '#be185d'];
  host.innerHTML = state.components.components
    .map((component, k) =>
      renderOverlay(
        [
          {
            label: component.label,
            values: component.values,
            color: colors[k % colors.length],
          },
        ],
        [],
        640,
        140,
      ),
    )
    .join('');
}

function paintPreview(state: WorkbenchState): void {
  const host = el<HTMLDivElement>('preview-panel');
  if (!state.preview) {
    host.innerHTML = '<p class="placeholder">no preview yet</p>';
    return;
  }
  const p = state.preview;
  host.innerHTML = renderOverlay(
    [
      { label: 'original', values: p.original, color: '#1f2937' },
      { label: 'masked', values: p.masked, color: '#dc2626' },
      {
        label: 'replacement trend',
        values: p.replacement_trend,
        color: '#0e7490',
        dashed: true,
      },
    ],
    p.clamped_positions,
  );
  const rows = extremesTable(p)
    .map(
      (r) =>
        `<tr><td>${r.position}</td><td>${r.before}</td><td>${r.after}</td></tr>`,
    )
    .join('');
  const deltas = p.utility.components
    .map(
      (d) =>
        `<tr><td>${d.label}</td><td>${d.period_before ?? '—'}</td>` +
        `<td>${d.period_after ?? '—'}</td>` +
        `<td>${d.amplitude_ratio.toFixed(3)}</td><td>${d.phase_shift}</td></tr>`,
    )
    .join('');
  host.innerHTML +=
    '<h3>extremes</h3><table><tr><th>pos</th><th>before</th><th>after</th></tr>' +
    `${rows}</table><h3>utility</h3><table><tr><th>component</th>` +
    `<th>period before</th><th>period after</th><th>amp ratio</th>` +
    `<th>phase</th></tr>${deltas}</table>`;
  if (p.clamped_positions.length > 0) {
    host.innerHTML += `<p class="warning">clamped to zero at positions ${p.clamped_positions.join(', ')}</p>`;
  }
  (el<HTMLButtonElement>('export-signal')).disabled = !controller.exportEnabled;
  (el<HTMLButtonElement>('export-report')).disabled = !controller.exportEnabled;
}

function paint(state: WorkbenchState): void {
  setBanner(state);
  el<HTMLDivElement>('session-line').textContent = state.session
    ? `session ${state.session.id} · stage ${state.session.stage} · ` +
      `revision ${state.session.revision} · n=${state.session.n} · ` +
      `L=${state.session.window_length}`
    : 'no session';
  paintSpectrum(state);
  paintGrouping(state);
  paintComponents(state);
  paintPreview(state);
}

function download(filename: string, contentType: string, content: string): void {
  const blob = new Blob([content], { type: contentType });
  const link = document.createElement('a');
  link.href = URL.createObjectURL(blob);
  link.download = filename;
  link.click();
  URL.revokeObjectURL(link.href);
}

export function wire(): void {
  controller.subscribe(paint);

  el<HTMLButtonElement>('load-signal').addEventListener('click', async () => {
    const values = parseNumbers(
      el<HTMLTextAreaElement>('signal-input').value,
    );
    await controller.loadSignal(values, undefined, 'workbench signal');
    await controller.setWindow(
      Number(el<HTMLInputElement>('window-input').value) ||
        Math.max(2, Math.floor(values.length / 2)),
    );
  });

  el<HTMLButtonElement>('apply-window').addEventListener('click', () =>
    controller.setWindow(Number(el<HTMLInputElement>('window-input').value)),
  );

  el<HTMLButtonElement>('add-subset').addEventListener('click', () =>
    controller.setGroupingDraft(createSubset(controller.state.groupingDraft)),
  );

  el<HTMLButtonElement>('adopt-advisory').addEventListener('click', () => {
    const advisory = controller.state.advisory;
    const rank = controller.state.spectrum?.effective_rank ?? 0;
    if (!advisory || rank === 0) return;
    const used = new Set<number>();
    const subsets: number[][] = [];
    if (advisory.trend_candidates.length > 0) {
      subsets.push([...advisory.trend_candidates]);
      advisory.trend_candidates.forEach((i) => used.add(i));
    }
    for (const pair of advisory.periodic_pairs) {
      subsets.push([...pair]);
      pair.forEach((i) => used.add(i));
    }
    const rest: number[] = [];
    for (let i = 1; i <= rank; i++) {
      if (!used.has(i)) rest.push(i);
    }
    if (rest.length > 0) subsets.push(rest);
    controller.setGroupingDraft(
      draftFromSubsets(subsets, subsets.length > 0 ? 1 : null),
    );
  });

  el<HTMLButtonElement>('submit-grouping').addEventListener('click', () =>
    controller.submitGrouping(),
  );

  el<HTMLButtonElement>('apply-trend').addEventListener('click', async () => {
    const mode = el<HTMLSelectElement>('trend-mode').value;
    if (mode === 'explicit') {
      const values = parseNumbers(
        el<HTMLTextAreaElement>('trend-values').value,
      );
      await controller.submitTrend(specFromVector(values));
    } else if (mode === 'scale') {
      await controller.submitTrend(
        specFromStrategy({
          mode: 'scale',
          factor: Number(el<HTMLInputElement>('trend-factor').value),
        }),
      );
    } else {
      await controller.submitTrend(
        specFromStrategy({
          mode: 'plateau_smooth',
          cap: Number(el<HTMLInputElement>('trend-cap').value),
          halfWidth: Number(el<HTMLInputElement>('trend-halfwidth').value) || 0,
        }),
      );
    }
    await controller.refreshPreview();
  });

  el<HTMLButtonElement>('refresh-preview').addEventListener('click', () =>
    controller.refreshPreview(),
  );

  el<HTMLButtonElement>('export-signal').addEventListener('click', async () => {
    const doc = await controller.exportDocument('masked-signal');
    download(doc.filename, doc.content_type, doc.content);
  });

  el<HTMLButtonElement>('export-report').addEventListener('click', async () => {
    const doc = await controller.exportDocument('report');
    download(doc.filename, doc.content_type, doc.content);
  });
}

if (typeof document !== 'undefined' && document.getElementById('banner')) {
  wire();
}
