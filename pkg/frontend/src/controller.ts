/**
 * Workbench controller: a state mirror over the session service.
 *
 * All rendered numbers come from fetched payloads; the controller only
 * tracks which revision they belong to. Stale-revision failures on reads
 * trigger a silent refetch; on writes they surface as a conflict banner.
 */

import {
  ApiClient,
  ApiError,
  type AdvisoryView,
  type ComponentsView,
  type EigenvectorView,
  type ExportDocument,
  type Mutation,
  type PreviewView,
  type SessionView,
  type SpectrumView,
  type TrendSpecPayload,
} from './api.js';
import {
  draftFromPayload,
  emptyDraft,
  toMutation,
  validateDraft,
  type GroupingDraft,
} from './grouping.js';

export interface WorkbenchState {
  session: SessionView | null;
  spectrum: SpectrumView | null;
  advisory: AdvisoryView | null;
  components: ComponentsView | null;
  preview: PreviewView | null;
  eigenvectors: Map<number, EigenvectorView>;
  groupingDraft: GroupingDraft;
  trendDraft: TrendSpecPayload | null;
  pendingMutation: boolean;
  conflict: string | null;
  lastError: string | null;
}

export function initialState(): WorkbenchState {
  return {
    session: null,
    spectrum: null,
    advisory: null,
    components: null,
    preview: null,
    eigenvectors: new Map(),
    groupingDraft: emptyDraft(),
    trendDraft: null,
    pendingMutation: false,
    conflict: null,
    lastError: null,
  };
}

export type Listener = (state: WorkbenchState) => void;

export class WorkbenchController {
  readonly state: WorkbenchState = initialState();
  private listeners: Listener[] = [];

  constructor(private client: ApiClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  private get sessionId(): string {
    if (!this.state.session) {
      throw new Error('no session loaded');
    }
    return this.state.session.id;
  }

  /** Drop cached views that no longer match the session revision. */
  private invalidate(): void {
    const revision = this.state.session?.revision;
    const stale = <T extends { revision: number }>(view: T | null): T | null =>
      view !== null && view.revision === revision ? view : null;
    this.state.spectrum = stale(this.state.spectrum);
    this.state.advisory = stale(this.state.advisory);
    this.state.components = stale(this.state.components);
    this.state.preview = stale(this.state.preview);
    for (const [index, view] of [...this.state.eigenvectors]) {
      if (view.revision !== revision) {
        this.state.eigenvectors.delete(index);
      }
    }
  }

  async loadSignal(
    values: number[],
    parameterLabels?: string[],
    label?: string,
  ): Promise<void> {
    this.state.session = await this.client.createSession({
      values,
      parameter_labels: parameterLabels,
      label,
    });
    this.state.groupingDraft = emptyDraft();
    this.state.trendDraft = null;
    this.invalidate();
    this.emit();
  }

  async loadMicrofile(microfile: string, groupConfig: string, label?: string): Promise<void> {
    this.state.session = await this.client.createSession({
      microfile,
      group_config: groupConfig,
      label,
    });
    this.state.groupingDraft = emptyDraft();
    this.state.trendDraft = null;
    this.invalidate();
    this.emit();
  }

  /** Re-read a view after a stale-revision error (reads retry silently). */
  private async read<T>(fetcher: () => Promise<T>): Promise<T> {
    try {
      return await fetcher();
    } catch (error) {
      if (error instanceof ApiError && error.code === 'stale_revision') {
        this.state.session = await this.client.getSession(this.sessionId);
        this.invalidate();
        return await fetcher();
      }
      throw error;
    }
  }

  private async mutate(change: Mutation): Promise<boolean> {
    if (!this.state.session) {
      throw new Error('no session loaded');
    }
    this.state.pendingMutation = true;
    this.state.conflict = null;
    this.state.lastError = null;
    this.emit();
    try {
      this.state.session = await this.client.mutate(
        this.sessionId,
        this.state.session.revision,
        change,
      );
      this.invalidate();
      return true;
    } catch (error) {
      if (error instanceof ApiError && error.code === 'stale_revision') {
        // writes never auto-retry: show the conflict and refresh the base
        this.state.conflict = error.message;
        this.state.session = await this.client.getSession(this.sessionId);
        this.invalidate();
        return false;
      }
      if (error instanceof ApiError) {
        this.state.lastError = error.message;
        return false;
      }
      throw error;
    } finally {
      this.state.pendingMutation = false;
      this.emit();
    }
  }

  async setWindow(windowLength: number): Promise<boolean> {
    const ok = await this.mutate({
      type: 'set_window',
      window_length: windowLength,
    });
    if (ok) {
      this.state.groupingDraft = emptyDraft();
      await this.refreshSpectrum();
    }
    return ok;
  }

  setGroupingDraft(draft: GroupingDraft): void {
    this.state.groupingDraft = draft;
    this.emit();
  }

  async submitGrouping(): Promise<boolean> {
    const rank = this.state.spectrum?.effective_rank ?? 0;
    const problems = validateDraft(this.state.groupingDraft, rank);
    if (problems.length > 0) {
      this.state.lastError = problems.map((p) => p.detail).join('; ');
      this.emit();
      return false;
    }
    const ok = await this.mutate(toMutation(this.state.groupingDraft));
    if (ok) {
      await this.refreshComponents();
    }
    return ok;
  }

  async submitTrend(spec: TrendSpecPayload): Promise<boolean> {
    const ok = await this.mutate({ type: 'set_trend', trend: spec });
    if (ok) {
      this.state.trendDraft = spec;
    }
    return ok;
  }

  async refreshSpectrum(): Promise<void> {
    this.state.spectrum = await this.read(() =>
      this.client.getSpectrum(this.sessionId),
    );
    this.state.advisory = await this.read(() =>
      this.client.getAdvisory(this.sessionId),
    );
    if (this.state.session?.grouping) {
      this.state.groupingDraft = draftFromPayload(this.state.session.grouping);
    }
    this.emit();
  }

  async refreshComponents(): Promise<void> {
    this.state.components = await this.read(() =>
      this.client.getComponents(this.sessionId),
    );
    this.emit();
  }

  async openEigenvector(index: number): Promise<EigenvectorView> {
    const cached = this.state.eigenvectors.get(index);
    if (cached && cached.revision === this.state.session?.revision) {
      return cached;
    }
    const view = await this.read(() =>
      this.client.getEigenvector(this.sessionId, index),
    );
    this.state.eigenvectors.set(index, view);
    this.emit();
    return view;
  }

  async refreshPreview(): Promise<PreviewView> {
    this.state.preview = await this.read(() =>
      this.client.getPreview(this.sessionId),
    );
    // preview advances the server stage; mirror it
    this.state.session = await this.client.getSession(this.sessionId);
    this.emit();
    return this.state.preview;
  }

  get exportEnabled(): boolean {
    return (
      this.state.preview !== null &&
      this.state.preview.revision === this.state.session?.revision
    );
  }

  async exportDocument(
    what: 'masked-signal' | 'microfile' | 'report',
    seed?: number,
  ): Promise<ExportDocument> {
    if (!this.exportEnabled) {
      throw new Error('export needs a current preview');
    }
    return this.client.export(this.sessionId, what, seed);
  }
}
