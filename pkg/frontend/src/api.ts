/**
 * Typed client for the session service JSON API.
 *
 * Every number shown in the workbench comes out of these payloads; the
 * client never recomputes decompositions or masks locally.
 */

export interface GroupingPayload {
  subsets: number[][];
  trend_subset: number | null;
}

export interface SessionView {
  id: string;
  revision: number;
  stage: string;
  label: string;
  n: number;
  window_length: number;
  grouping: GroupingPayload | null;
  trend: { mode: string } | null;
  has_preview: boolean;
  has_microfile: boolean;
}

export interface SpectrumView {
  revision: number;
  singular_values: number[];
  eigenvalues: number[];
  effective_rank: number;
  window_length: number;
}

export interface EigenvectorView {
  revision: number;
  index: number;
  singular_value: number;
  vector: number[];
  reconstruction: number[];
}

export interface ComponentsView {
  revision: number;
  components: { label: string; values: number[] }[];
  trend_subset: number | null;
}

export interface AdvisoryView {
  revision: number;
  periodic_pairs: number[][];
  noise_cutoff: number | null;
  trend_candidates: number[];
}

export interface ComponentDelta {
  label: string;
  period_before: number | null;
  period_after: number | null;
  amplitude_ratio: number;
  phase_shift: number;
  degenerate: boolean;
}

export interface UtilityPayload {
  components: ComponentDelta[];
  trend_max_abs_change: number;
  trend_max_rel_change: number;
  spectrum_before: number[];
  spectrum_after: number[];
  diagnostics: Record<string, unknown>;
}

export interface PreviewView {
  revision: number;
  masked: number[];
  original: number[];
  clamped_positions: number[];
  replacement_trend: number[];
  utility: UtilityPayload;
}

export interface ExportDocument {
  filename: string;
  content_type: string;
  content: string;
}

export interface TrendSpecPayload {
  mode: 'explicit' | 'plateau_smooth' | 'scale';
  values?: number[];
  cap?: number;
  half_width?: number;
  factor?: number;
}

export type Mutation =
  | { type: 'set_window'; window_length: number }
  | { type: 'set_grouping'; subsets: number[][]; trend_subset?: number | null }
  | { type: 'set_trend'; trend: TrendSpecPayload };

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  const body = await response.json();
  if (!response.ok) {
    const error = (body as { error?: { code: string; message: string } }).error;
    throw new ApiError(
      response.status,
      error ? error.code : 'unknown',
      error ? error.message : `HTTP ${response.status}`,
    );
  }
  return body as T;
}

export class ApiClient {
  constructor(private baseUrl = '') {}

  private url(path: string): string {
    return this.baseUrl + path;
  }

  async createSession(body: {
    values?: number[];
    parameter_labels?: string[];
    label?: string;
    microfile?: string;
    group_config?: string;
  }): Promise<SessionView> {
    const response = await fetch(this.url('/sessions'), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
    return unwrap<SessionView>(response);
  }

  async getSession(id: string): Promise<SessionView> {
    return unwrap<SessionView>(await fetch(this.url(`/sessions/${id}`)));
  }

  async mutate(
    id: string,
    revision: number,
    change: Mutation,
  ): Promise<SessionView> {
    const response = await fetch(this.url(`/sessions/${id}`), {
      method: 'PATCH',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ revision, change }),
    });
    return unwrap<SessionView>(response);
  }

  async getSpectrum(id: string): Promise<SpectrumView> {
    return unwrap(await fetch(this.url(`/sessions/${id}/views/spectrum`)));
  }

  async getEigenvector(id: string, index: number): Promise<EigenvectorView> {
    return unwrap(
      await fetch(this.url(`/sessions/${id}/views/eigenvector?index=${index}`)),
    );
  }

  async getComponents(id: string): Promise<ComponentsView> {
    return unwrap(await fetch(this.url(`/sessions/${id}/views/components`)));
  }

  async getAdvisory(id: string): Promise<AdvisoryView> {
    return unwrap(await fetch(this.url(`/sessions/${id}/views/advisory`)));
  }

  async getPreview(id: string): Promise<PreviewView> {
    return unwrap(await fetch(this.url(`/sessions/${id}/views/preview`)));
  }

  async export(
    id: string,
    what: 'masked-signal' | 'microfile' | 'report',
    seed?: number,
  ): Promise<ExportDocument> {
    const response = await fetch(this.url(`/sessions/${id}/export`), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(seed === undefined ? { what } : { what, seed }),
    });
    return unwrap<ExportDocument>(response);
  }
}
