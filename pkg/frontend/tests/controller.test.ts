import { describe, expect, it } from 'vitest';

import {
  ApiError,
  type ApiClient,
  type Mutation,
  type SessionView,
} from '../src/api.js';
import { WorkbenchController } from '../src/controller.js';
import { draftFromSubsets } from '../src/grouping.js';

/** Minimal in-memory stand-in for the service, with scriptable staleness. */
class FakeClient {
  revision = 1;
  stage = 'loaded';
  failNextMutation = false;
  spectrumFetches = 0;

  private view(): SessionView {
    return {
      id: 'fake',
      revision: this.revision,
      stage: this.stage,
      label: 'q',
      n: 40,
      window_length: 20,
      grouping: null,
      trend: null,
      has_preview: false,
      has_microfile: false,
    };
  }

  async createSession(): Promise<SessionView> {
    return this.view();
  }

  async getSession(): Promise<SessionView> {
    return this.view();
  }

  async mutate(
    _id: string,
    revision: number,
    _change: Mutation,
  ): Promise<SessionView> {
    if (this.failNextMutation || revision !== this.revision) {
      this.failNextMutation = false;
      throw new ApiError(409, 'stale_revision', 'stale');
    }
    this.revision += 1;
    this.stage = 'decomposed';
    return this.view();
  }

  async getSpectrum() {
    this.spectrumFetches += 1;
    if (this.spectrumFetches === 1 && this.stage === 'racing') {
      throw new ApiError(409, 'stale_revision', 'stale view');
    }
    return {
      revision: this.revision,
      singular_values: [10, 5, 2],
      eigenvalues: [100, 25, 4],
      effective_rank: 3,
      window_length: 20,
    };
  }

  async getAdvisory() {
    return {
      revision: this.revision,
      periodic_pairs: [],
      noise_cutoff: null,
      trend_candidates: [1],
    };
  }
}

function controllerWith(fake: FakeClient): WorkbenchController {
  return new WorkbenchController(fake as unknown as ApiClient);
}

describe('workbench controller', () => {
  it('mirrors a single revision across views', async () => {
    const fake = new FakeClient();
    const controller = controllerWith(fake);
    await controller.loadSignal([1, 2, 3]);
    await controller.setWindow(20);
    expect(controller.state.session?.revision).toBe(2);
    expect(controller.state.spectrum?.revision).toBe(2);
    expect(controller.state.advisory?.revision).toBe(2);
  });

  it('stale writes raise a conflict banner and refresh, never auto-retry', async () => {
    const fake = new FakeClient();
    const controller = controllerWith(fake);
    await controller.loadSignal([1, 2, 3]);
    fake.failNextMutation = true;
    const ok = await controller.setWindow(20);
    expect(ok).toBe(false);
    expect(controller.state.conflict).toBeTruthy();
    expect(fake.revision).toBe(1); // the write was not silently replayed
  });

  it('stale reads refetch silently', async () => {
    const fake = new FakeClient();
    const controller = controllerWith(fake);
    await controller.loadSignal([1, 2, 3]);
    fake.stage = 'racing';
    await controller.refreshSpectrum();
    expect(fake.spectrumFetches).toBe(2);
    expect(controller.state.conflict).toBeNull();
    expect(controller.state.spectrum?.singular_values).toEqual([10, 5, 2]);
  });

  it('rejects a non-disjoint grouping before any network call', async () => {
    const fake = new FakeClient();
    const controller = controllerWith(fake);
    await controller.loadSignal([1, 2, 3]);
    await controller.setWindow(20);
    const revisionBefore = fake.revision;
    controller.setGroupingDraft(draftFromSubsets([[1, 2], [2, 3]], 1));
    const ok = await controller.submitGrouping();
    expect(ok).toBe(false);
    expect(controller.state.lastError).toMatch(/index 2/);
    expect(fake.revision).toBe(revisionBefore);
  });

  it('export stays disabled until a current preview exists', async () => {
    const fake = new FakeClient();
    const controller = controllerWith(fake);
    await controller.loadSignal([1, 2, 3]);
    expect(controller.exportEnabled).toBe(false);
    await expect(controller.exportDocument('masked-signal')).rejects.toThrow(
      /preview/,
    );
  });
});
