/**
 * Client-side grouping draft: assemble eigentriple subsets by gesture and
 * validate disjointness before anything is submitted to the service.
 */

export interface GroupingDraft {
  subsets: number[][];
  /** 1-based position of the trend subset within `subsets`, or null. */
  trendSubset: number | null;
}

export function emptyDraft(): GroupingDraft {
  return { subsets: [], trendSubset: null };
}

export function draftFromPayload(payload: {
  subsets: number[][];
  trend_subset: number | null;
}): GroupingDraft {
  return {
    subsets: payload.subsets.map((s) => [...s]),
    trendSubset: payload.trend_subset,
  };
}

function assignedElsewhere(
  draft: GroupingDraft,
  index: number,
  except: number,
): boolean {
  return draft.subsets.some(
    (subset, k) => k !== except && subset.includes(index),
  );
}

/**
 * Assign one eigentriple index to a subset, rejecting the gesture when it
 * would duplicate the index or leave the valid range.
 */
export function assignIndex(
  draft: GroupingDraft,
  index: number,
  subsetPosition: number,
  effectiveRank: number,
): GroupingDraft {
  if (!Number.isInteger(index) || index < 1 || index > effectiveRank) {
    throw new Error(`index ${index} outside [1, ${effectiveRank}]`);
  }
  if (subsetPosition < 0 || subsetPosition >= draft.subsets.length) {
    throw new Error(`no subset at position ${subsetPosition}`);
  }
  if (assignedElsewhere(draft, index, subsetPosition)) {
    throw new Error(`index ${index} is already assigned to another subset`);
  }
  const subsets = draft.subsets.map((s) => [...s]);
  if (!subsets[subsetPosition].includes(index)) {
    subsets[subsetPosition] = [...subsets[subsetPosition], index].sort(
      (a, b) => a - b,
    );
  }
  return { subsets, trendSubset: draft.trendSubset };
}

export function removeIndex(draft: GroupingDraft, index: number): GroupingDraft {
  return {
    subsets: draft.subsets.map((s) => s.filter((i) => i !== index)),
    trendSubset: draft.trendSubset,
  };
}

export function createSubset(draft: GroupingDraft): GroupingDraft {
  return {
    subsets: [...draft.subsets.map((s) => [...s]), []],
    trendSubset: draft.trendSubset,
  };
}

/** Delete a subset; deleting the trend subset clears the designation. */
export function deleteSubset(
  draft: GroupingDraft,
  subsetPosition: number,
): GroupingDraft {
  if (subsetPosition < 0 || subsetPosition >= draft.subsets.length) {
    throw new Error(`no subset at position ${subsetPosition}`);
  }
  const subsets = draft.subsets
    .filter((_, k) => k !== subsetPosition)
    .map((s) => [...s]);
  let trendSubset = draft.trendSubset;
  if (trendSubset !== null) {
    if (trendSubset === subsetPosition + 1) {
      trendSubset = null;
    } else if (trendSubset > subsetPosition + 1) {
      trendSubset -= 1;
    }
  }
  return { subsets, trendSubset };
}

export function markTrend(
  draft: GroupingDraft,
  subsetPosition: number,
): GroupingDraft {
  if (subsetPosition < 0 || subsetPosition >= draft.subsets.length) {
    throw new Error(`no subset at position ${subsetPosition}`);
  }
  return {
    subsets: draft.subsets.map((s) => [...s]),
    trendSubset: subsetPosition + 1,
  };
}

/** Fill a draft with one subset per range, e.g. [[1,2],[3,4],[5,6],[7..20]]. */
export function draftFromSubsets(
  subsets: number[][],
  trendSubset: number | null,
): GroupingDraft {
  return { subsets: subsets.map((s) => [...s]), trendSubset };
}

export interface DraftProblem {
  kind: 'empty-subset' | 'duplicate-index' | 'out-of-range' | 'no-subsets';
  detail: string;
}

/** Validate the draft the same way the service will, but before the PATCH. */
export function validateDraft(
  draft: GroupingDraft,
  effectiveRank: number,
): DraftProblem[] {
  const problems: DraftProblem[] = [];
  if (draft.subsets.length === 0) {
    problems.push({ kind: 'no-subsets', detail: 'no subsets defined' });
    return problems;
  }
  const seen = new Map<number, number>();
  draft.subsets.forEach((subset, k) => {
    if (subset.length === 0) {
      problems.push({
        kind: 'empty-subset',
        detail: `subset ${k + 1} is empty`,
      });
    }
    for (const index of subset) {
      if (index < 1 || index > effectiveRank) {
        problems.push({
          kind: 'out-of-range',
          detail: `index ${index} outside [1, ${effectiveRank}]`,
        });
      }
      const previous = seen.get(index);
      if (previous !== undefined && previous !== k) {
        problems.push({
          kind: 'duplicate-index',
          detail: `index ${index} appears in subsets ${previous + 1} and ${k + 1}`,
        });
      }
      seen.set(index, k);
    }
  });
  return problems;
}

/** Serialize for the set_grouping mutation. */
export function toMutation(draft: GroupingDraft): {
  type: 'set_grouping';
  subsets: number[][];
  trend_subset: number | null;
} {
  return {
    type: 'set_grouping',
    subsets: draft.subsets.map((s) => [...s]),
    trend_subset: draft.trendSubset,
  };
}
