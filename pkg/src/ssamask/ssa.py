"""Four-stage SSA decomposition of one-dimensional series.

The pipeline is embedding into a Hankel trajectory matrix, symmetric
eigendecomposition of the lag-covariance matrix, grouping of eigentriples
into disjoint index subsets, and diagonal averaging back to series form.
Advisory helpers point the analyst at likely periodic pairs, noise
eigentriples, and trend candidates; they never decide anything on their own.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import GroupingError, NumericalError, ParameterError

DEFAULT_RANK_TOLERANCE = 1e-12


class Series:
    """A finite real-valued sequence with a free-text label.

    Values are stored as a read-only float array; length must be at least 3
    and every value finite.
    """

    def __init__(self, values, label=""):
        arr = np.asarray(values, dtype=float).copy()
        if arr.ndim != 1:
            raise ParameterError("series values must be one-dimensional")
        if arr.size < 3:
            raise ParameterError(
                f"series needs at least 3 values, got {arr.size}"
            )
        if not np.all(np.isfinite(arr)):
            raise ParameterError("series values must be finite")
        arr.flags.writeable = False
        self.values = arr
        self.label = str(label)

    def __len__(self):
        return self.values.size

    def __repr__(self):
        return f"Series(label={self.label!r}, n={len(self)})"

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.label == other.label and np.array_equal(
            self.values, other.values
        )


class TrajectoryMatrix:
    """L x K Hankel matrix of lagged windows of a series."""

    def __init__(self, cells, window_length):
        cells = np.asarray(cells, dtype=float)
        L, K = cells.shape
        if L != window_length:
            raise ParameterError(
                f"cell rows {L} disagree with window length {window_length}"
            )
        cells = cells.copy()
        cells.flags.writeable = False
        self.cells = cells
        self.window_length = L
        self.lag_count = K
        self.series_length = L + K - 1


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigentriples of the lag-covariance matrix of one trajectory matrix.

    Eigenvalues are non-increasing and non-negative; left vectors are the
    first ``effective_rank`` orthonormal eigenvectors (columns), factor
    vectors the matching normalized right vectors (columns).
    """

    eigenvalues: np.ndarray
    effective_rank: int
    left_vectors: np.ndarray
    factor_vectors: np.ndarray
    window_length: int
    lag_count: int
    series_length: int

    @property
    def singular_values(self):
        return np.sqrt(self.eigenvalues)

    def elementary_matrix(self, index):
        """Rank-one term number ``index`` (1-based) of the decomposition."""
        if not 1 <= index <= self.effective_rank:
            raise ParameterError(
                f"eigentriple index {index} outside [1, {self.effective_rank}]"
            )
        i = index - 1
        return np.sqrt(self.eigenvalues[i]) * np.outer(
            self.left_vectors[:, i], self.factor_vectors[:, i]
        )


@dataclass(frozen=True)
class Grouping:
    """Disjoint subsets of eigentriple indices, optionally one marked trend.

    Indices are 1-based. ``trend_index`` is the position of the trend subset
    within ``subsets``, or None.
    """

    subsets: tuple
    trend_index: int | None = None

    def __post_init__(self):
        subsets = tuple(tuple(int(i) for i in s) for s in self.subsets)
        object.__setattr__(self, "subsets", subsets)
        if not subsets:
            raise GroupingError("grouping needs at least one subset")
        seen = set()
        for s in subsets:
            if not s:
                raise GroupingError("grouping subsets must be non-empty")
            overlap = seen.intersection(s)
            if overlap:
                raise GroupingError(
                    f"grouping subsets overlap at indices {sorted(overlap)}",
                    offending_indices=sorted(overlap),
                )
            seen.update(s)
        if any(i < 1 for i in seen):
            bad = sorted(i for i in seen if i < 1)
            raise GroupingError(
                f"eigentriple indices must be positive, got {bad}",
                offending_indices=bad,
            )
        if self.trend_index is not None and not (
            0 <= self.trend_index < len(subsets)
        ):
            raise GroupingError(
                f"trend subset position {self.trend_index} outside grouping"
            )

    def validate_against(self, effective_rank):
        bad = sorted(
            i for s in self.subsets for i in s if i > effective_rank
        )
        if bad:
            raise GroupingError(
                f"indices {bad} exceed effective rank {effective_rank}",
                offending_indices=bad,
            )

    @property
    def trend_subset(self):
        if self.trend_index is None:
            return None
        return self.subsets[self.trend_index]


@dataclass(frozen=True)
class ComponentSet:
    """Diagonal-averaged series, one per grouping subset, in subset order."""

    components: tuple
    labels: tuple
    grouping: Grouping

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    @property
    def trend(self):
        if self.grouping.trend_index is None:
            return None
        return self.components[self.grouping.trend_index]


@dataclass(frozen=True)
class GroupingAdvice:
    """Advisory output: candidate pairs, noise cutoff, trend candidates."""

    periodic_pairs: tuple
    noise_cutoff: int | None
    trend_candidates: tuple
    pair_gaps: dict = field(default_factory=dict)


def embed(series, window_length):
    """Build the L x K Hankel trajectory matrix of a series.

    ``cells[i, j] = values[i + j]``; requires ``1 < window_length < N``.
    """
    n = len(series)
    L = int(window_length)
    if not 1 < L < n:
        raise ParameterError(
            f"window length must lie strictly between 1 and {n}, got {L}"
        )
    K = n - L + 1
    v = series.values
    cells = np.array([v[i : i + K] for i in range(L)])
    return TrajectoryMatrix(cells, L)


def default_window_length(n):
    """Default embedding window: half the series length (at least 2)."""
    return max(2, n // 2)


def decompose(trajectory, rank_tolerance=DEFAULT_RANK_TOLERANCE):
    """Eigendecompose the lag-covariance matrix of a trajectory matrix.

    Returns eigenvalues in non-increasing order, clipped to be non-negative,
    with the effective rank counting eigenvalues above
    ``rank_tolerance * lambda_1``. Left vectors are sign-fixed so that each
    one's largest-magnitude entry is positive, making the output
    deterministic across solver backends.
    """
    X = trajectory.cells
    S = X @ X.T
    S = (S + S.T) / 2.0  # suppress round-off asymmetry
    try:
        eigvals, eigvecs = scipy.linalg.eigh(S)
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(
            "symmetric eigendecomposition did not converge",
            diagnostics={"matrix_shape": S.shape, "cause": str(exc)},
        ) from exc
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order], 0.0, None)
    eigvecs = eigvecs[:, order]

    if eigvals[0] <= 0.0:
        d = 0
    else:
        d = int(np.sum(eigvals > rank_tolerance * eigvals[0]))

    U = eigvecs[:, :d].copy()
    for i in range(d):
        pivot = np.argmax(np.abs(U[:, i]))
        if U[pivot, i] < 0:
            U[:, i] = -U[:, i]
    if d:
        V = (X.T @ U) / np.sqrt(eigvals[:d])
    else:
        V = np.zeros((trajectory.lag_count, 0))

    return SpectralDecomposition(
        eigenvalues=eigvals,
        effective_rank=d,
        left_vectors=U,
        factor_vectors=V,
        window_length=trajectory.window_length,
        lag_count=trajectory.lag_count,
        series_length=trajectory.series_length,
    )


def diagonal_average(matrix, label=""):
    """Average a matrix along its anti-diagonals into a series.

    ``g[k]`` is the mean of all entries with ``i + j = k``. Applied to a
    Hankel matrix this recovers its generating series exactly.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.size == 0:
        raise ParameterError("diagonal averaging needs a non-empty matrix")
    L, K = matrix.shape
    n = L + K - 1
    sums = np.zeros(n)
    counts = np.zeros(n)
    for i in range(L):
        sums[i : i + K] += matrix[i]
        counts[i : i + K] += 1
    return Series(sums / counts, label=label)


def reconstruct(decomposition, grouping, labels=None):
    """Reconstruct one series per grouping subset.

    Each subset's elementary matrices are summed and diagonal-averaged;
    component order follows subset order.
    """
    grouping.validate_against(decomposition.effective_rank)
    if labels is None:
        labels = tuple(
            f"component-{k + 1}" for k in range(len(grouping.subsets))
        )
    components = []
    for subset, lab in zip(grouping.subsets, labels):
        resulting = np.zeros(
            (decomposition.window_length, decomposition.lag_count)
        )
        for index in subset:
            resulting += decomposition.elementary_matrix(index)
        components.append(diagonal_average(resulting, label=lab))
    return ComponentSet(
        components=tuple(components),
        labels=tuple(labels),
        grouping=grouping,
    )


def full_grouping(decomposition, trend_subset=None):
    """Grouping covering the whole index set {1..d} as a single subset."""
    d = decomposition.effective_rank
    return Grouping(subsets=(tuple(range(1, d + 1)),), trend_index=trend_subset)


def advise_grouping(decomposition, pair_tolerance=0.1, noise_floor=1e-3):
    """Suggest periodic pairs, a noise cutoff, and trend candidates.

    A consecutive pair (i, i+1) of non-noise eigentriples is flagged as a
    periodic candidate when the gap between its singular values, normalized
    by their sum, is at most ``pair_tolerance``. Eigentriples whose
    eigenvalue falls to ``noise_floor`` times the leading one are reported
    as noise; the leading run of eigentriples not in any candidate pair is
    reported as trend candidates. Purely advisory: nothing is mutated.
    """
    if not 0 < pair_tolerance < 1:
        raise ParameterError("pair tolerance must lie in (0, 1)")
    if not 0 < noise_floor < 1:
        raise ParameterError("noise floor must lie in (0, 1)")
    d = decomposition.effective_rank
    if d == 0:
        return GroupingAdvice((), None, ())
    lam = decomposition.eigenvalues
    sv = decomposition.singular_values

    cutoff = None
    for i in range(d):
        if lam[i] <= noise_floor * lam[0]:
            cutoff = i + 1  # 1-based
            break
    signal_top = d if cutoff is None else cutoff - 1

    pairs = []
    gaps = {}
    for i in range(1, signal_top):  # pair (i, i+1), 1-based
        denom = sv[i - 1] + sv[i]
        if denom <= 0:
            continue
        gap = (sv[i - 1] - sv[i]) / denom
        gaps[(i, i + 1)] = float(gap)
        if gap <= pair_tolerance:
            pairs.append((i, i + 1))

    paired = {i for p in pairs for i in p}
    trend = []
    for i in range(1, signal_top + 1):
        if i in paired:
            break
        trend.append(i)

    return GroupingAdvice(
        periodic_pairs=tuple(pairs),
        noise_cutoff=cutoff,
        trend_candidates=tuple(trend),
        pair_gaps=gaps,
    )


def autocorrelation(values):
    """Biased sample autocorrelation of a demeaned sequence, lags 0..N-1.

    Returns None for a zero-variance sequence.
    """
    x = np.asarray(values, dtype=float)
    x = x - x.mean()
    denom = float(np.dot(x, x))
    if denom == 0.0:
        return None
    n = x.size
    return np.array(
        [np.dot(x[: n - lag], x[lag:]) / denom for lag in range(n)]
    )


def estimate_period(series, threshold=0.1):
    """Lag of the first significant positive autocorrelation maximum.

    Scans lags 1..N-3 for a local maximum of the autocorrelation exceeding
    ``threshold``; returns the lag as a float, or None when no lag
    qualifies (including the zero-variance case).
    """
    n = len(series)
    if n < 4:
        raise ParameterError("period estimation needs at least 4 samples")
    r = autocorrelation(series.values)
    if r is None:
        return None
    max_lag = n - 3
    for lag in range(1, max_lag + 1):
        left = r[lag - 1]
        right = r[lag + 1] if lag + 1 <= max_lag else -np.inf
        if r[lag] >= left and r[lag] >= right and r[lag] > threshold:
            return float(lag)
    return None
