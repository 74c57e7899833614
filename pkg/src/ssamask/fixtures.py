"""Bundled reference example: California military personnel by age.

Quantity signals counted from the 2000 census 5-percent public microdata
sample for California (active-duty military, ages 17 to 56). The adjusted
signal excludes the San Diego area. Component vectors, the hand-shaped
replacement trend, and the masked signal are the published reference
values for window length 20 and grouping ``1,2|3,4|5,6|7-20``; the raw
microdata file is not bundled, only the derived signals.
"""

import os

from .errors import VerificationError
from .microdata import QuantitySignal
from .ssa import Series
from .textio import read_series, read_signal

WINDOW_LENGTH = 20
GROUPING_TEXT = "1,2|3,4|5,6|7-20"
TREND_SUBSET = 1
PARAMETER_LABELS = tuple(str(age) for age in range(17, 57))

Q_FULL = (
    14, 203, 589, 713, 675, 604, 498, 374, 299, 274, 231, 231, 191, 212,
    176, 175, 158, 185, 159, 185, 173, 145, 119, 118, 101, 74, 72, 54, 42,
    32, 40, 30, 19, 13, 15, 10, 13, 5, 3, 3,
)

Q_ADJUSTED = (
    2, 86, 223, 241, 227, 193, 152, 140, 95, 121, 92, 105, 87, 89, 79, 80,
    83, 93, 78, 85, 79, 61, 62, 63, 59, 30, 38, 28, 24, 16, 21, 16, 10, 11,
    4, 3, 7, 4, 2, 3,
)

# Reference value at position 12 (105.856) is tabulated only through the
# additive identity with the sibling components.
ADJUSTED_COMPONENT_1 = (
    -10.345, 109.632, 205.501, 229.494, 215.163, 186.988, 159.323, 138.937,
    123.873, 118.371, 111.498, 105.856, 98.815, 92.343, 86.566, 82.496,
    79.743, 76.639, 71.852, 67.303, 61.687, 56.087, 51.302, 47.627, 44.678,
    42.162, 39.851, 37.710, 35.510, 33.610, 31.829, 30.166, 28.424, 26.547,
    24.421, 22.043, 19.646, 17.442, 15.178, 13.169,
)

ADJUSTED_COMPONENT_2 = (
    -2.600, -3.897, 7.618, 11.991, 10.347, 4.727, -1.905, -7.448, -11.376,
    -12.155, -12.059, -10.619, -8.640, -5.751, -2.352, 1.611, 5.617, 9.017,
    11.281, 12.633, 13.276, 12.816, 11.083, 8.460, 5.104, 1.165, -2.765,
    -6.736, -10.511, -13.715, -16.023, -17.522, -18.125, -17.906, -17.246,
    -16.284, -14.936, -13.391, -11.974, -10.411,
)

ADJUSTED_COMPONENT_3 = (
    14.835, -20.082, 11.729, -1.078, -1.038, 3.981, -7.909, 9.323, -11.634,
    11.133, -8.375, 7.597, -6.236, 4.463, -4.432, 2.010, -2.120, 2.239,
    -1.246, 0.911, 0.713, -1.069, 2.129, -1.636, 2.793, -2.506, 1.975,
    -2.265, 0.674, -1.813, 0.676, -1.134, 0.490, -0.513, 0.530, -0.076,
    0.209, 1.784, -0.839, 2.976,
)

ADJUSTED_COMPONENT_4 = (
    0.110, 0.347, -1.847, 0.593, 2.527, -2.696, 2.490, -0.812, -5.863,
    3.650, 0.937, 2.166, 3.061, -2.055, -0.782, -6.116, -0.240, 5.105,
    -3.887, 4.153, 3.324, -6.833, -2.515, 8.549, 6.425, -10.822, -1.060,
    -0.709, -1.673, -2.082, 4.518, 4.490, -0.789, 2.873, -3.705, -2.684,
    2.081, -1.835, -0.366, -2.735,
)

ADJUSTED_COMPONENTS = (
    ADJUSTED_COMPONENT_1,
    ADJUSTED_COMPONENT_2,
    ADJUSTED_COMPONENT_3,
    ADJUSTED_COMPONENT_4,
)

REPLACEMENT_TREND = (
    -10.345, 96.508, 109.656, 117.067, 121.224, 123.347, 124.000, 123.347,
    121.224, 117.067, 111.498, 105.856, 98.815, 92.343, 86.566, 82.496,
    79.743, 76.639, 71.852, 67.303, 61.687, 56.087, 51.302, 47.627, 44.678,
    42.162, 39.851, 37.710, 35.510, 33.610, 31.829, 30.166, 28.424, 26.547,
    24.421, 22.043, 19.646, 17.442, 15.178, 13.169,
)

Q_MASKED = (
    2, 73, 127, 129, 133, 129, 117, 124, 92, 120, 92, 105, 87, 89, 79, 80,
    83, 93, 78, 85, 79, 61, 62, 63, 59, 30, 38, 28, 24, 16, 21, 16, 10, 11,
    4, 3, 7, 4, 2, 3,
)

MASKED_COMPONENT_1 = (
    50.931, 90.148, 111.148, 117.605, 118.875, 117.921, 115.819, 113.642,
    110.154, 108.694, 105.312, 102.507, 98.915, 95.519, 91.936, 88.599,
    85.290, 81.630, 77.128, 72.689, 67.280, 61.954, 57.480, 53.351, 49.103,
    44.673, 40.222, 35.740, 31.093, 26.718, 22.547, 18.405, 14.333, 10.343,
    6.394, 2.733, -0.165, -2.262, -4.114, -5.392,
)

MASKED_COMPONENT_2 = (
    -51.014, -11.386, 8.782, 13.694, 13.350, 10.869, 6.351, 2.713, -2.560,
    -3.293, -6.756, -7.766, -8.906, -8.357, -6.933, -3.961, -0.200, 3.309,
    5.220, 7.049, 7.695, 7.534, 6.181, 4.076, 1.523, -1.461, -4.019,
    -6.101, -7.477, -7.849, -7.105, -5.543, -3.410, -0.990, 1.439, 3.418,
    4.907, 6.159, 6.817, 7.331,
)

MASKED_COMPONENT_3 = (
    4.548, -8.031, 7.166, -3.244, -0.203, 3.355, -6.395, 8.933, -10.682,
    10.648, -9.099, 7.492, -6.036, 4.739, -3.776, 2.592, -2.129, 1.976,
    -1.419, 0.586, 0.608, -1.469, 2.138, -2.584, 3.016, -3.038, 2.571,
    -2.137, 1.612, -1.674, 1.509, -1.294, 1.096, -0.867, 0.841, -0.442,
    -0.227, 1.125, -1.592, 1.458,
)

MASKED_COMPONENT_4 = (
    -2.466, 2.269, -0.097, 0.945, 0.977, -3.145, 1.225, -1.288, -4.913,
    3.951, 2.543, 2.767, 3.027, -2.901, -2.227, -7.230, 0.039, 6.085,
    -2.930, 4.676, 3.417, -7.019, -3.799, 8.156, 5.359, -10.174, -0.773,
    0.497, -1.229, -1.194, 4.050, 4.431, -2.019, 2.515, -4.674, -2.710,
    2.485, -1.022, 0.889, -0.397,
)

MASKED_COMPONENTS = (
    MASKED_COMPONENT_1,
    MASKED_COMPONENT_2,
    MASKED_COMPONENT_3,
    MASKED_COMPONENT_4,
)

FIXTURE_FILES = {
    "quantity_full": "quantity_full_sample.txt",
    "quantity_adjusted": "quantity_adjusted_sample.txt",
    "adjusted_component_1": "adjusted_component_1.txt",
    "adjusted_component_2": "adjusted_component_2.txt",
    "adjusted_component_3": "adjusted_component_3.txt",
    "adjusted_component_4": "adjusted_component_4.txt",
    "replacement_trend": "replacement_trend.txt",
    "quantity_masked": "quantity_masked.txt",
    "masked_component_1": "masked_component_1.txt",
    "masked_component_2": "masked_component_2.txt",
    "masked_component_3": "masked_component_3.txt",
    "masked_component_4": "masked_component_4.txt",
}

_SIGNAL_NAMES = {"quantity_full", "quantity_adjusted", "quantity_masked"}


def reference_vectors():
    """Compiled reference vectors keyed like :data:`FIXTURE_FILES`."""
    return {
        "quantity_full": Q_FULL,
        "quantity_adjusted": Q_ADJUSTED,
        "adjusted_component_1": ADJUSTED_COMPONENT_1,
        "adjusted_component_2": ADJUSTED_COMPONENT_2,
        "adjusted_component_3": ADJUSTED_COMPONENT_3,
        "adjusted_component_4": ADJUSTED_COMPONENT_4,
        "replacement_trend": REPLACEMENT_TREND,
        "quantity_masked": Q_MASKED,
        "masked_component_1": MASKED_COMPONENT_1,
        "masked_component_2": MASKED_COMPONENT_2,
        "masked_component_3": MASKED_COMPONENT_3,
        "masked_component_4": MASKED_COMPONENT_4,
    }


def fixture_directory():
    """Directory holding the packaged fixture files."""
    return os.path.join(os.path.dirname(__file__), "fixtures")


def load_fixtures(directory=None):
    """Load every fixture file; quantity signals come back as such.

    Raises :class:`VerificationError` when a file is missing.
    """
    directory = directory or fixture_directory()
    loaded = {}
    for name, filename in FIXTURE_FILES.items():
        path = os.path.join(directory, filename)
        if not os.path.exists(path):
            raise VerificationError(f"missing fixture file {filename}")
        if name in _SIGNAL_NAMES:
            loaded[name] = read_signal(path)
        else:
            loaded[name], _ = read_series(path)
    return loaded


def adjusted_signal():
    """The adjusted quantity signal as a ready-made QuantitySignal."""
    return QuantitySignal(
        series=Series(Q_ADJUSTED, label="military-by-age (adjusted sample)"),
        parameter_labels=PARAMETER_LABELS,
    )


def full_signal():
    return QuantitySignal(
        series=Series(Q_FULL, label="military-by-age (full sample)"),
        parameter_labels=PARAMETER_LABELS,
    )
