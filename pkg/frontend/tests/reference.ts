/**
 * Published reference values for the bundled example (census 2000
 * California 5% PUMS, active-duty military by age, San Diego area
 * excluded): the adjusted quantity signal, the hand-shaped replacement
 * trend, and the masked signal it produces with L=20 and grouping
 * 1,2|3,4|5,6|7-20.
 */

export const Q_ADJUSTED = [
  2, 86, 223, 241, 227, 193, 152, 140, 95, 121, 92, 105, 87, 89, 79, 80,
  83, 93, 78, 85, 79, 61, 62, 63, 59, 30, 38, 28, 24, 16, 21, 16, 10, 11,
  4, 3, 7, 4, 2, 3,
];

export const REPLACEMENT_TREND = [
  -10.345, 96.508, 109.656, 117.067, 121.224, 123.347, 124.0, 123.347,
  121.224, 117.067, 111.498, 105.856, 98.815, 92.343, 86.566, 82.496,
  79.743, 76.639, 71.852, 67.303, 61.687, 56.087, 51.302, 47.627, 44.678,
  42.162, 39.851, 37.71, 35.51, 33.61, 31.829, 30.166, 28.424, 26.547,
  24.421, 22.043, 19.646, 17.442, 15.178, 13.169,
];

export const Q_MASKED = [
  2, 73, 127, 129, 133, 129, 117, 124, 92, 120, 92, 105, 87, 89, 79, 80,
  83, 93, 78, 85, 79, 61, 62, 63, 59, 30, 38, 28, 24, 16, 21, 16, 10, 11,
  4, 3, 7, 4, 2, 3,
];

export const PARAMETER_LABELS = Array.from({ length: 40 }, (_, i) =>
  String(17 + i),
);

export const REFERENCE_SUBSETS = [
  [1, 2],
  [3, 4],
  [5, 6],
  Array.from({ length: 14 }, (_, i) => 7 + i),
];
