"""Microfile ingestion, group definitions, and quantity signals.

A microfile is a row-per-respondent table of coded attribute values. A
group definition selects the respondents to protect (vital attributes and
admissible value combinations) and orders them along one parameter
attribute; counting group members per parameter value yields the quantity
signal. The inverse direction propagates a modified signal back into the
records by seeded removal and round-robin duplication.
"""

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import (
    DefinitionError,
    IngestionError,
    ParameterError,
    SynthesisError,
)
from .ssa import Series


class Microfile:
    """Immutable table of respondent records.

    ``schema`` is the ordered attribute names; ``rows`` a tuple of value
    tuples, every cell stored as a string code.
    """

    def __init__(self, schema, rows):
        self.schema = tuple(str(a) for a in schema)
        n = len(self.schema)
        frozen = []
        for idx, row in enumerate(rows):
            row = tuple(str(v) for v in row)
            if len(row) != n:
                raise IngestionError(
                    f"row {idx + 1} has {len(row)} values, schema has {n}",
                    line_number=idx + 1,
                )
            frozen.append(row)
        self.rows = tuple(frozen)

    def __len__(self):
        return len(self.rows)

    def column_index(self, attribute):
        try:
            return self.schema.index(attribute)
        except ValueError:
            raise DefinitionError(
                f"attribute {attribute!r} not in schema {list(self.schema)}"
            ) from None

    def value_domains(self):
        """Distinct values per attribute, for ingestion reporting."""
        domains = {a: set() for a in self.schema}
        for row in self.rows:
            for attr, value in zip(self.schema, row):
                domains[attr].add(value)
        return {a: sorted(vs) for a, vs in domains.items()}


@dataclass(frozen=True)
class GroupDefinition:
    """Vital attributes + value combinations, and one parameter attribute.

    ``parameter_values`` fixes the signal's element order; it is never
    sorted automatically because parameter codes may be ordinal.
    """

    vital_attributes: tuple
    vital_combinations: tuple
    parameter_attribute: str
    parameter_values: tuple

    def __post_init__(self):
        vital = tuple(str(a) for a in self.vital_attributes)
        combos = tuple(
            tuple(str(v) for v in combo) for combo in self.vital_combinations
        )
        pvals = tuple(str(v) for v in self.parameter_values)
        object.__setattr__(self, "vital_attributes", vital)
        object.__setattr__(self, "vital_combinations", combos)
        object.__setattr__(
            self, "parameter_attribute", str(self.parameter_attribute)
        )
        object.__setattr__(self, "parameter_values", pvals)
        if not vital:
            raise DefinitionError("at least one vital attribute is required")
        if not combos:
            raise DefinitionError("at least one vital value combination")
        if any(len(c) != len(vital) for c in combos):
            raise DefinitionError(
                "every vital value combination must cover all vital attributes"
            )
        if not pvals:
            raise DefinitionError("parameter values must be non-empty")
        if len(set(pvals)) != len(pvals):
            raise DefinitionError("parameter values must be duplicate-free")
        if self.parameter_attribute in vital:
            raise DefinitionError(
                "parameter attribute must differ from every vital attribute"
            )


@dataclass(frozen=True)
class QuantitySignal:
    """Non-negative integer counts, one per parameter value."""

    series: Series
    parameter_labels: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "parameter_labels", tuple(str(v) for v in self.parameter_labels)
        )
        v = self.series.values
        if len(self.parameter_labels) != v.size:
            raise ParameterError(
                "one parameter label per signal element is required"
            )
        if np.any(v < 0) or not np.all(v == np.round(v)):
            raise ParameterError(
                "quantity signal values must be non-negative integers"
            )

    def __len__(self):
        return len(self.series)

    @property
    def counts(self):
        return self.series.values.astype(int)


def load_microfile(
    source,
    identifier_columns=(),
    expected_columns=None,
    delimiter=",",
):
    """Read a delimiter-separated microfile, dropping identifier columns.

    ``source`` is a path, text stream, or bytes. Declared identifier columns
    must exist in the header and are removed; with ``expected_columns`` the
    header is checked against the declared schema. Ragged rows raise an
    ingestion error naming the line.
    """
    if isinstance(source, bytes):
        stream = io.StringIO(source.decode("utf-8"))
        close = False
    elif hasattr(source, "read"):
        stream = source
        close = False
    else:
        stream = open(source, "r", encoding="utf-8", newline="")
        close = True
    try:
        reader = csv.reader(stream, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestionError("microfile is empty", line_number=1) from None
        header = [h.strip() for h in header]
        if expected_columns is not None:
            expected = [str(c) for c in expected_columns]
            if header != expected:
                unknown = [h for h in header if h not in expected]
                raise IngestionError(
                    f"header {header} does not match declared schema "
                    f"{expected} (unknown columns: {unknown})",
                    line_number=1,
                )
        missing = [c for c in identifier_columns if c not in header]
        if missing:
            raise IngestionError(
                f"declared identifier columns {missing} absent from header",
                line_number=1,
            )
        drop = {header.index(c) for c in identifier_columns}
        keep = [i for i in range(len(header)) if i not in drop]
        schema = [header[i] for i in keep]
        rows = []
        for line_number, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise IngestionError(
                    f"line {line_number} has {len(row)} values, "
                    f"expected {len(header)}",
                    line_number=line_number,
                )
            rows.append(tuple(row[i].strip() for i in keep))
        return Microfile(schema, rows)
    finally:
        if close:
            stream.close()


def save_microfile(microfile, target, delimiter=","):
    """Write a microfile back out as delimiter-separated values."""
    if hasattr(target, "write"):
        writer = csv.writer(target, delimiter=delimiter, lineterminator="\n")
        writer.writerow(microfile.schema)
        writer.writerows(microfile.rows)
    else:
        with open(target, "w", encoding="utf-8", newline="") as handle:
            save_microfile(microfile, handle, delimiter=delimiter)


def _vital_tuple(row, vital_idx):
    return tuple(row[i] for i in vital_idx)


def _group_indices(microfile, group):
    vital_idx = [microfile.column_index(a) for a in group.vital_attributes]
    param_idx = microfile.column_index(group.parameter_attribute)
    return vital_idx, param_idx


def build_quantity_signal(microfile, group, label=None):
    """Count group members per parameter value, in parameter order.

    Rows whose vital tuple is not among the group's combinations, or whose
    parameter value lies outside the admissible list, are excluded.
    """
    vital_idx, param_idx = _group_indices(microfile, group)
    combos = set(group.vital_combinations)
    position = {v: k for k, v in enumerate(group.parameter_values)}
    counts = np.zeros(len(group.parameter_values), dtype=int)
    for row in microfile.rows:
        if _vital_tuple(row, vital_idx) not in combos:
            continue
        k = position.get(row[param_idx])
        if k is not None:
            counts[k] += 1
    if label is None:
        label = (
            f"{group.parameter_attribute} counts for "
            f"{'+'.join(group.vital_attributes)}"
        )
    return QuantitySignal(
        series=Series(counts, label=label),
        parameter_labels=group.parameter_values,
    )


def apply_modified_signal(
    microfile, group, target, seed, donor_policy="forbid"
):
    """Rewrite records so the group's quantity signal equals ``target``.

    Per parameter bucket, surplus rows are removed by a seeded uniform draw
    (numpy PCG64) and deficits are filled by duplicating existing bucket
    rows in round-robin row order. Growing an empty bucket is an error
    under policy ``forbid``; under ``nearest-parameter`` a row is copied
    from the closest non-empty bucket and its parameter value overwritten.
    Rows outside the group are untouched; output is deterministic for a
    fixed seed.
    """
    if donor_policy not in ("forbid", "nearest-parameter"):
        raise ParameterError(
            f"unknown donor policy {donor_policy!r}; "
            "expected 'forbid' or 'nearest-parameter'"
        )
    if len(target) != len(group.parameter_values):
        raise ParameterError(
            f"target signal length {len(target)} does not match "
            f"{len(group.parameter_values)} parameter values"
        )
    vital_idx, param_idx = _group_indices(microfile, group)
    combos = set(group.vital_combinations)
    position = {v: k for k, v in enumerate(group.parameter_values)}

    buckets = {k: [] for k in range(len(group.parameter_values))}
    for row_number, row in enumerate(microfile.rows):
        if _vital_tuple(row, vital_idx) not in combos:
            continue
        k = position.get(row[param_idx])
        if k is not None:
            buckets[k].append(row_number)

    rng = np.random.default_rng(seed)
    removed = set()
    appended = []
    for k, label in enumerate(group.parameter_values):
        current = len(buckets[k])
        wanted = int(target.counts[k])
        if wanted < current:
            excess = current - wanted
            drop = rng.choice(buckets[k], size=excess, replace=False)
            removed.update(int(i) for i in drop)
        elif wanted > current:
            deficit = wanted - current
            donors = buckets[k]
            if donors:
                for j in range(deficit):
                    appended.append(microfile.rows[donors[j % len(donors)]])
            else:
                if donor_policy == "forbid":
                    raise SynthesisError(
                        f"bucket {label!r} must grow to {wanted} but has no "
                        "matching rows (donor policy 'forbid')",
                        bucket=label,
                    )
                donor_row = _nearest_donor(microfile, buckets, k)
                if donor_row is None:
                    raise SynthesisError(
                        f"bucket {label!r} must grow but no bucket has any "
                        "matching rows",
                        bucket=label,
                    )
                patched = list(donor_row)
                patched[param_idx] = label
                appended.extend([tuple(patched)] * deficit)

    new_rows = [
        row
        for row_number, row in enumerate(microfile.rows)
        if row_number not in removed
    ]
    new_rows.extend(appended)
    return Microfile(microfile.schema, new_rows)


def _nearest_donor(microfile, buckets, k):
    """First row of the closest non-empty bucket; smaller index wins ties."""
    best = None
    for other, members in buckets.items():
        if other == k or not members:
            continue
        distance = abs(other - k)
        if best is None or distance < best[0] or (
            distance == best[0] and other < best[1]
        ):
            best = (distance, other)
    if best is None:
        return None
    return microfile.rows[buckets[best[1]][0]]
