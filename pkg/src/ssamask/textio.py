"""Plain-text serialization: series files, grouping grammar, YAML configs.

Series files are columnar: '#'-prefixed header lines carrying label,
length, and provenance, then one value per line at full precision.
Groupings use the '|'-separated grammar ``"1,2|3,4|5,6|7-20"`` with
1-based indices and inclusive ranges. Group definitions and mask plans
are declared in one YAML document with ``group`` and ``mask`` sections.
"""

import io

import yaml

from .errors import ParameterError
from .masking import MaskPlan, TrendSpec
from .microdata import GroupDefinition, QuantitySignal
from .ssa import Grouping, Series


def format_series(series, provenance=""):
    """Serialize a series into the columnar text format."""
    lines = [
        f"# label: {series.label}",
        f"# n: {len(series)}",
        f"# provenance: {provenance}",
    ]
    lines.extend(repr(float(v)) for v in series.values)
    return "\n".join(lines) + "\n"


def write_series(series, target, provenance=""):
    text = format_series(series, provenance=provenance)
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", encoding="utf-8") as handle:
            handle.write(text)


def read_series(source):
    """Parse a columnar series file; returns (Series, header dict)."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
    header = {}
    values = []
    for line_number, line in enumerate(io.StringIO(text), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if ":" in body:
                key, _, value = body.partition(":")
                header[key.strip()] = value.strip()
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ParameterError(
                f"line {line_number}: not a number: {line!r}"
            ) from None
    if "n" in header and int(header["n"]) != len(values):
        raise ParameterError(
            f"header declares n={header['n']} but file has {len(values)} values"
        )
    return Series(values, label=header.get("label", "")), header


def parse_grouping(text, trend_subset=None):
    """Parse the ``"1,2|3,4|7-20"`` grouping grammar (1-based indices).

    ``trend_subset`` is the 1-based position of the trend subset, or None.
    """
    subsets = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if not chunk:
            raise ParameterError(f"empty subset in grouping {text!r}")
        indices = []
        for token in chunk.split(","):
            token = token.strip()
            if "-" in token:
                lo, _, hi = token.partition("-")
                try:
                    lo, hi = int(lo), int(hi)
                except ValueError:
                    raise ParameterError(
                        f"bad range {token!r} in grouping {text!r}"
                    ) from None
                if hi < lo:
                    raise ParameterError(
                        f"descending range {token!r} in grouping {text!r}"
                    )
                indices.extend(range(lo, hi + 1))
            else:
                try:
                    indices.append(int(token))
                except ValueError:
                    raise ParameterError(
                        f"bad index {token!r} in grouping {text!r}"
                    ) from None
        subsets.append(tuple(indices))
    trend_index = None
    if trend_subset is not None:
        if not 1 <= trend_subset <= len(subsets):
            raise ParameterError(
                f"trend subset {trend_subset} outside 1..{len(subsets)}"
            )
        trend_index = trend_subset - 1
    return Grouping(subsets=tuple(subsets), trend_index=trend_index)


def format_grouping(grouping):
    """Render a grouping back into the '|'-separated grammar."""
    chunks = []
    for subset in grouping.subsets:
        parts = []
        run_start = run_end = subset[0]
        for i in subset[1:]:
            if i == run_end + 1:
                run_end = i
                continue
            parts.append(_run(run_start, run_end))
            run_start = run_end = i
        parts.append(_run(run_start, run_end))
        chunks.append(",".join(parts))
    return "|".join(chunks)


def _run(lo, hi):
    if hi > lo + 1:
        return f"{lo}-{hi}"
    if hi == lo + 1:
        return f"{lo},{hi}"
    return str(lo)


def load_config(source):
    """Load a YAML config document; returns the raw mapping."""
    if hasattr(source, "read"):
        data = yaml.safe_load(source)
    else:
        with open(source, "r", encoding="utf-8") as handle:
            data = yaml.safe_load(handle)
    if not isinstance(data, dict):
        raise ParameterError("config must be a mapping")
    return data


def group_definition_from_config(config):
    """Build a GroupDefinition from the ``group`` section of a config."""
    section = config.get("group")
    if section is None:
        raise ParameterError("config has no 'group' section")
    try:
        return GroupDefinition(
            vital_attributes=tuple(section["vital_attributes"]),
            vital_combinations=tuple(
                tuple(c) if isinstance(c, (list, tuple)) else (c,)
                for c in section["vital_combinations"]
            ),
            parameter_attribute=section["parameter_attribute"],
            parameter_values=tuple(section["parameter_values"]),
        )
    except KeyError as exc:
        raise ParameterError(f"group section missing key {exc}") from None


def trend_spec_from_config(section, base_dir=None):
    """Build a TrendSpec from the ``trend`` mapping of a mask section."""
    mode = section.get("mode")
    if mode == "explicit":
        if "file" in section:
            path = section["file"]
            if base_dir is not None:
                import os

                path = os.path.join(base_dir, path)
            series, _ = read_series(path)
            values = tuple(series.values)
        else:
            values = tuple(section.get("values", ()))
        return TrendSpec(mode="explicit", values=values)
    if mode == "plateau_smooth":
        return TrendSpec(
            mode="plateau_smooth",
            cap=section.get("cap"),
            half_width=section.get("half_width"),
        )
    if mode == "scale":
        return TrendSpec(mode="scale", factor=section.get("factor"))
    raise ParameterError(f"unknown trend mode {mode!r} in mask config")


def mask_plan_from_config(config, base_dir=None):
    """Build a MaskPlan from the ``mask`` section of a config."""
    section = config.get("mask")
    if section is None:
        raise ParameterError("config has no 'mask' section")
    try:
        grouping = parse_grouping(
            section["grouping"], trend_subset=section.get("trend_subset", 1)
        )
        return MaskPlan(
            window_length=int(section["window_length"]),
            grouping=grouping,
            trend_spec=trend_spec_from_config(
                section["trend"], base_dir=base_dir
            ),
        )
    except KeyError as exc:
        raise ParameterError(f"mask section missing key {exc}") from None


def format_signal(signal, provenance=""):
    """Serialize a quantity signal: integer counts, labeled elements."""
    lines = [
        f"# label: {signal.series.label}",
        f"# n: {len(signal)}",
        f"# provenance: {provenance}",
        f"# parameters: {','.join(signal.parameter_labels)}",
    ]
    lines.extend(str(int(v)) for v in signal.counts)
    return "\n".join(lines) + "\n"


def read_signal(source):
    """Parse a quantity signal file written by :func:`format_signal`."""
    series, header = read_series(source)
    params = header.get("parameters")
    if params:
        labels = tuple(p.strip() for p in params.split(","))
    else:
        labels = tuple(str(i + 1) for i in range(len(series)))
    return QuantitySignal(series=series, parameter_labels=labels)


def write_signal(signal, target, provenance=""):
    text = format_signal(signal, provenance=provenance)
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", encoding="utf-8") as handle:
            handle.write(text)
