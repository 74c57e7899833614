"""Command-line front door.

Verbs: signal, decompose, spectrum, mask, apply, verify-paper, serve.
Exit codes: 0 success, 1 validation failure, 2 verification mismatch.
"""

import argparse
import os
import sys

from . import fixtures, masking, ssa, textio, verify
from .errors import SsamaskError, VerificationError
from .masking import MaskPlan, TrendSpec
from .microdata import (
    apply_modified_signal,
    build_quantity_signal,
    load_microfile,
    save_microfile,
)
from .session import mask_provenance

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_MISMATCH = 2


def _add_microfile_options(parser):
    parser.add_argument("microfile", help="microfile path (CSV with header)")
    parser.add_argument(
        "--config", required=True, help="YAML config with the group section"
    )
    parser.add_argument(
        "--delimiter", default=",", help="microfile field delimiter"
    )


def _load_group(args):
    config = textio.load_config(args.config)
    group = textio.group_definition_from_config(config)
    identifiers = tuple(config.get("identifiers", ()))
    microfile = load_microfile(
        args.microfile,
        identifier_columns=identifiers,
        delimiter=args.delimiter,
    )
    return microfile, group, config


def _plan_from_args(args, config=None):
    if config is not None and "mask" in config:
        base_dir = os.path.dirname(os.path.abspath(args.config))
        plan = textio.mask_plan_from_config(config, base_dir=base_dir)
        if args.window is not None or args.grouping is not None:
            raise SsamaskError(
                "give the plan either in the config or via flags, not both"
            )
        return plan
    if args.window is None or args.grouping is None:
        raise SsamaskError(
            "a mask plan needs --window and --grouping (or a config "
            "with a mask section)"
        )
    grouping = textio.parse_grouping(
        args.grouping, trend_subset=args.trend_subset
    )
    if args.trend_file:
        series, _ = textio.read_series(args.trend_file)
        spec = TrendSpec(mode="explicit", values=tuple(series.values))
    elif args.trend_strategy:
        name, _, payload = args.trend_strategy.partition(":")
        if name == "scale":
            spec = TrendSpec(mode="scale", factor=float(payload))
        elif name == "plateau_smooth":
            cap, _, half = payload.partition(",")
            spec = TrendSpec(
                mode="plateau_smooth",
                cap=float(cap),
                half_width=int(half) if half else 0,
            )
        else:
            raise SsamaskError(
                f"unknown trend strategy {name!r}; expected "
                "'scale:<factor>' or 'plateau_smooth:<cap>[,<half-width>]'"
            )
    else:
        raise SsamaskError("a mask plan needs --trend-file or --trend-strategy")
    return MaskPlan(
        window_length=args.window, grouping=grouping, trend_spec=spec
    )


def _out_path(args, filename):
    os.makedirs(args.out_dir, exist_ok=True)
    return os.path.join(args.out_dir, filename)


def cmd_signal(args):
    microfile, group, _ = _load_group(args)
    signal = build_quantity_signal(microfile, group)
    path = _out_path(args, "quantity_signal.txt")
    textio.write_signal(
        signal, path, provenance=f"counted from {os.path.basename(args.microfile)}"
    )
    print(f"wrote {path} ({len(signal)} buckets, {signal.counts.sum()} rows)")
    return EXIT_OK


def cmd_decompose(args):
    series, _ = textio.read_series(args.series)
    grouping = textio.parse_grouping(
        args.grouping, trend_subset=args.trend_subset
    )
    trajectory = ssa.embed(series, args.window)
    decomposition = ssa.decompose(trajectory)
    components = ssa.reconstruct(decomposition, grouping)
    spectrum_path = _out_path(args, "spectrum.txt")
    textio.write_series(
        ssa.Series(decomposition.singular_values, label="singular spectrum"),
        spectrum_path,
        provenance=f"window={args.window}",
    )
    written = [spectrum_path]
    for k, component in enumerate(components, start=1):
        path = _out_path(args, f"component_{k}.txt")
        textio.write_series(
            component,
            path,
            provenance=(
                f"window={args.window} "
                f"subset={textio.format_grouping(ssa.Grouping(subsets=(grouping.subsets[k - 1],)))}"
            ),
        )
        written.append(path)
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_spectrum(args):
    series, _ = textio.read_series(args.series)
    window = args.window or ssa.default_window_length(len(series))
    decomposition = ssa.decompose(ssa.embed(series, window))
    advice = ssa.advise_grouping(decomposition)
    for i, value in enumerate(decomposition.singular_values, start=1):
        print(f"{i:3d} {value!r}")
    print(f"# effective rank: {decomposition.effective_rank}")
    print(f"# candidate pairs: {list(advice.periodic_pairs)}")
    print(f"# noise cutoff: {advice.noise_cutoff}")
    print(f"# trend candidates: {list(advice.trend_candidates)}")
    return EXIT_OK


def cmd_mask(args):
    config = None
    if args.config:
        config = textio.load_config(args.config)
    if args.series:
        signal = textio.read_signal(args.series)
        microfile = group = None
    else:
        if not args.microfile:
            raise SsamaskError("mask needs a series file or --microfile")
        microfile = load_microfile(
            args.microfile,
            identifier_columns=tuple((config or {}).get("identifiers", ())),
            delimiter=args.delimiter,
        )
        group = textio.group_definition_from_config(config)
        signal = build_quantity_signal(microfile, group)
    plan = _plan_from_args(args, config=config)
    masked, components, diagnostics = masking.mask_signal(signal, plan)
    report = masking.evaluate_utility(signal, masked, plan)

    masked_path = _out_path(args, "masked_signal.txt")
    textio.write_signal(masked, masked_path, provenance=mask_provenance(plan))
    print(f"wrote {masked_path}")
    if diagnostics["clamped_positions"]:
        print(
            "warning: clamped to zero at positions "
            f"{diagnostics['clamped_positions']}",
            file=sys.stderr,
        )
    report_path = _out_path(args, "utility_report.json")
    import json

    with open(report_path, "w", encoding="utf-8") as handle:
        json.dump(report.to_dict(), handle, indent=2, sort_keys=True)
        handle.write("\n")
    print(f"wrote {report_path}")

    if microfile is not None:
        modified = apply_modified_signal(
            microfile, group, masked, seed=args.seed,
            donor_policy=args.donor_policy,
        )
        microfile_path = _out_path(args, "modified_microfile.csv")
        save_microfile(modified, microfile_path, delimiter=args.delimiter)
        print(f"wrote {microfile_path}")
    return EXIT_OK


def cmd_apply(args):
    microfile, group, _ = _load_group(args)
    target = textio.read_signal(args.signal)
    modified = apply_modified_signal(
        microfile, group, target, seed=args.seed,
        donor_policy=args.donor_policy,
    )
    path = _out_path(args, "modified_microfile.csv")
    save_microfile(modified, path, delimiter=args.delimiter)
    print(f"wrote {path} ({len(modified)} rows)")
    return EXIT_OK


def cmd_verify_paper(args):
    directory = args.fixtures or fixtures.fixture_directory()
    report = verify.run_verification(directory)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_serve(args):
    from .service import serve

    serve(host=args.host, port=args.port, static_dir=args.static_dir)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ssamask",
        description=(
            "Decompose quantity signals, replace their trend to conceal "
            "group extremes, and write masked distributions back into "
            "microfiles."
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("signal", help="count a quantity signal from a microfile")
    _add_microfile_options(p)
    p.add_argument("--out-dir", default=".", help="output directory")
    p.set_defaults(func=cmd_signal)

    p = sub.add_parser("decompose", help="split a series into components")
    p.add_argument("series", help="columnar series file")
    p.add_argument("--window", "-L", type=int, required=True)
    p.add_argument(
        "--grouping", required=True,
        help="eigentriple subsets, e.g. '1,2|3,4|5,6|7-20' (1-based)",
    )
    p.add_argument(
        "--trend-subset", type=int, default=None,
        help="1-based position of the trend subset",
    )
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("spectrum", help="print the singular spectrum + advice")
    p.add_argument("series")
    p.add_argument("--window", "-L", type=int, default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("mask", help="replace a signal's trend and round")
    p.add_argument("series", nargs="?", help="columnar signal file")
    p.add_argument("--microfile", help="mask a microfile-derived signal")
    p.add_argument("--config", help="YAML config (group and/or mask sections)")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--window", "-L", type=int, default=None)
    p.add_argument("--grouping", default=None)
    p.add_argument("--trend-subset", type=int, default=1)
    p.add_argument("--trend-file", help="explicit replacement trend series")
    p.add_argument(
        "--trend-strategy",
        help="'scale:<factor>' or 'plateau_smooth:<cap>[,<half-width>]'",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--donor-policy", choices=("forbid", "nearest-parameter"),
        default="forbid",
    )
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_mask)

    p = sub.add_parser("apply", help="propagate a masked signal into a microfile")
    _add_microfile_options(p)
    p.add_argument("signal", help="target quantity signal file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--donor-policy", choices=("forbid", "nearest-parameter"),
        default="forbid",
    )
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser(
        "verify-paper",
        help="check the bundled reference example end to end",
    )
    p.add_argument(
        "fixtures", nargs="?", default=None,
        help="fixture directory (defaults to the bundled one)",
    )
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("serve", help="run the local session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--static-dir", default=None, help="frontend assets to serve")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SsamaskError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
