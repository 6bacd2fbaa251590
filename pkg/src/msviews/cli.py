"""Command-line driver: analyze one version or a whole evolution series.

Exit codes: 0 on success, 1 on fatal I/O problems, 2 on invalid flags.
Warnings (skipped files, unmatched calls) go to standard error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from msviews.discovery import RootNotFound
from msviews.exporter import WriteFailure, write_artifacts
from msviews.matcher import Disposition
from msviews.metrics import (
    DuplicateVersionLabel,
    build_timeline,
    format_delta_table,
    format_report_table,
)
from msviews.pipeline import AnalysisOptions, AnalysisResult, analyze_tree
from msviews.profiles import get_profile, load_profile_file


def _ratio(value: str) -> float:
    try:
        parsed = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not 0.0 <= parsed <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1]: {value}")
    return parsed


def _non_negative(value: str) -> int:
    try:
        parsed = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if parsed < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return parsed


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default="msviews-out", help="artifact directory")
    parser.add_argument(
        "--profile", default="spring-java", help="built-in language profile name"
    )
    parser.add_argument(
        "--profile-file", default=None, help="TOML file defining a custom profile"
    )
    parser.add_argument(
        "--name-sim",
        type=_ratio,
        default=None,
        help="name similarity threshold for entity merging (default 0.85)",
    )
    parser.add_argument(
        "--field-sim",
        type=_ratio,
        default=None,
        help="field compatibility threshold for entity merging (default 0.5)",
    )
    parser.add_argument(
        "--coupling-threshold",
        type=_non_negative,
        default=None,
        help="annotate graph nodes with more than N distinct dependencies",
    )
    parser.add_argument(
        "--report-unmatched",
        action="store_true",
        help="print unresolved outbound calls",
    )
    parser.add_argument(
        "--per-service",
        action="store_true",
        help="also write a pre-merge class diagram per microservice",
    )
    parser.add_argument(
        "--strict-response-only",
        action="store_true",
        help="classify transient entities from endpoint response types only",
    )


def _build_options(args: argparse.Namespace) -> AnalysisOptions:
    if args.profile_file:
        profile = load_profile_file(args.profile_file)
    else:
        profile = get_profile(args.profile)
    options = AnalysisOptions(profile=profile)
    if args.name_sim is not None:
        options.name_threshold = args.name_sim
    if args.field_sim is not None:
        options.field_threshold = args.field_sim
    options.strict_response_only = args.strict_response_only
    return options


def _print_warnings(result: AnalysisResult) -> None:
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    unresolved = [
        r for r in result.match_results if r.disposition is Disposition.UNRESOLVED
    ]
    if unresolved:
        print(
            f"warning: {len(unresolved)} outbound call(s) did not match any endpoint",
            file=sys.stderr,
        )


def _report_unmatched(result: AnalysisResult) -> None:
    for r in result.match_results:
        if r.disposition is Disposition.UNRESOLVED:
            print(f"{r.caller}\t{r.call.http_method.value}\t{r.call.url_path}")


def cmd_analyze(args: argparse.Namespace) -> int:
    options = _build_options(args)
    label = args.label or Path(args.path).resolve().name

    if args.discover_only:
        from msviews.discovery import discover

        for manifest in discover(args.path):
            print(
                f"{manifest.microservice_name}\t{manifest.root_dir}"
                f"\t{manifest.evidence.value}"
            )
        return 0

    result = analyze_tree(args.path, label, options)
    _print_warnings(result)
    timeline = build_timeline([result.report])
    write_artifacts(
        args.out,
        result.system,
        result.resolution,
        timeline,
        coupling_threshold=args.coupling_threshold,
        per_service=args.per_service,
    )
    print(format_report_table([result.report]))
    if args.report_unmatched:
        _report_unmatched(result)
    return 0


def cmd_evolve(args: argparse.Namespace) -> int:
    options = _build_options(args)
    versions: list[tuple[str, str]] = []
    for spec in args.versions:
        label, sep, path = spec.partition("=")
        if not sep or not label or not path:
            raise SpecError(f"version spec must look like label=path: {spec!r}")
        versions.append((label, path))
    if len({label for label, _ in versions}) != len(versions):
        raise SpecError("duplicate version labels")

    reports = []
    out_root = Path(args.out)
    for label, path in versions:
        result = analyze_tree(path, label, options)
        _print_warnings(result)
        timeline = build_timeline([result.report])
        write_artifacts(
            out_root / label,
            result.system,
            result.resolution,
            timeline,
            coupling_threshold=args.coupling_threshold,
            per_service=args.per_service,
        )
        if args.report_unmatched:
            _report_unmatched(result)
        reports.append(result.report)

    timeline = build_timeline(reports)
    from msviews.exporter import TIMELINE_FILENAME, export_timeline_csv

    out_root.mkdir(parents=True, exist_ok=True)
    (out_root / TIMELINE_FILENAME).write_bytes(
        export_timeline_csv(timeline).encode("utf-8")
    )
    print(format_report_table(reports))
    print()
    print(format_delta_table(timeline))
    return 0


class SpecError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="msviews",
        description=(
            "Reconstruct service and data views of a microservice system "
            "and compute their evolution metrics"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyze one version directory")
    analyze.add_argument("path", help="repository root to analyze")
    analyze.add_argument("--label", default=None, help="version label for reports")
    analyze.add_argument(
        "--discover-only",
        action="store_true",
        help="print detected microservices and stop",
    )
    _add_common_flags(analyze)

    evolve = sub.add_parser("evolve", help="analyze an ordered series of versions")
    evolve.add_argument(
        "versions", nargs="+", metavar="LABEL=PATH", help="version specs in order"
    )
    _add_common_flags(evolve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        return cmd_evolve(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DuplicateVersionLabel as exc:
        print(f"error: duplicate version label {exc}", file=sys.stderr)
        return 2
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RootNotFound, FileNotFoundError) as exc:
        print(f"error: path not found: {exc}", file=sys.stderr)
        return 1
    except (WriteFailure, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
