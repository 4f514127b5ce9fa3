"""Command line entry point.

Exit codes: 0 success, 1 validation failure, 2 oracle mismatch, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .report import (
    EXIT_IO,
    EXIT_OK,
    ReportFlags,
    corpus_text,
    process_file,
    report_json,
    report_text,
    run_corpus,
)


def _int_list(text: str):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="parcones",
        description="Intersection ring, nef and pseudoeffective cones, and semistability "
        "of the projectivization of a parabolic bundle on a curve.",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", type=Path, help="bundle document (JSON)")
    src.add_argument("--corpus", type=Path, help="directory of bundle documents")
    p.add_argument("--k", type=_int_list, default=None, help="cycle dimensions to report, e.g. 1,2 (default all)")
    p.add_argument("--check-oracle", action="store_true", help="cross-check against the orbifold cover")
    p.add_argument("--gammas", type=_int_list, default=None, help="cover orders for the oracle, e.g. 2,4,6")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--strict", action="store_true", help="treat warnings as errors")
    p.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")
    return p


def _emit(text: str, out) -> int:
    if out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        out.write_text(text)
    except OSError as exc:
        print(f"cannot write {out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    flags = ReportFlags(ks=args.k, check_oracle=args.check_oracle, gammas=args.gammas, strict=args.strict)

    if args.corpus is not None:
        if not args.corpus.is_dir():
            print(f"corpus directory {args.corpus} not found", file=sys.stderr)
            return EXIT_IO
        summary = run_corpus(args.corpus, flags)
        text = json.dumps(summary, indent=2, sort_keys=True) + "\n" if args.format == "json" else corpus_text(summary)
        code = _emit(text, args.out)
        return code or summary["exit_code"]

    result = process_file(args.input, flags)
    if result.report is None:
        for e in result.errors:
            print(e, file=sys.stderr)
        return result.exit_code
    text = report_json(result.report) if args.format == "json" else report_text(result.report)
    code = _emit(text, args.out)
    for e in result.errors:
        print(e, file=sys.stderr)
    return code or result.exit_code


if __name__ == "__main__":
    sys.exit(main())
