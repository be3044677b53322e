"""Command line entry point: ``modcartan verify`` and ``modcartan describe``."""
from __future__ import annotations

import argparse
import json
import sys

from .checks import CLAIMS, SUITES
from .runner import emit_report, exit_code, run_suite


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modcartan", description="Exact verification of invariant-form and homology claims over F_p.")
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a suite of checks")
    v.add_argument("--suite", default="all", choices=SUITES + ("all",))
    v.add_argument("--config", help="JSON config file")
    v.add_argument("--out", help="report path (stdout when omitted)")
    v.add_argument("--format", default="json", choices=("json", "csv"))
    v.add_argument("--stretch", action="store_true", help="include the large stretch instances")
    v.add_argument("--jobs", type=int, default=1)
    sub.add_parser("describe", help="print the claims-to-checks matrix")
    return ap


def _describe() -> str:
    lines = [f"{'claim':<6}{'suite':<26}statement"]
    for cid, text, suite in CLAIMS:
        lines.append(f"{cid:<6}{suite:<26}{text}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "describe":
        sys.stdout.write(_describe())
        return 0
    cfg = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    if args.stretch:
        cfg["stretch"] = True
    results = run_suite(args.suite, cfg, jobs=args.jobs)
    text = emit_report(results, args.format, args.out, cfg)
    if args.out is None:
        sys.stdout.write(text)
    failed = [r for r in results if not r.passed and not r.skipped]
    print(f"{len(results)} checks, {len(failed)} failed, {sum(r.skipped for r in results)} skipped", file=sys.stderr)
    return exit_code(results)


if __name__ == "__main__":
    raise SystemExit(main())
