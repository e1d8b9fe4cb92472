"""Command-line front end: list the catalog, verify cases, summarize reports."""

from __future__ import annotations

import argparse
import json
import sys

from .errors import HLRRError
from .identities import registry, run_suite
from .identities.runner import SUITES, dumps, exit_code, summarize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _params_text(params: dict) -> str:
    parts = []
    for key, value in params.items():
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        parts.append(f"{key}={value}")
    return " ".join(parts)


def cmd_list(fmt: str = "text", out=None) -> int:
    out = out or sys.stdout
    rows = [case.describe() for case in registry()]
    if fmt == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
        return EXIT_OK
    width = max(len(r["id"]) for r in rows)
    label_width = max(len(r["paper_eq"]) for r in rows)
    for r in rows:
        out.write(f"{r['id']:<{width}}  {r['paper_eq']:<{label_width}}  {r['strategy']:<6}  {_params_text(r['params'])}\n")
    return EXIT_OK


def _location_text(location: dict) -> str:
    loc = {k: v for k, v in location.items() if k not in ("exponent", "sample")}
    text = _params_text(loc)
    if "sample" in location:
        sample = ", ".join(f"{k}={v}" for k, v in location["sample"].items())
        text = f"{text} [{sample}]" if text else f"[{sample}]"
    return text


def discrepancy_text(disc: dict) -> str:
    location = disc.get("location") or {}
    where = _location_text(location)
    kind = disc.get("kind")
    if kind == "exponent":
        head = f"coefficient of exponent {location.get('exponent')}"
    elif kind == "agreement":
        return f"sides agree on the whole window{' at ' + where if where else ''}"
    else:
        head = f"{kind} value"
    suffix = f" at {where}" if where else ""
    return f"{head}{suffix}: lhs {_short(disc.get('lhs'))}, rhs {_short(disc.get('rhs'))}"


def _short(value):
    text = value if isinstance(value, str) else json.dumps(value)
    return text if len(text) <= 120 else text[:117] + "..."


def summary_text(report: dict) -> str:
    cases = report.get("cases", [])
    if not cases:
        return "no cases\n"
    lines = []
    width = max(len(c["id"]) for c in cases)
    for case in cases:
        line = f"{case['id']:<{width}}  {case['status']}"
        if case.get("elapsed_ms") is not None:
            line += f"  {case['elapsed_ms']} ms"
        lines.append(line)
        if case["status"] == "fail" and case.get("first_discrepancy"):
            lines.append(f"    {discrepancy_text(case['first_discrepancy'])}")
        if case["status"] == "inconclusive":
            reason = case.get("inconclusive_reason", "")
            if case.get("required_order") is not None:
                reason += f" (needs order {case['required_order']})"
            lines.append(f"    {reason}")
        for check in case.get("checks", []):
            if check.get("failures") and not check.get("required"):
                lines.append(
                    f"    reported {check['name']}: {check['failures']} of {check['evaluations']} differ; "
                    f"first {discrepancy_text(check['first_discrepancy'])}"
                )
    counts = summarize(report)
    tail = f"{counts['pass']} passed, {counts['fail']} failed"
    if counts["inconclusive"]:
        tail += f", {counts['inconclusive']} inconclusive"
    lines.append(tail)
    return "\n".join(lines) + "\n"


def _split_ids(values):
    if not values:
        return None
    ids = []
    for value in values:
        ids.extend(v for v in value.split(",") if v)
    return ids


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    overrides = {"order": args.order, "trials": args.trials}
    report = run_suite(
        suite=args.suite,
        ids=_split_ids(args.ids),
        seed=args.seed,
        overrides=overrides,
        parallelism=args.parallelism,
        timings=args.timings,
    )
    text = dumps(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    out.write(text if args.format == "json" else summary_text(report))
    return exit_code(report)


def load_report(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            report = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise HLRRError(f"cannot read report {path}: {exc}") from exc
    cases = report.get("cases") if isinstance(report, dict) else None
    if not isinstance(cases, list) or not all(isinstance(c, dict) and "id" in c and "status" in c for c in cases):
        raise HLRRError(f"malformed report {path}: expected an object with a list of cases")
    return report


def cmd_report(path: str, fmt: str = "text", out=None) -> int:
    out = out or sys.stdout
    report = load_report(path)
    if fmt == "json":
        out.write(json.dumps(summarize(report)) + "\n")
    else:
        out.write(summary_text(report))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hlrr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="show every case with its strategy and default parameters")
    p_list.add_argument("--format", choices=("text", "json"), default="text")

    p_verify = sub.add_parser("verify", help="verify a suite or selected cases")
    p_verify.add_argument("--suite", choices=SUITES, default="all")
    p_verify.add_argument("--ids", nargs="+", metavar="ID", help="case ids, space or comma separated")
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--order", type=int, help="series truncation order for every series case")
    p_verify.add_argument("--trials", type=int, help="random trials for every randomized case")
    p_verify.add_argument("--parallelism", type=int, default=1)
    p_verify.add_argument("--output", help="write the JSON report here")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--timings", action="store_true", help="record elapsed_ms (reports stop being byte-stable)")

    p_report = sub.add_parser("report", help="summarize a saved JSON report")
    p_report.add_argument("path")
    p_report.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list":
            return cmd_list(args.format)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_report(args.path, args.format)
    except HLRRError as exc:
        print(f"hlrr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
