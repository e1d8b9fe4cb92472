"""Running catalog cases and assembling reports."""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor

from ..errors import DivergenceError, PreconditionError, SingularError, UsageError, WindowError
from ..exactnum import PowerSeries, is_scalar, rational_text
from .registry import MAX_ORDER, MAX_POINT_N, Context, get_case, grid_summary, registry
from .sampling import DEFAULT_MAX_RESAMPLES, case_rng

SUITES = ("all", "quick")
QUICK_TRIALS = 3
QUICK_ORDER = 20
OVERRIDE_KEYS = ("order", "trials", "max_resamples")


def effective_params(case, overrides=None) -> dict:
    """Order, trial count and resample budget after applying overrides and caps."""
    overrides = dict(overrides or {})
    unknown = set(overrides) - set(OVERRIDE_KEYS)
    if unknown:
        raise UsageError(f"unknown override(s): {', '.join(sorted(unknown))}")
    order = case.order
    if case.order is not None and overrides.get("order") is not None:
        order = int(overrides["order"])
    if order is not None and not 0 <= order <= MAX_ORDER:
        raise UsageError(f"order must lie in 0..{MAX_ORDER}, got {order}")
    trials = case.trials
    if case.randomized and overrides.get("trials") is not None:
        trials = int(overrides["trials"])
    if trials < 1:
        raise UsageError(f"trials must be positive, got {trials}")
    resamples = int(overrides.get("max_resamples") or DEFAULT_MAX_RESAMPLES)
    if case.strategy == "point" and any(inst.get("n", 0) > MAX_POINT_N for inst in case.instances):
        raise UsageError(f"{case.id}: point alphabets are capped at n = {MAX_POINT_N}")
    return {"order": order, "trials": trials, "max_resamples": resamples}


def _value_text(value):
    if is_scalar(value):
        return rational_text(value)
    if isinstance(value, PowerSeries):
        return value.to_json()
    return value


def _compare(comp, order):
    """Return (agrees, discrepancy-or-None) for one comparison.

    ``agrees`` is True when the two sides are equal on the window. The
    discrepancy describes the first place they differ.
    """
    lhs, rhs = comp.lhs, comp.rhs
    if isinstance(lhs, PowerSeries) and isinstance(rhs, PowerSeries):
        hi = comp.hi if comp.hi is not None else order
        j = lhs.first_discrepancy(rhs, hi=hi)
        if j is None:
            return True, {"kind": "exponent", "window": [min(lhs.lo, rhs.lo), hi]}
        return False, {
            "kind": "exponent",
            "exponent": j,
            "lhs": rational_text(lhs.coefficient(j)) if j >= lhs.lo else "0/1",
            "rhs": rational_text(rhs.coefficient(j)) if j >= rhs.lo else "0/1",
        }
    if is_scalar(lhs) and is_scalar(rhs):
        if lhs == rhs:
            return True, {"kind": "point"}
        return False, {"kind": "point", "lhs": rational_text(lhs), "rhs": rational_text(rhs)}
    if lhs == rhs:
        return True, {"kind": "value"}
    return False, {"kind": "value", "lhs": _value_text(lhs), "rhs": _value_text(rhs)}


def _discrepancy(info, location):
    kind = info["kind"]
    loc = dict(location)
    if kind == "exponent" and "exponent" in info:
        loc["exponent"] = info["exponent"]
    return {"kind": kind, "location": loc, "lhs": info.get("lhs"), "rhs": info.get("rhs")}


class _CheckLog:
    """Per-comparison-name tallies, in first-seen order."""

    def __init__(self):
        self.entries = {}

    def record(self, comp, passed, info, location):
        entry = self.entries.get(comp.name)
        if entry is None:
            entry = self.entries[comp.name] = {
                "name": comp.name,
                "required": comp.required,
                "expect": comp.expect,
                "evaluations": 0,
                "failures": 0,
                "first_discrepancy": None,
            }
            if comp.expect == "differ":
                entry["first_difference"] = None
        entry["required"] = entry["required"] or comp.required
        entry["evaluations"] += 1
        if comp.expect == "differ" and entry["first_difference"] is None and "lhs" in info:
            entry["first_difference"] = _discrepancy(info, location)
        if not passed:
            entry["failures"] += 1
            if entry["first_discrepancy"] is None:
                entry["first_discrepancy"] = _failure(comp, info, location)

    def as_list(self):
        return list(self.entries.values())


def _failure(comp, info, location):
    if comp.expect == "differ":
        loc = dict(location, window=info.get("window"))
        return {"kind": "agreement", "location": loc, "lhs": "identical", "rhs": "identical"}
    return _discrepancy(info, location)


def _evaluate_with_resampling(case, inst, ctx, budget):
    """Run one trial, drawing fresh samples while the sample hits a singularity."""
    attempts = budget if case.randomized else 1
    last = None
    for _ in range(attempts):
        try:
            return case.evaluate(inst, ctx), None
        except (SingularError, PreconditionError) as exc:
            last = exc
    return None, f"no admissible sample after {attempts} attempt(s): {last}"


def verify_case(case, seed: int = 42, overrides=None, timings: bool = False) -> dict:
    """Verify one case deterministically and return its report entry."""
    started = time.perf_counter()
    params = effective_params(case, overrides)
    order, trials = params["order"], params["trials"]
    rng = case_rng(seed, case.id)
    ctx = Context(rng, order)
    log = _CheckLog()
    notes = list(case.notes)
    status = "pass"
    first = None
    reason = None
    required_order = None

    def finish():
        report_params = {}
        if order is not None:
            report_params["order"] = order
        if case.randomized:
            report_params["trials"] = trials
        report_params.update(grid_summary(case.instances))
        entry = {
            "id": case.id,
            "paper_eq": case.paper_eq,
            "strategy": case.strategy,
            "params": report_params,
            "seed": seed,
            "status": status,
            "first_discrepancy": first,
            "checks": log.as_list(),
            "notes": notes,
            "elapsed_ms": round((time.perf_counter() - started) * 1000, 1) if timings else None,
        }
        if reason is not None:
            entry["inconclusive_reason"] = reason
        if required_order is not None:
            entry["required_order"] = required_order
        return entry

    for inst in case.instances:
        for t in range(trials if case.randomized else 1):
            base = dict(inst)
            if case.randomized:
                base["trial"] = t
            try:
                trial, problem = _evaluate_with_resampling(case, inst, ctx, params["max_resamples"])
            except WindowError as exc:
                trial, problem = None, f"series window exhausted: {exc}"
                required_order = exc.required
            except DivergenceError as exc:
                trial, problem = None, f"sum does not converge on the window: {exc}"
            if trial is None:
                if status == "pass":
                    status, reason = "inconclusive", problem
                continue
            for comp in trial.comparisons:
                location = dict(base, **comp.where)
                if trial.sample is not None:
                    location["sample"] = trial.sample
                try:
                    equal, info = _compare(comp, order)
                except WindowError as exc:
                    required_order = exc.required
                    if status == "pass":
                        status, reason = "inconclusive", f"series window exhausted in {comp.name}: {exc}"
                    continue
                passed = equal if comp.expect == "equal" else not equal
                log.record(comp, passed, info, location)
                if not passed and comp.required and status != "fail":
                    status = "fail"
                    first = _failure(comp, info, location)
            if status == "fail":
                return finish()
    return finish()


def _worker(args):
    case_id, seed, overrides, timings, include_test = args
    return verify_case(get_case(case_id, include_test), seed, overrides, timings)


def suite_overrides(case, suite: str, overrides=None) -> dict:
    """Per-case overrides for a suite; explicit overrides win."""
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    out = {}
    if suite == "quick":
        if case.strategy == "point" and case.randomized:
            out["trials"] = QUICK_TRIALS
        if case.strategy == "series" and case.order is not None:
            out["order"] = min(case.order, QUICK_ORDER)
    for key, value in (overrides or {}).items():
        if value is not None:
            out[key] = value
    return out


def select_cases(ids=None, include_test_cases=None) -> list:
    cases = registry(include_test_cases)
    if not ids:
        return [c for c in cases if not c.test_only]
    known = {c.id for c in cases}
    missing = [i for i in ids if i not in known]
    if missing:
        raise UsageError(f"unknown case id(s): {', '.join(missing)}")
    wanted = set(ids)
    return [c for c in cases if c.id in wanted]


def run_id(seed, suite, ids, overrides) -> str:
    payload = json.dumps({"seed": seed, "suite": suite, "ids": list(ids or []), "overrides": overrides or {}}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def run_suite(
    suite: str = "all",
    ids=None,
    seed: int = 42,
    overrides=None,
    parallelism: int = 1,
    timings: bool = False,
    include_test_cases=None,
) -> dict:
    """Verify the selected cases and return the merged report in catalog order."""
    if parallelism < 1:
        raise UsageError("parallelism must be at least 1")
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    cases = select_cases(ids, include_test_cases)
    include = any(c.test_only for c in cases)
    jobs = []
    for case in cases:
        per_case = suite_overrides(case, suite, overrides)
        effective_params(case, per_case)
        jobs.append((case.id, seed, per_case, timings, include))
    if parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_worker, jobs))
    else:
        results = [_worker(job) for job in jobs]
    report = {
        "run_id": run_id(seed, suite, ids, overrides),
        "seed": seed,
        "suite": suite,
        "cases": results,
    }
    if ids:
        report["ids"] = list(ids)
    if overrides:
        report["overrides"] = overrides
    return report


def summarize(report: dict) -> dict:
    counts = {"pass": 0, "fail": 0, "inconclusive": 0}
    for case in report.get("cases", []):
        counts[case["status"]] = counts.get(case["status"], 0) + 1
    return counts


def exit_code(report: dict) -> int:
    counts = summarize(report)
    if counts["fail"]:
        return 1
    if counts["inconclusive"]:
        return 2
    return 0


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
