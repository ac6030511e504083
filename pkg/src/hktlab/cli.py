"""Batch runner: parse a chart manifest, execute checks, emit reports.

Manifest (JSON):

    {
      "dim_h": 2,
      "structure": "standard",            // or {"I": rows, "J": rows, "K": rows}
      "metric": [["1", "0", ...], ...],   // exactly one data variant:
                                          // metric | potential | omega | kahler_form_on_J
      "checks": ["quaternionic_hermitian", "hkt"],
      "sampling": {"seed": 0, "count": 16, "points": [["1", "0", ...]]}
    }

Matrix and point entries are rational strings ("p/q") or integers; metric
entries and form record re/im fields use the expression grammar.  Exit
codes: 0 all checks pass (vacuous and sampled passes count), 1 some check
failed or was indeterminate, 2 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from . import __version__, models, suite
from .conventions import CONVENTIONS
from .forms import Form
from .parsing import ParseError, parse_scalar
from .quaternionic import Metric, standard_structure, structure_from_matrices, verify_structure
from .report import CheckReport
from .sampling import DEFAULT_COUNT, DEFAULT_SEED, SamplingPlan


class ManifestError(ValueError):
    """Invalid manifest content; maps to exit code 2."""


@dataclass(frozen=True)
class Report:
    tool_version: str
    manifest_digest: str
    checks: List[CheckReport]
    overall: str
    timings_ms: dict

    def to_json_dict(self, include_timings=True):
        doc = {
            "tool_version": self.tool_version,
            "manifest_digest": self.manifest_digest,
            "conventions": CONVENTIONS,
            "checks": [report.to_json_dict() for report in self.checks],
            "overall": self.overall,
        }
        if include_timings:
            doc["timings_ms"] = self.timings_ms
        return doc


def _require(condition, message):
    if not condition:
        raise ManifestError(message)


def _parse_fraction(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ManifestError(f"{where}: expected an integer or rational string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ManifestError(f"{where}: {exc}") from exc


def _parse_structure(doc, n):
    spec = doc.get("structure", "standard")
    if spec == "standard":
        return standard_structure(n)
    _require(isinstance(spec, dict), "structure: expected 'standard' or an object with I, J, K")
    matrices = {}
    for tag in ("I", "J", "K"):
        rows = spec.get(tag)
        _require(isinstance(rows, list) and rows, f"structure.{tag}: expected a matrix")
        matrices[tag] = [
            [_parse_fraction(x, f"structure.{tag}[{r}][{c}]") for c, x in enumerate(row)]
            for r, row in enumerate(rows)
        ]
    try:
        H = structure_from_matrices(matrices["I"], matrices["J"], matrices["K"])
    except ValueError as exc:
        raise ManifestError(f"structure: {exc}") from exc
    _require(H.n == n, f"structure matrices are {4 * H.n}x{4 * H.n} but dim_h is {n}")
    relations = verify_structure(H)
    _require(
        relations.passed,
        f"structure matrices violate the quaternion relations: {relations.witness}",
    )
    return H


def _parse_expression(text, num_vars, where):
    _require(isinstance(text, str), f"{where}: expected an expression string")
    try:
        return parse_scalar(text, num_vars)
    except ParseError as exc:
        raise ManifestError(f"{where}: {exc}") from exc


def _parse_metric(rows, num_vars):
    _require(
        isinstance(rows, list) and len(rows) == num_vars,
        f"metric: expected a {num_vars}x{num_vars} matrix of expressions",
    )
    parsed = []
    for r, row in enumerate(rows):
        _require(
            isinstance(row, list) and len(row) == num_vars,
            f"metric[{r}]: expected {num_vars} entries",
        )
        parsed_row = []
        for c, text in enumerate(row):
            entry = _parse_expression(text, num_vars, f"metric[{r}][{c}]")
            _require(entry.is_real(), f"metric[{r}][{c}]: entries must be real-valued")
            parsed_row.append(entry)
        parsed.append(parsed_row)
    try:
        return Metric(parsed)
    except ValueError as exc:
        raise ManifestError(f"metric: {exc}") from exc


def _parse_form_records(records, num_vars, where, degree=2):
    _require(isinstance(records, list), f"{where}: expected a list of component records")
    from .scalars import IMAG_UNIT

    components = {}
    for k, record in enumerate(records):
        _require(isinstance(record, dict), f"{where}[{k}]: expected an object")
        indices = record.get("indices")
        _require(
            isinstance(indices, list) and len(indices) == degree,
            f"{where}[{k}].indices: expected {degree} indices",
        )
        re = _parse_expression(record.get("re", "0"), num_vars, f"{where}[{k}].re")
        im = _parse_expression(record.get("im", "0"), num_vars, f"{where}[{k}].im")
        _require(re.is_real() and im.is_real(), f"{where}[{k}]: re/im parts must be real expressions")
        key = tuple(int(i) for i in indices)
        _require(key not in components, f"{where}[{k}]: duplicate indices {indices}")
        components[key] = re + im * IMAG_UNIT
    try:
        return Form(components, num_vars, degree)
    except ValueError as exc:
        raise ManifestError(f"{where}: {exc}") from exc


def _parse_sampling(doc, num_vars, seed_override=None, count_override=None):
    spec = doc.get("sampling", {})
    _require(isinstance(spec, dict), "sampling: expected an object")
    seed = spec.get("seed", DEFAULT_SEED)
    count = spec.get("count", DEFAULT_COUNT)
    _require(isinstance(seed, int) and not isinstance(seed, bool), "sampling.seed: expected an integer")
    _require(
        isinstance(count, int) and not isinstance(count, bool) and count >= 0,
        "sampling.count: expected a non-negative integer",
    )
    if seed_override is not None:
        seed = seed_override
    if count_override is not None:
        count = count_override
    points = []
    for p, row in enumerate(spec.get("points", [])):
        _require(
            isinstance(row, list) and len(row) == num_vars,
            f"sampling.points[{p}]: expected {num_vars} coordinates",
        )
        points.append(
            tuple(_parse_fraction(c, f"sampling.points[{p}][{i}]") for i, c in enumerate(row))
        )
    return SamplingPlan(seed=seed, count=count, user_points=tuple(points))


def load_manifest(doc: dict, seed_override=None, count_override=None):
    """Validate a manifest document; returns (H, data_kind, payload, checks, plan)."""
    _require(isinstance(doc, dict), "manifest: expected a JSON object")
    n = doc.get("dim_h")
    _require(
        isinstance(n, int) and not isinstance(n, bool) and n >= 1,
        "dim_h: expected a positive integer",
    )
    num_vars = 4 * n
    present = [kind for kind in suite.DATA_KINDS if kind in doc]
    _require(
        len(present) == 1,
        f"manifest must contain exactly one of {', '.join(suite.DATA_KINDS)} "
        f"(found {present or 'none'})",
    )
    data_kind = present[0]
    H = _parse_structure(doc, n)
    if data_kind == suite.METRIC:
        payload = _parse_metric(doc[data_kind], num_vars)
    elif data_kind == suite.POTENTIAL:
        payload = _parse_expression(doc[data_kind], num_vars, "potential")
        _require(payload.is_real(), "potential: must be real-valued")
    else:
        payload = _parse_form_records(doc[data_kind], num_vars, data_kind)
    checks = doc.get("checks")
    if checks is None:
        checks = suite.default_checks(data_kind)
    _require(
        isinstance(checks, list) and all(isinstance(c, str) for c in checks) and checks,
        "checks: expected a non-empty list of check names",
    )
    try:
        suite.validate_check_names(checks, data_kind)
    except suite.SuiteValidationError as exc:
        raise ManifestError(f"checks: {exc}") from exc
    plan = _parse_sampling(doc, num_vars, seed_override, count_override)
    return H, data_kind, payload, checks, plan


def run_manifest_doc(doc: dict, digest: str, seed_override=None, count_override=None) -> Report:
    H, data_kind, payload, checks, plan = load_manifest(doc, seed_override, count_override)
    ctx = suite.make_context(H, data_kind, payload, plan)
    reports = []
    timings = {}
    start_all = time.perf_counter()
    for name in checks:
        t0 = time.perf_counter()
        reports.append(suite.run_single_check(ctx, name))
        timings[name] = round((time.perf_counter() - t0) * 1000.0, 3)
    timings["total"] = round((time.perf_counter() - start_all) * 1000.0, 3)
    overall = "pass" if all(r.passed for r in reports) else "fail"
    return Report(
        tool_version=__version__,
        manifest_digest=digest,
        checks=reports,
        overall=overall,
        timings_ms=timings,
    )


def run_manifest(path: str, seed_override=None, count_override=None) -> Report:
    """Load, validate and execute a manifest file."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path!r}: {exc}") from exc
    digest = hashlib.sha256(raw).hexdigest()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest {path!r} is not valid JSON: {exc}") from exc
    return run_manifest_doc(doc, digest, seed_override, count_override)


def emit_report(report: Report, fmt: str = "text", include_timings: bool = True) -> str:
    """Render a report; JSON field names are frozen."""
    if fmt == "json":
        return json.dumps(
            report.to_json_dict(include_timings=include_timings),
            indent=2,
            sort_keys=True,
        )
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = [
        f"hktlab {report.tool_version}  manifest {report.manifest_digest[:12]}",
    ]
    for check in report.checks:
        line = f"  {check.check:24s} {check.verdict_label()}"
        lines.append(line)
        if check.witness is not None:
            lines.append(f"      witness: {json.dumps(check.witness, sort_keys=True)}")
    lines.append(f"overall: {report.overall}")
    return "\n".join(lines)


# -- command line -----------------------------------------------------------


def _cmd_check(args) -> int:
    try:
        report = run_manifest(args.manifest, args.seed, args.samples)
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    output = emit_report(report, "json" if args.json else "text")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(output + "\n")
    else:
        print(output)
    return 0 if report.overall == "pass" else 1


def _catalog_digest(entry) -> str:
    doc = json.dumps(models.entry_to_manifest(entry), sort_keys=True).encode()
    return hashlib.sha256(doc).hexdigest()


def _cmd_catalog(args) -> int:
    entries = models.catalog()
    if not args.run:
        if args.json:
            doc = [
                {
                    "name": e.name,
                    "dim_h": e.n,
                    "data": e.data_kind,
                    "checks": list(e.checks),
                    "expected": e.expected,
                    "notes": e.notes,
                }
                for e in entries
            ]
            print(json.dumps(doc, indent=2, sort_keys=True))
        else:
            for e in entries:
                fails = sorted(k for k, v in e.expected.items() if v != "pass")
                summary = f"expected failures: {', '.join(fails)}" if fails else "all checks pass"
                print(f"{e.name:24s} n={e.n}  data={e.data_kind:16s} {summary}")
        return 0
    plan_seed = args.seed if args.seed is not None else DEFAULT_SEED
    all_match = True
    results = []
    for e in entries:
        plan = SamplingPlan(seed=plan_seed)
        reports = models.run_entry(e, plan)
        got = models.verdict_map(reports)
        match = got == e.expected
        all_match = all_match and match
        results.append((e, reports, match))
    if args.json:
        doc = [
            {
                "name": e.name,
                "manifest_digest": _catalog_digest(e),
                "checks": [r.to_json_dict() for r in reports],
                "matches_expected": match,
            }
            for e, reports, match in results
        ]
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for e, reports, match in results:
            status = "ok" if match else "REGRESSION"
            print(f"{e.name:24s} {status}")
            if not match:
                got = models.verdict_map(reports)
                for k, v in e.expected.items():
                    if got.get(k) != v:
                        print(f"    {k}: expected {v}, got {got.get(k)}")
    return 0 if all_match else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hktlab",
        description="Exact chart-level checks for quaternionic Hermitian geometry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run the checks requested by a manifest file")
    check.add_argument("manifest", help="path to a JSON manifest")
    check.add_argument("--json", action="store_true", help="emit the machine-readable report")
    check.add_argument("--seed", type=int, default=None, help="override the sampling seed")
    check.add_argument(
        "--samples", type=int, default=None, help="override the random sample count"
    )
    check.add_argument("--out", default=None, help="write the report to a file")

    cat = sub.add_parser("catalog", help="list or execute the built-in example charts")
    cat.add_argument("--run", action="store_true", help="execute every entry and compare verdicts")
    cat.add_argument("--json", action="store_true", help="emit machine-readable output")
    cat.add_argument("--seed", type=int, default=None, help="override the sampling seed")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check":
        return _cmd_check(args)
    if args.command == "catalog":
        return _cmd_catalog(args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
