"""Batch runner for the verification suites.

Exit codes: 0 all checks pass, 1 some check failed, 2 checks were skipped
by the term cap (and none failed), 64 invalid command line.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
import time
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import ckmck, schubert, tautring
from .report import FAIL, PASS, SKIPPED_CAP, CheckResult, Report

log = logging.getLogger("ckverify")

ALL_CHECKS = (
    "ck",
    "mck",
    "hyp",
    "taut-relations",
    "taut-sym",
    "hilbert",
    "fp",
    "schubert",
    "dims",
)

EXIT_OK, EXIT_FAIL, EXIT_CAPPED, EXIT_USAGE = 0, 1, 2, 64


@dataclass
class RunConfig:
    g_values: list = field(default_factory=lambda: [1, 2])
    m_max: int = 3
    checks: list = field(default_factory=lambda: list(ALL_CHECKS))
    output_format: str = "text"
    term_cap: int = tautring.DEFAULT_CAP
    strict_caps: bool = False
    workers: int = 1
    timings: bool = False

    def validate(self) -> None:
        if not self.checks:
            raise ValueError("at least one check is required")
        unknown = [c for c in self.checks if c not in ALL_CHECKS]
        if unknown:
            raise ValueError(f"unknown checks: {', '.join(unknown)}")
        if not self.g_values or any(g < 1 for g in self.g_values):
            raise ValueError("g values must be positive integers")
        if self.m_max < 1:
            raise ValueError("--m-max must be positive")
        if self.term_cap <= 0:
            raise ValueError("--term-cap must be positive")
        if self.output_format not in ("text", "json"):
            raise ValueError("--format must be text or json")
        if self.workers < 1:
            raise ValueError("--workers must be positive")


def _taut_sym(g: int, cap: int) -> Report:
    n = 2 * g + 2
    params = {"g": g, "permutations": math.factorial(n)}
    try:
        total = tautring.symmetrized_tau_sum(g, cap=cap)
        control = tautring.symmetrized_tau_sum(g, omit=tuple(range(1, n + 1)), cap=cap)
    except tautring.CapExceeded as exc:
        return Report([CheckResult("taut-sym", params, SKIPPED_CAP, {"reason": str(exc)})])
    ok = total.is_zero() and not control.is_zero()
    return Report(
        [
            CheckResult(
                "taut-sym",
                params,
                PASS if ok else FAIL,
                {"sum_terms": len(total), "omitted_one_terms": len(control)},
                None if total.is_zero() else total,
            )
        ]
    )


def _hilbert(g: int, m: int, cap: int) -> Report:
    try:
        return tautring.injectivity_report(g, m, cap)
    except tautring.CapExceeded as exc:
        return Report([CheckResult("hilbert", {"g": g, "m": m}, SKIPPED_CAP, {"reason": str(exc)})])


def _fp(g: int) -> Report:
    residue = tautring.fp_class(g)
    perturbed = tautring.fp_class(g, Fraction(1, 2 * g - 1))
    ok = residue.is_zero() and not perturbed.is_zero()
    return Report(
        [CheckResult("fp", {"g": g}, PASS if ok else FAIL, {"perturbed_nonzero": not perturbed.is_zero()}, None if residue.is_zero() else residue)]
    )


def run_cell(cell: tuple) -> Report:
    """Evaluate one (check, g, m) cell; pure function of its arguments."""
    check, g, m, cap = cell
    start = time.perf_counter()
    if check == "ck":
        rep = ckmck.verify_ck(ckmck.build_ck(g))
    elif check == "mck":
        rep = ckmck.mck_full_check(ckmck.build_ck(g))
    elif check == "hyp":
        rep = ckmck.hyp_check(g)
    elif check == "taut-relations":
        rep = tautring.verify_relations(tautring.build_generators(g, m))
    elif check == "taut-sym":
        rep = _taut_sym(g, cap)
    elif check == "hilbert":
        rep = _hilbert(g, m, cap)
    elif check == "fp":
        rep = _fp(g)
    elif check == "schubert":
        rep = schubert.fano_degree_check()
    elif check == "dims":
        rep = schubert.dimension_counts(g)
    else:
        raise ValueError(check)
    elapsed = time.perf_counter() - start
    for e in rep.entries:
        if e.elapsed is None:
            e.elapsed = elapsed / max(len(rep.entries), 1)
    return rep


def plan(config: RunConfig) -> list:
    cells = []
    for check in config.checks:
        if check == "schubert":
            cells.append((check, 0, 0, config.term_cap))
            continue
        for g in sorted(set(config.g_values)):
            if check == "fp" and g < 2:
                continue
            if check in ("taut-relations", "hilbert"):
                for m in range(1, config.m_max + 1):
                    cells.append((check, g, m, config.term_cap))
            else:
                cells.append((check, g, 0, config.term_cap))
    return cells


def run(config: RunConfig) -> tuple:
    """Execute the configured checks; returns (report, exit code)."""
    config.validate()
    cells = plan(config)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(run_cell, cells))
    else:
        parts = [run_cell(c) for c in cells]
    report = Report()
    for part in parts:
        report.extend(part)
    report = report.sorted()
    if report.failures:
        code = EXIT_FAIL
    elif report.skipped:
        code = EXIT_FAIL if config.strict_caps else EXIT_CAPPED
    else:
        code = EXIT_OK
    return report, code


def write_hilbert_csv(report: Report, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["g", "m", "degree", "image", "abstract"])
        for e in report.entries:
            if e.name != "hilbert" or e.status == SKIPPED_CAP:
                continue
            image, abstract = e.values["image"], e.values["abstract"]
            for d in sorted(image):
                writer.writerow([e.params["g"], e.params["m"], d, image[d], abstract.get(d, 0)])


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _check_list(text: str) -> list:
    checks = [x.strip() for x in text.split(",") if x.strip()]
    if checks == ["all"]:
        return list(ALL_CHECKS)
    bad = [c for c in checks if c not in ALL_CHECKS]
    if bad or not checks:
        raise argparse.ArgumentTypeError(
            f"unknown checks {bad}; choose from {', '.join(ALL_CHECKS)} or 'all'"
        )
    return checks


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="ckverify",
        description="Verify Chow-Kuenneth, tautological-ring and Schubert identities exactly.",
    )
    p.add_argument("--g", type=_int_list, default=[1, 2], help="genus values, e.g. 1,2,3")
    p.add_argument("--m-max", type=int, default=3, help="largest power Y^m for tautological checks")
    p.add_argument("--checks", type=_check_list, default=list(ALL_CHECKS),
                   help="comma-separated subset of: " + ", ".join(ALL_CHECKS))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--term-cap", type=int, default=tautring.DEFAULT_CAP,
                   help="guard for permutation sums and monomial enumeration")
    p.add_argument("--strict-caps", action="store_true",
                   help="treat cap-skipped checks as failures (exit 1 instead of 2)")
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    p.add_argument("--timings", action="store_true",
                   help="include wall times (makes output run-dependent)")
    p.add_argument("--hilbert-csv", metavar="PATH", help="also write Hilbert functions as CSV")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    config = RunConfig(
        g_values=args.g,
        m_max=args.m_max,
        checks=args.checks,
        output_format=args.format,
        term_cap=args.term_cap,
        strict_caps=args.strict_caps,
        workers=args.workers,
        timings=args.timings,
    )
    try:
        config.validate()
    except ValueError as exc:
        parser.error(str(exc))
    log.info("running %d cells on %d worker(s)", len(plan(config)), config.workers)
    report, code = run(config)
    if args.hilbert_csv:
        write_hilbert_csv(report, args.hilbert_csv)
    if config.output_format == "json":
        sys.stdout.write(report.to_json(config.timings) + "\n")
    else:
        sys.stdout.write(report.to_text(config.timings) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
