"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.
"""

import itertools
import json
import math
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from ckverify.ckmck import build_ck, hyp_coefficients, mck_defect, verify_ck
from ckverify.schubert import dimension_counts, fano_degree_check
from ckverify.tautring import build_generators, fp_class, injectivity_report, symmetrized_tau_sum, verify_relations

QUARTER = Fraction(1, 4)


class Criterion:
    """Times a block and prints one verdict line, even when an assertion fails."""

    def __init__(self, number: int, title: str, budget: float | None = None):
        self.number, self.title, self.budget = number, title, budget
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        over = self.budget is not None and elapsed >= self.budget
        ok = exc_type is None and not over
        verdict = "PASS" if ok else "FAIL"
        note = f"{self.detail}; " if self.detail else ""
        limit = f" (limit {self.budget:g}s)" if self.budget is not None else ""
        reason = ""
        if exc_type is not None:
            reason = f"; {exc_type.__name__}: {exc}"
        elif over:
            reason = "; over time budget"
        print(f"\n[{verdict}] criterion {self.number}: {self.title} | {note}{elapsed:.2f}s{limit}{reason}")
        if exc_type is None and over:
            raise AssertionError(f"criterion {self.number} took {elapsed:.2f}s, limit {self.budget}s")
        return False


def test_criterion_1_schubert_number():
    with Criterion(1, "deg c2(Q) on the Fano surface is 16", budget=1.0) as c:
        entry = fano_degree_check()["schubert"]
        value = entry.values["deg_c2Q_on_F"]
        c.detail = f"value={value}"
        assert value == 16 and entry.ok


def test_criterion_2_excess_coefficients():
    with Criterion(2, "hyp coefficients all 1/4 for g=1..5", budget=10.0) as c:
        for g in range(1, 6):
            for j in (1, 2):
                coeffs = hyp_coefficients(g, j)
                assert coeffs == [QUARTER] * (2 * g), (g, j, coeffs)
        c.detail = "g=1..5, j=1,2"


def test_criterion_3_ck_axioms():
    with Criterion(3, "CK axioms for g=1..4", budget=30.0) as c:
        for g in range(1, 5):
            rep = verify_ck(build_ck(g))
            assert rep.passed, [e.to_dict() for e in rep.failures]
            assert len(rep.entries) == 4
        c.detail = "completeness, idempotent, orthogonal, kunneth-image"


def test_criterion_4_mck_vanishing():
    with Criterion(4, "MCK defects vanish off-grade for g=1..3", budget=120.0) as c:
        counts = []
        for g in (1, 2, 3):
            d = build_ck(g)
            zero_off = nonzero_on = 0
            for i, j, k in itertools.product(d.degrees, repeat=3):
                defect = mck_defect(d, i, j, k)
                if i + j != k:
                    assert defect.is_zero(), (g, i, j, k)
                    zero_off += 1
                elif not defect.is_zero():
                    nonzero_on += 1
            assert nonzero_on > 0
            counts.append(f"g={g}: {zero_off} zero, {nonzero_on} graded nonzero")
        c.detail = "; ".join(counts)


def test_criterion_5_tautological_relations():
    with Criterion(5, "tautological relations and the symmetrized tau sum", budget=300.0) as c:
        for g in range(1, 5):
            for m in range(1, 4):
                rep = verify_relations(build_generators(g, m))
                assert rep.passed, (g, m, [e.to_dict() for e in rep.failures])
        sizes = []
        for g in (1, 2):
            n = 2 * g + 2
            assert symmetrized_tau_sum(g).is_zero()
            assert not symmetrized_tau_sum(g, omit=tuple(range(1, n + 1))).is_zero()
            sizes.append(math.factorial(n))
        assert sizes == [24, 720]
        c.detail = "relations g<=4, m<=3; sums over 24 and 720 permutations vanish"


def test_criterion_6_presentation_match():
    pairs = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3)]
    with Criterion(6, "abstract and image Hilbert functions agree", budget=600.0) as c:
        for g, m in pairs:
            e = injectivity_report(g, m)["hilbert"]
            assert e.ok, (g, m, e.values["mismatch_degrees"])
            assert all(v == 0 for v in e.values["abstract_above_top"].values())
        c.detail = f"{len(pairs)} (g,m) pairs"


def test_criterion_7_curve_model():
    with Criterion(7, "fp class vanishes on C^2 for g=2..4", budget=None) as c:
        for g in (2, 3, 4):
            assert fp_class(g).is_zero()
            assert not fp_class(g, Fraction(1, 2 * g - 1)).is_zero()
        c.detail = "perturbed coefficient gives nonzero"


def test_criterion_8_dimension_bookkeeping():
    with Criterion(8, "projective-bundle counts for g=2", budget=0.1) as c:
        e = dimension_counts(2)["dims"]
        v = e.values
        c.detail = f"r={v['r']} rankE={v['rankE']} s={v['s']} fibers={v['line_point_on_fiber']}/{v['line_point_off_fiber']}"
        assert e.ok
        assert (v["r"], v["rankE"], v["s"]) == (41, 6, 35)
        assert (v["line_point_on_fiber"], v["line_point_off_fiber"]) == (35, 33)


def _full_suite(workers: int) -> bytes:
    proc = subprocess.run(
        [sys.executable, "-m", "ckverify", "--checks", "all", "--g", "1,2,3", "--m-max", "3",
         "--format", "json", "--workers", str(workers)],
        capture_output=True,
    )
    assert proc.returncode == 0, proc.stderr.decode()
    return proc.stdout


@pytest.mark.slow
def test_criterion_9_determinism():
    with Criterion(9, "full-suite JSON identical across worker counts", budget=None) as c:
        one = _full_suite(1)
        four = _full_suite(4)
        doc = json.loads(one)
        c.detail = f"{doc['summary']['total']} checks, {len(one)} bytes"
        assert one == four
        assert doc["summary"]["fail"] == 0
