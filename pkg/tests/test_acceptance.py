"""Acceptance suite: one test (or a small group) per criterion.

Each test runs the catalog cases behind a criterion with their default
parameters and seed 42, then checks that the report shows the required
coverage (orders, trial counts, grids) and a pass. A summary with one
PASS/FAIL line per criterion is printed at the end of the pytest run.
"""

import json
import random
import subprocess
import sys
import time

import pytest
from gmpy2 import mpq

from hlrr import bailey
from hlrr.hlpoly import N_CONVENTIONS, PointConfig, hl_filtration, hl_symmetrization, pin_n_convention, principal_samples
from hlrr.identities import get_case, verify_case
from hlrr.identities import forms
from hlrr.partitions import partitions_of

SEED = 42


def run(case_id, **overrides):
    return verify_case(get_case(case_id), SEED, overrides or None)


def check(entry, name):
    for c in entry["checks"]:
        if c["name"] == name:
            return c
    raise AssertionError(f"{entry['id']} has no check named {name!r}")


def assert_pass(entry):
    assert entry["status"] == "pass", json.dumps(entry["first_discrepancy"])


def assert_clean(entry, name, evaluations=None):
    c = check(entry, name)
    assert c["failures"] == 0, json.dumps(c["first_discrepancy"])
    if evaluations is not None:
        assert c["evaluations"] == evaluations
    return c


@pytest.mark.criterion(1)
def test_c01_rogers_ramanujan_pair():
    started = time.perf_counter()
    entry = run("RRintro")
    elapsed = time.perf_counter() - started
    assert_pass(entry)
    assert entry["params"]["order"] == 60
    assert entry["params"]["a"] == [0, 1]
    assert_clean(entry, "series", evaluations=2)
    assert_clean(entry, "q4_coefficient_lhs", evaluations=1)
    assert_clean(entry, "q4_coefficient_rhs", evaluations=1)
    lhs = forms.rr_intro_lhs(0, 60)
    rhs = forms.rr_intro_rhs(0, 60)
    assert lhs.coefficient(4) == rhs.coefficient(4) == 2
    assert elapsed < 1.0


@pytest.mark.criterion(2)
def test_c02_key_identity():
    started = time.perf_counter()
    entry = run("T2")
    elapsed = time.perf_counter() - started
    assert_pass(entry)
    assert entry["params"]["order"] == 40
    assert entry["params"]["trials"] == 5
    assert entry["params"]["k"] == [1, 2, 3]
    assert_clean(entry, "series", evaluations=15)
    assert elapsed < 60.0


@pytest.mark.criterion(3)
def test_c03_theta_quotient_multisums():
    for which in (11, 12, 13, 14, 15, 16):
        entry = run(f"T3.{which}")
        assert_pass(entry)
        assert entry["params"]["order"] == 50
        assert entry["params"]["k"] == [1, 2, 3]
        assert_clean(entry, "lhs_vs_jtp", evaluations=3)
        printed = check(entry, "printed_vs_jtp")
        assert printed["evaluations"] == 3
        if which == 11:
            assert printed["required"] and printed["failures"] == 0
        elif printed["failures"]:
            # reported with the exact place the displayed product goes wrong
            disc = printed["first_discrepancy"]
            assert disc["kind"] == "exponent" and disc["lhs"] != disc["rhs"]


@pytest.mark.criterion(4)
def test_c04_k1_reductions():
    for which in (17, 18, 19, 20, 21, 22):
        entry = run(f"RR{which}")
        assert_pass(entry)
        assert entry["params"]["order"] == 60
        assert_clean(entry, "printed_product", evaluations=1)
        if which <= 20:
            assert_clean(entry, "multisum_k1", evaluations=1)


@pytest.mark.criterion(5)
def test_c05_bounded_sums_at_points():
    for case_id in ("T1a", "T1b"):
        entry = run(case_id)
        assert_pass(entry)
        assert entry["params"]["trials"] == 10
        assert entry["params"]["n"] == [2, 3, 4]
        assert entry["params"]["k"] == [1, 2, 3]
        assert_clean(entry, "point", evaluations=90)
    entry = run("T1a")
    assert_clean(entry, "closed_form", evaluations=10)
    assert_clean(entry, "worked_example_lhs", evaluations=10)


@pytest.mark.criterion(6)
def test_c06_full_and_bounded_sums():
    for case_id in ("E1", "E2", "E5", "E6"):
        entry = run(case_id)
        assert_pass(entry)
        assert entry["params"]["order"] == 12
        assert entry["params"]["trials"] == 5
        assert entry["params"]["n"] == [2, 3]
        assert_clean(entry, "t_series", evaluations=10)
    for case_id in ("E3", "E4"):
        entry = run(case_id)
        assert_pass(entry)
        assert entry["params"]["order"] == 12
        assert entry["params"]["trials"] >= 5
        assert entry["params"]["k"] == [1, 2, 3]
        evaluations = 2 * 3 * entry["params"]["trials"]
        assert_clean(entry, "t_series", evaluations=evaluations)
        assert_clean(entry, "point", evaluations=evaluations)


@pytest.mark.criterion(7)
def test_c07_principal_specialization():
    for case_id in ("T4a", "T4b"):
        entry = run(case_id)
        assert_pass(entry)
        assert entry["params"]["trials"] == 10
        assert entry["params"]["n"] == [1, 2, 3, 4, 5, 6]
        assert entry["params"]["k"] == [1, 2, 3]
        assert_clean(entry, "point", evaluations=180)

    pinned = pin_n_convention(principal_samples())
    assert pinned == forms.pinned_n_convention()
    entry = run("P28")
    assert_pass(entry)
    assert check(entry, f"convention_{pinned}")["failures"] == 0
    for other in N_CONVENTIONS:
        if other != pinned:
            assert check(entry, f"convention_{other}")["failures"] > 0

    for case_id in ("T4lim1", "T4lim2", "T4zq"):
        entry = run(case_id)
        assert_pass(entry)
        assert entry["params"]["order"] == 40
    entry = run("T4zq")
    assert_clean(entry, "odd_parts_product", evaluations=3)


@pytest.mark.criterion(8)
def test_c08_specialization_displays():
    grid = [(n, r) for n in range(1, 6) for r in range(n + 1)]
    for which in (29, 30, 31, 32, 33):
        entry = run(f"S{which}")
        assert_pass(entry)
        assert entry["params"]["trials"] == 5
        assert_clean(entry, "principal", evaluations=5 * len(grid))


@pytest.mark.criterion(9)
def test_c09_q_pieri_and_pieri():
    entry = run("L5")
    assert_pass(entry)
    assert entry["params"]["trials"] == 5
    assert entry["params"]["n"] == [1, 2, 3, 4]
    assert_clean(entry, "point")
    assert_clean(entry, "strips_vs_brute_force")

    entry = run("PIERI")
    assert_pass(entry)
    assert entry["params"]["m"] == [0, 1, 2, 3]
    assert entry["params"]["n"] == [1, 2, 3, 4]
    assert_clean(entry, "point")


@pytest.mark.criterion(10)
def test_c10_generating_sums_and_q_gauss():
    for which in (38, 39, 40):
        entry = run(f"L6.{which}")
        assert_pass(entry)
        assert entry["params"]["order"] == 10
        assert entry["params"]["trials"] == 5
        assert entry["params"]["n"] == [1, 2, 3, 4, 5]
    for which in (1, 2, 3):
        entry = run(f"L6lim.{which}")
        assert_pass(entry)
        assert entry["params"]["order"] == 30
    entry = run("QG")
    assert_pass(entry)
    assert entry["params"]["order"] == 30
    assert entry["params"]["trials"] == 5
    entry = run("QGterm")
    assert_pass(entry)
    assert entry["params"]["M"] == [0, 1, 2, 3, 4, 5, 6]
    entry = run("L7")
    assert_pass(entry)
    assert entry["params"]["order"] == 40
    assert entry["params"]["trials"] == 5


@pytest.mark.criterion(11)
def test_c11_bailey_pairs_transforms_and_chains():
    entry = run("B45")
    assert_pass(entry)
    assert entry["params"]["order"] == 40
    assert_clean(entry, "relation", evaluations=2 * (bailey.VALIDATION_DEPTH + 1))
    assert bailey.VALIDATION_DEPTH >= 8

    entry = run("Btrans")
    assert_pass(entry)
    assert_clean(entry, "relation", evaluations=6 * (bailey.TRANSFORM_DEPTH + 1))
    assert bailey.TRANSFORM_DEPTH >= 6

    for case_id in ("Blim", "Bchain", "B55", "B56", "B57"):
        entry = run(case_id)
        assert_pass(entry)
        assert entry["params"]["order"] == 40
    assert_clean(run("Bchain"), "series", evaluations=18)

    entry = run("Bcompare")
    assert_pass(entry)
    assert_clean(entry, "pair_chain_equals_multisum", evaluations=3)


@pytest.mark.criterion(11)
def test_c11_differing_coefficient_at_k1():
    # the criterion asks for a coefficient where the two left sides differ at k = 1
    derived = forms.t3_lhs(13, 1, 40)
    other = bailey.derived_lhs(55, 1, 40)
    exponent = other.first_discrepancy(derived, hi=40)
    assert exponent is not None, "the two left sides agree through q^40 at k = 1"


@pytest.mark.criterion(12)
def test_c12_dual_implementations():
    rng = random.Random(SEED)
    shapes = [lam for w in range(7) for lam in partitions_of(w)]
    for _ in range(50):
        n = rng.randint(1, 5)
        lam = rng.choice([lam for lam in shapes if lam.length <= n])
        xs = set()
        while len(xs) < n:
            xs.add(mpq(rng.choice([i for i in range(-9, 10) if i]), rng.randint(1, 9)))
        while True:
            q = mpq(rng.randint(-9, 9), rng.randint(1, 9))
            if q not in (0, 1, -1):
                break
        pc = PointConfig(tuple(sorted(xs)), q)
        assert hl_symmetrization(lam, pc) == hl_filtration(lam, pc)
    assert hl_symmetrization((2, 1), PointConfig((1, 2, 3), 1)) == 48
    assert hl_filtration((2, 1), PointConfig((1, 2, 3), 1)) == 48


def _cli_verify(suite, path):
    started = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "hlrr.cli", "verify", "--suite", suite, "--seed", str(SEED), "--output", str(path)],
        capture_output=True,
        text=True,
    )
    return proc, time.perf_counter() - started


@pytest.mark.criterion(13)
def test_c13_determinism_and_wall_time(tmp_path):
    first, t_first = _cli_verify("all", tmp_path / "a.json")
    second, t_second = _cli_verify("all", tmp_path / "b.json")
    assert first.returncode == 0, first.stdout + first.stderr
    assert second.returncode == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert max(t_first, t_second) < 600

    quick, t_quick = _cli_verify("quick", tmp_path / "q.json")
    assert quick.returncode == 0, quick.stdout + quick.stderr
    assert t_quick < 60
