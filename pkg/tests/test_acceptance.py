"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Criteria 1 and 2 share one seeded corpus run (300 trials yields 200+ finite
instances).  Criterion 3 pins the worked examples.  Criterion 4 is the
exact-linalg property suite on 500 random matrices.  Criterion 5 is report
determinism including a parallel run.  Criterion 6 plants three documented
mutations and demands a named, replayable failure for each.

One stated pin in criterion 3 is asserted verbatim but expected to fail:
the prime-submodule count of Z/2 x Z/2 is 4, not 3.  The zero submodule has
colon ideal (2) and the quotient by it is an F_2-vector space, so the defining
implication holds; equivalently, the saturation of 2M is zero and proper,
which forces it to be prime.  The count of 3 would contradict the definitional
oracle and the agreement gates above, so the faithful value is pinned in
test_oracle.py and the verbatim pin is a strict xfail here.
"""

import itertools
import json
import random
import time

import pytest

from primod import harness, oracle, theory
from primod.generate import TrialConfig
from primod.linalg import (
    det,
    hermite_normal_form,
    kernel,
    mat,
    smith_normal_form,
    solve_membership,
)
from primod.modules import FPModule, ideal_times_module, module_from_invariants
from primod.rings import ZZ, GFpx, PrincipalIdeal

ACCEPTANCE_CONFIG = TrialConfig(seed=42, trials=300, max_order=512, max_rank=3)

ORACLE_AGREEMENT_IDS = [
    "OA.m_of_p",
    "OA.ass_ring",
    "OA.colon_ideal",
    "OA.is_prime_submodule",
    "OA.is_multiplication",
    "OA.is_quasi_multiplication",
    "OA.m_radical",
    "OA.primary_decomposition",
]

THEOREM_IDS = [
    "L2.1.i",
    "L2.1.ii",
    "L2.1.iii",
    "L2.1.iv",
    "L2.1.v",
    "L2.1.vi",
    "L2.2.i",
    "L2.2.ii",
    "L2.2.iii",
    "L2.5",
    "L2.6.i",
    "L2.6.ii",
    "C2.7",
    "L2.8",
    "T2.9",
    "L3.3",
    "P3.4.i",
    "P3.4.ii",
    "L3.5",
    "P3.6",
    "T3.7",
]


@pytest.fixture(scope="module")
def corpus_run():
    start = time.monotonic()
    report = harness.run_checks(ACCEPTANCE_CONFIG, exploration=True)
    elapsed = time.monotonic() - start
    return report, elapsed


def _result(report, check_id):
    for entry in report["checks"]:
        if entry["check"] == check_id:
            return entry
    raise AssertionError(f"check {check_id} missing from report")


def _announce(name, ok, detail=""):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


def test_criterion_1_oracle_agreement_gate(corpus_run):
    report, elapsed = corpus_run
    ok = True
    for check_id in ORACLE_AGREEMENT_IDS:
        entry = _result(report, check_id)
        if not entry["passed"] or entry["instances_tested"] < 200:
            ok = False
    _announce(
        "criterion-1 oracle-agreement gate",
        ok,
        f"({min(_result(report, c)['instances_tested'] for c in ORACLE_AGREEMENT_IDS)}"
        f" finite instances per op, {elapsed:.0f}s)",
    )
    for check_id in ORACLE_AGREEMENT_IDS:
        entry = _result(report, check_id)
        assert entry["passed"], f"{check_id} failed: {entry['failures'][:1]}"
        assert entry["instances_tested"] >= 200, check_id
    assert elapsed < 300, f"oracle gate took {elapsed:.0f}s, budget is 300s"


def test_criterion_2_theorem_suite(corpus_run):
    report, elapsed = corpus_run
    ok = all(_result(report, check_id)["passed"] for check_id in THEOREM_IDS)
    _announce("criterion-2 theorem suite", ok, f"({elapsed:.0f}s)")
    for check_id in THEOREM_IDS:
        entry = _result(report, check_id)
        assert entry["passed"], f"{check_id} failed: {entry['failures'][:1]}"
        assert entry["instances_tested"] > 0, f"{check_id} never applied"
    # hypothesis gating is in effect: the gated checks run on strict subsets
    assert _result(report, "T2.9")["instances_tested"] < ACCEPTANCE_CONFIG.trials
    assert _result(report, "L2.6.ii")["instances_tested"] <= _result(report, "L2.6.i")[
        "instances_tested"
    ]
    assert elapsed < 600, f"theorem suite took {elapsed:.0f}s, budget is 600s"


def elements_of(sub):
    table = oracle.FiniteModuleTable(sub.parent)
    return sorted(table.elements[i] for i in table.set_of_submodule(sub))


def test_criterion_3_worked_example_pins():
    z6 = module_from_invariants(ZZ, [6])
    ass_p = theory.associated_prime_submodules(z6).submodules
    assert {tuple(elements_of(s)) for s in ass_p} == {
        ((0,), (2,), (4,)),
        ((0,), (3,)),
    }
    lattice6 = oracle.enumerate_submodules(oracle.FiniteModuleTable(z6))
    assert len(oracle.primary_decompositions(lattice6)) == 1
    assert theory.is_multiplication(z6)

    z12 = module_from_invariants(ZZ, [12])
    rad0 = theory.submodule_radical(z12.zero_submodule())
    assert rad0 == ideal_times_module(PrincipalIdeal(ZZ, 6), z12)
    assert elements_of(rad0) == [(0,), (6,)]

    v22 = module_from_invariants(ZZ, [2, 2])
    lattice = oracle.enumerate_submodules(oracle.FiniteModuleTable(v22))
    assert len(lattice.members) == 5
    assert not theory.is_multiplication(v22)
    assert not theory.is_weak_multiplication(v22)

    mixed = FPModule(ZZ, 2, mat(ZZ, [[0, 2]]))
    assert not theory.is_quasi_multiplication(mixed)
    certs = theory.minimal_prime_submodules(mixed)
    assert len(certs) == 1 and certs[0].submodule == mixed.torsion_submodule()

    free2 = FPModule(ZZ, 2, mat(ZZ, [], cols=2))
    assert theory.is_quasi_multiplication(free2)

    F2 = GFpx(2)
    fx = module_from_invariants(F2, [F2.poly([0, 1, 1])])
    assert {p.gen for p in theory.associated_primes(fx)} == {
        F2.poly([0, 1]),
        F2.poly([1, 1]),
    }
    _announce("criterion-3 worked-example pins", True)


@pytest.mark.xfail(
    strict=True,
    reason="stated pin contradicts the definitional oracle: Z/2 x Z/2 has 4 "
    "prime submodules (the three lines and the zero submodule)",
)
def test_criterion_3_v22_prime_count_as_specified():
    v22 = module_from_invariants(ZZ, [2, 2])
    lattice = oracle.enumerate_submodules(oracle.FiniteModuleTable(v22))
    primes = oracle.prime_submodules(lattice)
    _announce(
        "criterion-3 pin 'Z/2xZ/2 has 3 primes'",
        len(primes) == 3,
        f"(oracle finds {len(primes)}; documented expected failure)",
    )
    assert len(primes) == 3


def test_criterion_4_exact_linalg_suite():
    start = time.monotonic()
    rng = random.Random(90125)
    checked_counts = 0
    for trial in range(500):
        r = rng.randint(0, 6)
        c = rng.randint(0 if r else 1, 6)
        A = mat(
            ZZ,
            [[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)],
            cols=c,
        )
        res = smith_normal_form(A)
        assert res.U.mul(A).mul(res.V).rows == res.S.rows
        assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
        diag = res.diagonal()
        for i in range(len(diag) - 1):
            if diag[i] == 0:
                assert diag[i + 1] == 0
            else:
                assert diag[i + 1] % diag[i] == 0
        hnf = hermite_normal_form(A)
        assert hnf.T.mul(A).rows == hnf.H.rows
        assert hermite_normal_form(hnf.H).H.rows == hnf.H.rows
        K = kernel(A)
        if K.nrows:
            assert K.mul(A).is_zero()
        if 1 <= r <= 3 and c <= 3 and checked_counts < 60:
            checked_counts += 1
            direct = 0
            spanned = 0
            for v in itertools.product(range(-2, 3), repeat=r):
                if all(
                    sum(v[i] * A.rows[i][j] for i in range(r)) == 0
                    for j in range(c)
                ):
                    direct += 1
                if solve_membership(K, v) is not None:
                    spanned += 1
            assert direct == spanned, (A.rows, direct, spanned)
    elapsed = time.monotonic() - start
    _announce("criterion-4 exact-linalg suite", True, f"({elapsed:.0f}s, 500 matrices)")
    assert elapsed < 60


def test_criterion_5_determinism_including_concurrency():
    config = TrialConfig(seed=42, trials=200)
    first = harness.run_checks(config, jobs=1, exploration=True)
    second = harness.run_checks(config, jobs=2, exploration=True)
    blob1 = json.dumps(first, sort_keys=True).encode()
    blob2 = json.dumps(second, sort_keys=True).encode()
    ok = blob1 == blob2 and first["all_passed"]
    _announce("criterion-5 determinism", ok, f"({len(blob1)} bytes, jobs 1 vs 2)")
    assert first["all_passed"]
    assert blob1 == blob2


MUTATION_CONFIG = TrialConfig(seed=42, trials=40)


def _assert_mutation_detected(check_ids, expect_failure_in):
    config = TrialConfig(
        seed=MUTATION_CONFIG.seed,
        trials=MUTATION_CONFIG.trials,
        checks=frozenset(check_ids),
    )
    report = harness.run_checks(config, exploration=False)
    failed = {r["check"] for r in report["checks"] if not r["passed"]}
    assert failed & set(expect_failure_in), (
        f"mutation went undetected; failures={sorted(failed)}"
    )
    # the counterexample must replay to the same verdict from its payload alone
    for entry in report["checks"]:
        if entry["check"] in failed and entry["failures"]:
            payload = json.loads(json.dumps(entry["failures"][0]))
            replayed = harness.replay(payload)
            assert not replayed["passed"]
            return sorted(failed)
    raise AssertionError("no failure payload found")


def test_criterion_6_mutation_sensitivity(monkeypatch):
    original_saturation = theory.prime_saturation
    original_multiplication = theory.is_multiplication
    original_radical = theory.submodule_radical

    # mutation 1: the zero-prime saturation wrongly returns (0)M
    def zero_saturation_mutated(module, p):
        if p.is_zero:
            return ideal_times_module(p, module)
        return original_saturation(module, p)

    monkeypatch.setattr(theory, "prime_saturation", zero_saturation_mutated)
    failed1 = _assert_mutation_detected(
        ["OA.m_of_p", "L2.2.i", "L2.2.ii", "L2.2.iii"],
        {"OA.m_of_p", "L2.2.i", "L2.2.ii", "L2.2.iii"},
    )
    monkeypatch.undo()
    assert theory.prime_saturation is original_saturation

    # mutation 2: the multiplication predicate answers yes unconditionally
    monkeypatch.setattr(theory, "is_multiplication", lambda module: True)
    failed2 = _assert_mutation_detected(
        ["OA.is_multiplication", "C2.7", "L2.6.ii", "T2.9"],
        {"OA.is_multiplication", "C2.7", "L2.6.ii", "T2.9"},
    )
    monkeypatch.undo()
    assert theory.is_multiplication is original_multiplication

    # mutation 3: the radical fast path applied without the multiplication gate
    def ungated_radical(sub):
        return ideal_times_module(sub.colon().radical(), sub.parent)

    monkeypatch.setattr(theory, "submodule_radical", ungated_radical)
    failed3 = _assert_mutation_detected(["OA.m_radical", "T2.9"], {"OA.m_radical"})
    monkeypatch.undo()
    assert theory.submodule_radical is original_radical

    _announce(
        "criterion-6 mutation sensitivity",
        True,
        f"(caught by {failed1} | {failed2} | {failed3})",
    )
