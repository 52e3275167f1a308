"""Check execution, aggregation, analysis reports, and failure replay.

A run is a pure function of its TrialConfig: per-trial results are computed
independently (optionally in a process pool), keyed by trial index, and
aggregated in sorted order, so reports are byte-identical regardless of job
count.  Failure payloads carry the serialized instance and both sides of the
violated equality; `replay` re-runs the named check on the deserialized
instance alone.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import checks, theory
from .errors import InputError
from .generate import Instance, TrialConfig, random_instance
from .modules import FPModule
from .rings import ZZ, GFpx
from .serialize import de_module, ser_ideal, ser_module, ser_submodule


@dataclass(frozen=True)
class TheoremCheckResult:
    check_id: str
    instances_tested: int
    passed: bool
    failures: tuple[dict, ...]

    def to_json(self):
        return {
            "check": self.check_id,
            "instances_tested": self.instances_tested,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def _selected_checks(config: TrialConfig) -> list[str]:
    if config.checks is None:
        return sorted(checks.CHECKS)
    unknown = set(config.checks) - set(checks.CHECKS)
    if unknown:
        raise InputError(f"unknown check ids: {sorted(unknown)}")
    return sorted(config.checks)


def _evaluate_trial(args) -> tuple[int, list[dict]]:
    config, index, check_ids = args
    instance = random_instance(config, index)
    ctx = checks.CheckContext(instance, config)
    rows = []
    for check_id in check_ids:
        outcome = checks.run_check(check_id, ctx)
        row = {
            "check": check_id,
            "trial": index,
            "applied": outcome.applied,
            "passed": outcome.passed,
        }
        if not outcome.passed:
            row["failure"] = checks.failure_payload(check_id, ctx, outcome)
        rows.append(row)
    return index, rows


# Curated non-multiplication instances for the exploration mode: the theorem's
# multiplication hypothesis is deliberately dropped and the observed outcome
# is recorded, never asserted.
def _curated_exploration_modules() -> list[FPModule]:
    from .modules import module_from_invariants

    F2 = GFpx(2)
    return [
        module_from_invariants(ZZ, [2, 2]),
        module_from_invariants(ZZ, [2, 4]),
        module_from_invariants(ZZ, [2, 6]),
        module_from_invariants(F2, [F2.poly([0, 1]), F2.poly([0, 1, 1])]),
    ]


def _run_exploration(config: TrialConfig) -> list[dict]:
    out = []
    for k, module in enumerate(_curated_exploration_modules()):
        instance = Instance(index=-(k + 1), category="curated", module=module)
        ctx = checks.CheckContext(instance, config)
        outcome = checks.t29_compare(ctx)
        entry = {
            "module": ser_module(module),
            "multiplication": theory.is_multiplication(module),
            "t29_holds": outcome.passed,
            "note": "held anyway" if outcome.passed else "hypothesis necessary - expected",
        }
        if not outcome.passed:
            entry["observed"] = outcome.failure
        out.append(entry)
    return out


def run_checks(
    config: TrialConfig,
    jobs: int = 1,
    failure_dir: str | None = None,
    exploration: bool = True,
) -> dict:
    check_ids = _selected_checks(config)
    warnings = []
    if not check_ids:
        warnings.append("empty check filter: no checks were run")
    by_trial: dict[int, list[dict]] = {}
    if check_ids:
        work = [(config, index, check_ids) for index in range(config.trials)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for index, rows in pool.map(_evaluate_trial, work, chunksize=4):
                    by_trial[index] = rows
        else:
            for args in work:
                index, rows = _evaluate_trial(args)
                by_trial[index] = rows

    results = []
    for check_id in check_ids:
        tested = 0
        failures = []
        for index in range(config.trials):
            for row in by_trial[index]:
                if row["check"] != check_id:
                    continue
                if row["applied"]:
                    tested += 1
                if not row["passed"]:
                    failures.append(row["failure"])
        results.append(
            TheoremCheckResult(
                check_id=check_id,
                instances_tested=tested,
                passed=not failures,
                failures=tuple(failures),
            )
        )

    run_exploration = exploration and (config.checks is None or "T2.9" in config.checks)
    report = {
        "config": {
            "seed": config.seed,
            "trials": config.trials,
            "max_order": config.max_order,
            "max_rank": config.max_rank,
            "int_weight": config.int_weight,
            "checks": sorted(config.checks) if config.checks is not None else None,
        },
        "checks": [r.to_json() for r in results],
        "exploration": _run_exploration(config) if run_exploration else [],
        "all_passed": all(r.passed for r in results),
        "warnings": warnings,
    }
    if failure_dir is not None:
        write_failure_artifacts(report, failure_dir)
    return report


def write_failure_artifacts(report: dict, failure_dir: str) -> list[str]:
    paths = []
    for result in report["checks"]:
        for failure in result["failures"]:
            os.makedirs(failure_dir, exist_ok=True)
            name = "failure_{}_{}.json".format(
                failure["check"].replace(".", "-"), failure["trial"]
            )
            path = os.path.join(failure_dir, name)
            with open(path, "w") as fh:
                json.dump(failure, fh, indent=2, sort_keys=True)
            paths.append(path)
    return paths


def replay(payload: dict, config: TrialConfig | None = None) -> dict:
    """Re-run the named check on the instance serialized in a failure payload."""
    if not isinstance(payload, dict) or "check" not in payload or "module" not in payload:
        raise InputError("not a failure payload: expected 'check' and 'module' keys")
    check_id = payload["check"]
    if check_id not in checks.CHECKS:
        raise InputError(f"unknown check id {check_id!r}")
    module = de_module(payload["module"])
    config = config or TrialConfig()
    instance = Instance(
        index=payload.get("trial", 0),
        category=payload.get("category", "replayed"),
        module=module,
    )
    ctx = checks.CheckContext(instance, config)
    outcome = checks.run_check(check_id, ctx)
    out = {
        "check": check_id,
        "applied": outcome.applied,
        "passed": outcome.passed,
    }
    if not outcome.passed:
        out["failure"] = checks.failure_payload(check_id, ctx, outcome)
    return out


def analyze(module: FPModule) -> dict:
    """Full structural report for one module, as a JSON-ready dict."""
    ring = module.ring
    report = theory.classify(module)
    supp = theory.support(module)
    decomposition = (
        theory.primary_decomposition(module) if not module.is_zero_module else None
    )
    rad0 = theory.submodule_radical(module.zero_submodule())
    ass_p_again = theory.associated_prime_submodules(module).submodules
    if tuple(report.ass_p) != tuple(ass_p_again):
        raise RuntimeError("analysis report is not reproducible")
    return {
        "module": ser_module(module),
        "invariant_factors": [ring.ser_element(d) for d in module.invariant_factors],
        "free_rank": module.free_rank,
        "annihilator": ser_ideal(module.annihilator()),
        "classification": {
            "weakly_finitely_generated": report.weakly_finitely_generated,
            "multiplication": report.multiplication,
            "quasi_multiplication": report.quasi_multiplication,
            "weak_multiplication": report.weak_multiplication,
            "weak_multiplication_exhaustive": report.weak_multiplication_exhaustive,
            "finite_length": report.finite_length,
            "length": report.length,
            "noetherian": report.noetherian,
            "artinian": report.artinian,
        },
        "ass_ring": [ser_ideal(p) for p in report.ass_ring],
        "supp": {
            "cofinite": supp.cofinite,
            "minimal": [ser_ideal(p) for p in supp.minimal],
            "primes": None
            if supp.cofinite
            else [ser_ideal(p) for p in supp.primes],
        },
        "ass_p": [ser_submodule(s) for s in report.ass_p],
        "minimal_prime_submodules": [ser_submodule(s) for s in report.minimal_primes],
        "primary_decomposition": None
        if decomposition is None
        else [
            {
                "submodule": ser_submodule(c.submodule),
                "prime": ser_ideal(c.associated_prime),
            }
            for c in decomposition.components
        ],
        "radical_of_zero": ser_submodule(rad0),
    }
