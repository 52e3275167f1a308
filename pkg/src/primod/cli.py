"""Command-line interface.

Verbs: analyze, op, check, lattice, replay.  All outputs are JSON on stdout
except the DOT text of `lattice`.  Exit codes: 0 all good, 1 at least one
check failed, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import dot, harness, theory
from .errors import InputError, PrimodError
from .generate import TrialConfig
from .modules import FPModule, ideal_times_module
from .serialize import (
    de_ideal,
    de_module,
    de_prime,
    de_submodule,
    ser_ideal,
    ser_submodule,
)


def _emit(data) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc


def _parse_inline(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid inline JSON {text!r}: {exc}") from exc


def _load_module(path: str) -> FPModule:
    return de_module(_load_json(path))


# ---------------------------------------------------------------------------
# op sub-command: expose the module/theory operations one by one
# ---------------------------------------------------------------------------


def _need(args, name):
    value = getattr(args, name, None)
    if value is None:
        raise InputError(f"operation requires --{name}")
    return value


def _sub_from_args(module, args, attr="gens"):
    return de_submodule(module, {"generators": _parse_inline(_need(args, attr))})


def _prime_from_args(module, args):
    return de_prime(module.ring, _parse_inline(_need(args, "prime")))


def _op_sum(module, args):
    n1 = _sub_from_args(module, args, "gens")
    n2 = _sub_from_args(module, args, "gens2")
    return ser_submodule(n1.sum(n2))


def _op_intersect(module, args):
    n1 = _sub_from_args(module, args, "gens")
    n2 = _sub_from_args(module, args, "gens2")
    return ser_submodule(n1.intersect(n2))


def _op_colon(module, args):
    return ser_ideal(_sub_from_args(module, args).colon())


def _op_ideal_times(module, args):
    ideal = de_ideal(module.ring, _parse_inline(_need(args, "ideal")))
    return ser_submodule(ideal_times_module(ideal, module))


def _op_quotient(module, args):
    sub = _sub_from_args(module, args)
    quotient = module.quotient(sub).module
    ring = module.ring
    return {
        "invariant_factors": [ring.ser_element(d) for d in quotient.invariant_factors],
        "free_rank": quotient.free_rank,
        "relations": quotient.rel_canonical.to_json(),
    }


def _op_saturation(module, args):
    return ser_submodule(theory.prime_saturation(module, _prime_from_args(module, args)))


def _op_localize(module, args):
    prime = _prime_from_args(module, args)
    loc = theory.localize(module, prime)
    ring = module.ring
    return {
        "base_prime": ser_ideal(loc.base_prime),
        "local_invariant_factors": [
            ring.ser_element(d) for d in loc.local_invariant_factors
        ],
        "free_rank": loc.free_rank,
        "localized_ass_p": [
            ser_submodule(s)
            for s in theory.localized_associated_prime_submodules(module, prime)
        ],
    }


def _op_is_prime(module, args):
    cert = theory.prime_submodule_certificate(_sub_from_args(module, args))
    if cert is None:
        return {"prime": False}
    return {"prime": True, "witness": ser_ideal(cert.witness_prime)}


def _op_is_primary(module, args):
    cert = theory.primary_component_certificate(_sub_from_args(module, args))
    if cert is None:
        return {"primary": False}
    return {"primary": True, "associated_prime": ser_ideal(cert.associated_prime)}


def _op_radical(module, args):
    return ser_submodule(theory.submodule_radical(_sub_from_args(module, args)))


def _op_contains(module, args):
    sub = _sub_from_args(module, args)
    from .serialize import de_element_vector

    coords = de_element_vector(
        module.ring, _parse_inline(_need(args, "element")), module.ambient_rank
    )
    return {"contains": sub.contains(module.element(coords))}


def _op_supp(module, args):
    supp = theory.support(module)
    return {
        "cofinite": supp.cofinite,
        "minimal": [ser_ideal(p) for p in supp.minimal],
        "primes": None if supp.cofinite else [ser_ideal(p) for p in supp.primes],
    }


def _op_ass_p(module, args):
    family = theory.associated_prime_submodules(module)
    return {
        "submodules": [ser_submodule(s) for s in family.submodules],
        "witnesses": [
            {"submodule": ser_submodule(s), "primes": [ser_ideal(p) for p in ps]}
            for s, ps in family.witnesses
        ],
        "complete": family.complete,
    }


def _op_supp_p(module, args):
    family = theory.supported_prime_submodules(module)
    return {
        "submodules": [ser_submodule(s) for s in family.submodules],
        "complete": family.complete,
    }


def _op_minimal_primes(module, args):
    return [
        {"submodule": ser_submodule(c.submodule), "witness": ser_ideal(c.witness_prime)}
        for c in theory.minimal_prime_submodules(module)
    ]


def _op_primary_decomposition(module, args):
    decomposition = theory.primary_decomposition(module)
    return [
        {"submodule": ser_submodule(c.submodule), "prime": ser_ideal(c.associated_prime)}
        for c in decomposition.components
    ]


def _op_length(module, args):
    lc = module.length_class()
    return {
        "finite_length": lc.finite_length,
        "length": lc.length,
        "noetherian": lc.noetherian,
        "artinian": lc.artinian,
    }


OPS = {
    "sum": _op_sum,
    "intersect": _op_intersect,
    "colon": _op_colon,
    "annihilator": lambda m, a: ser_ideal(m.annihilator()),
    "torsion": lambda m, a: ser_submodule(m.torsion_submodule()),
    "ideal-times": _op_ideal_times,
    "quotient": _op_quotient,
    "length": _op_length,
    "invariants": lambda m, a: {
        "invariant_factors": [m.ring.ser_element(d) for d in m.invariant_factors],
        "free_rank": m.free_rank,
    },
    "contains": _op_contains,
    "saturation": _op_saturation,
    "ass-ring": lambda m, a: [ser_ideal(p) for p in theory.associated_primes(m)],
    "supp-ring": _op_supp,
    "ass-p": _op_ass_p,
    "supp-p": _op_supp_p,
    "is-prime-submodule": _op_is_prime,
    "is-primary-submodule": _op_is_primary,
    "radical": _op_radical,
    "is-multiplication": lambda m, a: {"multiplication": theory.is_multiplication(m)},
    "is-quasi-multiplication": lambda m, a: {
        "quasi_multiplication": theory.is_quasi_multiplication(m)
    },
    "is-weak-multiplication": lambda m, a: {
        "weak_multiplication": theory.is_weak_multiplication(m, allow_structural=True),
        "exhaustive": m.is_finite,
    },
    "minimal-primes": _op_minimal_primes,
    "primary-decomposition": _op_primary_decomposition,
    "localize": _op_localize,
    "classify": lambda m, a: harness.analyze(m)["classification"],
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primod",
        description="prime-submodule calculus over Euclidean domains, with a "
        "definitional oracle and a randomized theorem-check harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="full structural report for a module")
    p_analyze.add_argument("-m", "--module", required=True, help="module JSON file")

    p_op = sub.add_parser("op", help="run a single operation")
    p_op.add_argument("name", choices=sorted(OPS))
    p_op.add_argument("-m", "--module", required=True, help="module JSON file")
    p_op.add_argument("--gens", help="submodule generators, inline JSON")
    p_op.add_argument("--gens2", help="second submodule generators, inline JSON")
    p_op.add_argument("--prime", help='prime ideal, e.g. \'{"gen":"2"}\' or \'{"zero":true}\'')
    p_op.add_argument("--ideal", help="principal ideal, same format as --prime")
    p_op.add_argument("--element", help="ambient coordinates, inline JSON")

    p_check = sub.add_parser("check", help="run the randomized check suite")
    group = p_check.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="run every check (default)")
    group.add_argument("--only", help="comma-separated check ids")
    p_check.add_argument("--trials", type=int, default=200)
    p_check.add_argument("--seed", type=int, default=42)
    p_check.add_argument("--max-order", type=int, default=512)
    p_check.add_argument("--max-rank", type=int, default=3)
    p_check.add_argument("--jobs", type=int, default=1)
    p_check.add_argument("--failure-dir", default="failures")
    p_check.add_argument(
        "--no-exploration", action="store_true", help="skip the curated exploration set"
    )

    p_lattice = sub.add_parser("lattice", help="emit the submodule lattice as DOT")
    p_lattice.add_argument("-m", "--module", required=True)
    p_lattice.add_argument("--dot", help="output path (stdout when omitted)")

    p_replay = sub.add_parser("replay", help="re-run a failure artifact")
    p_replay.add_argument("failure", help="failure JSON file")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            _emit(harness.analyze(_load_module(args.module)))
            return 0
        if args.command == "op":
            module = _load_module(args.module)
            _emit(OPS[args.name](module, args))
            return 0
        if args.command == "check":
            selected = None
            if args.only:
                selected = frozenset(x.strip() for x in args.only.split(",") if x.strip())
            config = TrialConfig(
                seed=args.seed,
                trials=args.trials,
                max_order=args.max_order,
                max_rank=args.max_rank,
                checks=selected,
            )
            report = harness.run_checks(
                config,
                jobs=args.jobs,
                failure_dir=args.failure_dir,
                exploration=not args.no_exploration,
            )
            _emit(report)
            return 0 if report["all_passed"] else 1
        if args.command == "lattice":
            text = dot.emit_lattice(_load_module(args.module))
            if args.dot:
                with open(args.dot, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        if args.command == "replay":
            result = harness.replay(_load_json(args.failure))
            _emit(result)
            return 0 if result["passed"] else 1
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except PrimodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
