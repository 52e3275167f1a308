"""Named checks: oracle-agreement gates and one check per statement under test.

Every check consumes a CheckContext (one generated instance plus lazily built
oracle artifacts) and returns a CheckOutcome.  A check that does not apply to
the instance (its hypothesis fails, or the instance is infinite and the check
needs the element table) reports applied=False.  A failing check carries a
JSON payload with the serialized instance and both sides of the violated
equality, which is enough to replay it.

Check identifiers are frozen strings; the OA.* family compares each structural
fast path with the exhaustive engine, the remaining ids cover the statements
of the theory layer one by one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import oracle, theory
from .errors import SizeError
from .generate import Instance, TrialConfig
from .modules import Submodule, ideal_times_module
from .rings import PrimeIdeal, PrincipalIdeal
from .serialize import ser_ideal, ser_module, ser_submodule

FULL_SAMPLE_LIMIT = 128
SAMPLE_SIZE = 32


@dataclass
class CheckOutcome:
    applied: bool
    passed: bool
    failure: dict | None = None

    @staticmethod
    def skipped() -> "CheckOutcome":
        return CheckOutcome(applied=False, passed=True)

    @staticmethod
    def ok() -> "CheckOutcome":
        return CheckOutcome(applied=True, passed=True)

    @staticmethod
    def fail(detail: dict) -> "CheckOutcome":
        return CheckOutcome(applied=True, passed=False, failure=detail)


class CheckContext:
    """One instance plus shared lazily-computed artifacts (oracle and structural)."""

    def __init__(self, instance: Instance, config: TrialConfig):
        self.instance = instance
        self.config = config
        self.module = instance.module
        self._cache: dict[str, object] = {}

    def _memo(self, key: str, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    @property
    def table(self) -> oracle.FiniteModuleTable | None:
        def build():
            if not self.module.is_finite:
                return None
            try:
                return oracle.FiniteModuleTable(self.module, order_cap=self.config.max_order)
            except SizeError:
                return None

        return self._memo("table", build)

    @property
    def lattice(self) -> oracle.SubmoduleLattice | None:
        def build():
            if self.table is None:
                return None
            try:
                return oracle.enumerate_submodules(self.table)
            except SizeError:
                return None

        return self._memo("lattice", build)

    @property
    def oracle_primes(self):
        return self._memo(
            "oracle_primes",
            lambda: None if self.lattice is None else oracle.prime_submodules(self.lattice),
        )

    @property
    def oracle_decompositions(self):
        def build():
            lattice = self.lattice
            if lattice is None or len(lattice.members) > oracle.DEFAULT_DECOMPOSITION_LATTICE_CAP:
                return None
            return oracle.primary_decompositions(lattice)

        return self._memo("oracle_decompositions", build)

    @property
    def ass_primes(self):
        return self._memo("ass_primes", lambda: theory.associated_primes(self.module))

    @property
    def supp(self):
        return self._memo("supp", lambda: theory.support(self.module))

    @property
    def ass_p_family(self):
        return self._memo(
            "ass_p_family", lambda: theory.associated_prime_submodules(self.module)
        )

    @property
    def supp_p_family(self):
        return self._memo(
            "supp_p_family", lambda: theory.supported_prime_submodules(self.module)
        )

    @property
    def structural_decomposition(self):
        return self._memo(
            "structural_decomposition",
            lambda: None
            if self.module.is_zero_module
            else theory.primary_decomposition(self.module),
        )

    @property
    def is_multiplication(self) -> bool:
        return self._memo("is_mult", lambda: theory.is_multiplication(self.module))

    @property
    def is_quasi(self) -> bool:
        return self._memo("is_quasi", lambda: theory.is_quasi_multiplication(self.module))

    def probe_primes(self, include_zero: bool = True) -> tuple[PrimeIdeal, ...]:
        """Primes dividing the invariant factors, two that do not, and optionally (0)."""

        def build():
            ring = self.module.ring
            gens = []
            seen = set()
            for d in self.module.invariant_factors:
                for q, _ in ring.factor(d).factors:
                    if q not in seen:
                        seen.add(q)
                        gens.append(q)
            extra = 0
            for q in ring.iter_irreducibles():
                if q not in seen:
                    gens.append(q)
                    extra += 1
                    if extra == 2:
                        break
            return tuple(
                PrimeIdeal(ring, q) for q in sorted(gens, key=ring.sort_key)
            )

        nonzero = self._memo("probe_primes", build)
        if not include_zero:
            return nonzero
        ring = self.module.ring
        return (PrimeIdeal(ring, ring.zero()),) + nonzero

    def sample_pairs(self) -> tuple[tuple[frozenset[int], Submodule], ...]:
        """Deterministic (member set, Submodule) pairs; the whole lattice when small."""

        def build():
            lattice = self.lattice
            if lattice is None:
                return ()
            members = lattice.members
            if len(members) <= FULL_SAMPLE_LIMIT:
                picked = members
            else:
                stride = max(1, len(members) // SAMPLE_SIZE)
                chosen = list(members[::stride])[:SAMPLE_SIZE]
                chosen.append(members[0])
                chosen.append(members[-1])
                picked = tuple(sorted(set(chosen), key=lambda s: (len(s), sorted(s))))
            table = self.table
            return tuple((m, table.submodule_of_set(m)) for m in picked)

        return self._memo("sample_pairs", build)

    def set_of(self, sub: Submodule) -> frozenset[int]:
        return self.table.set_of_submodule(sub)


def _minimal_ideals(ideals):
    items = list(ideals)
    return {
        p
        for p in items
        if not any(q != p and p.contains_ideal(q) and not q.contains_ideal(p) for q in items)
    }


def _ser_set(table, members) -> list:
    ring = table.ring
    return [
        [ring.ser_element(c) for c in table.elements[i]] for i in sorted(members)
    ]


def _ser_primes(primes) -> list:
    return [ser_ideal(p) for p in sorted(primes, key=lambda p: p.sort_key())]


def _ser_subs(subs) -> list:
    return [ser_submodule(s) for s in sorted(subs, key=lambda s: s.sort_key())]


# ---------------------------------------------------------------------------
# Oracle-agreement gates
# ---------------------------------------------------------------------------


def check_oa_m_of_p(ctx: CheckContext) -> CheckOutcome:
    table = ctx.table
    if table is None:
        return CheckOutcome.skipped()
    for p in ctx.probe_primes():
        structural = ctx.set_of(theory.prime_saturation(ctx.module, p))
        literal = table.m_of_p_set(p)
        if structural != literal:
            return CheckOutcome.fail(
                {
                    "prime": ser_ideal(p),
                    "structural": _ser_set(table, structural),
                    "oracle": _ser_set(table, literal),
                }
            )
    return CheckOutcome.ok()


def check_oa_ass_ring(ctx: CheckContext) -> CheckOutcome:
    table = ctx.table
    if table is None:
        return CheckOutcome.skipped()
    structural = set(ctx.ass_primes)
    literal = set(table.associated_primes())
    if structural != literal:
        return CheckOutcome.fail(
            {"structural": _ser_primes(structural), "oracle": _ser_primes(literal)}
        )
    return CheckOutcome.ok()


def check_oa_colon_ideal(ctx: CheckContext) -> CheckOutcome:
    table = ctx.table
    if table is None or ctx.lattice is None:
        return CheckOutcome.skipped()
    for members, sub in ctx.sample_pairs():
        structural = sub.colon()
        literal = table.colon_ideal(members)
        if structural != literal:
            return CheckOutcome.fail(
                {
                    "submodule": _ser_set(table, members),
                    "structural": ser_ideal(structural),
                    "oracle": ser_ideal(literal),
                }
            )
    return CheckOutcome.ok()


def check_oa_is_prime_submodule(ctx: CheckContext) -> CheckOutcome:
    table = ctx.table
    if table is None or ctx.lattice is None:
        return CheckOutcome.skipped()
    for members, sub in ctx.sample_pairs():
        cert = theory.prime_submodule_certificate(sub)
        literal = table.is_prime_set(members)
        structural_witness = None if cert is None else cert.witness_prime
        if structural_witness != literal:
            return CheckOutcome.fail(
                {
                    "submodule": _ser_set(table, members),
                    "structural": None
                    if structural_witness is None
                    else ser_ideal(structural_witness),
                    "oracle": None if literal is None else ser_ideal(literal),
                }
            )
    return CheckOutcome.ok()


def check_oa_is_multiplication(ctx: CheckContext) -> CheckOutcome:
    lattice = ctx.lattice
    if lattice is None:
        return CheckOutcome.skipped()
    structural = ctx.is_multiplication
    literal = oracle.is_multiplication(lattice)
    if structural != literal:
        return CheckOutcome.fail({"structural": structural, "oracle": literal})
    return CheckOutcome.ok()


def check_oa_is_quasi_multiplication(ctx: CheckContext) -> CheckOutcome:
    table = ctx.table
    if table is None:
        return CheckOutcome.skipped()
    structural = ctx.is_quasi
    literal = oracle.is_quasi_multiplication(table)
    if structural != literal:
        return CheckOutcome.fail({"structural": structural, "oracle": literal})
    return CheckOutcome.ok()


def check_oa_m_radical(ctx: CheckContext) -> CheckOutcome:
    table = ctx.table
    if table is None or ctx.lattice is None:
        return CheckOutcome.skipped()
    primes = ctx.oracle_primes
    for members, sub in ctx.sample_pairs():
        structural = ctx.set_of(theory.submodule_radical(sub))
        literal = oracle.radical_set(primes, table.full_set, members)
        if structural != literal:
            return CheckOutcome.fail(
                {
                    "submodule": _ser_set(table, members),
                    "structural": _ser_set(table, structural),
                    "oracle": _ser_set(table, literal),
                }
            )
    return CheckOutcome.ok()


def check_oa_primary_decomposition(ctx: CheckContext) -> CheckOutcome:
    table = ctx.table
    if table is None or ctx.module.is_zero_module:
        return CheckOutcome.skipped()
    decomposition = ctx.structural_decomposition
    parts = [
        (ctx.set_of(c.submodule), c.associated_prime) for c in decomposition.components
    ]
    for members, prime in parts:
        literal = oracle.quotient_associated_primes(table, members)
        if literal != frozenset({prime}):
            return CheckOutcome.fail(
                {
                    "component": _ser_set(table, members),
                    "claimed_prime": ser_ideal(prime),
                    "oracle_quotient_ass": _ser_primes(literal),
                }
            )
    inter = table.full_set
    for members, _ in parts:
        inter &= members
    if inter != table.zero_set:
        return CheckOutcome.fail(
            {"reason": "intersection not zero", "intersection": _ser_set(table, inter)}
        )
    if len({p for _, p in parts}) != len(parts):
        return CheckOutcome.fail({"reason": "repeated primes"})
    if len(parts) > 1:
        for skip in range(len(parts)):
            partial = table.full_set
            for i, (members, _) in enumerate(parts):
                if i != skip:
                    partial &= members
            if partial == table.zero_set:
                return CheckOutcome.fail(
                    {"reason": "redundant component", "dropped": skip}
                )
    found = ctx.oracle_decompositions
    if found is not None:
        as_families = {frozenset(fam) for fam in found}
        if frozenset(parts) not in as_families:
            return CheckOutcome.fail(
                {
                    "reason": "constructed decomposition not among the oracle's",
                    "constructed": [
                        [_ser_set(table, m), ser_ideal(p)] for m, p in parts
                    ],
                    "oracle_count": len(found),
                }
            )
    return CheckOutcome.ok()


# ---------------------------------------------------------------------------
# Statement checks
# ---------------------------------------------------------------------------


def check_l21_i(ctx: CheckContext) -> CheckOutcome:
    empty = len(ctx.ass_primes) == 0
    if empty != ctx.module.is_zero_module:
        return CheckOutcome.fail(
            {"ass_empty": empty, "module_zero": ctx.module.is_zero_module}
        )
    return CheckOutcome.ok()


def check_l21_ii(ctx: CheckContext) -> CheckOutcome:
    ass_min = _minimal_ideals(ctx.ass_primes)
    supp_min = set(ctx.supp.minimal)
    if ass_min != supp_min:
        return CheckOutcome.fail(
            {"min_ass": _ser_primes(ass_min), "min_supp": _ser_primes(supp_min)}
        )
    return CheckOutcome.ok()


def check_l21_iii(ctx: CheckContext) -> CheckOutcome:
    ring = ctx.module.ring
    distinct = set()
    for d in ctx.module.invariant_factors:
        distinct.update(q for q, _ in ring.factor(d).factors)
    bound = len(distinct) + 1
    count = len(ctx.ass_primes)
    if count > bound:
        return CheckOutcome.fail({"count": count, "bound": bound})
    return CheckOutcome.ok()


def check_l21_iv(ctx: CheckContext) -> CheckOutcome:
    if not ctx.module.length_class().artinian:
        return CheckOutcome.skipped()
    ass = set(ctx.ass_primes)
    supp_set = set(ctx.supp.primes or ())
    if ass != supp_set or any(p.is_zero for p in ass):
        return CheckOutcome.fail(
            {"ass": _ser_primes(ass), "supp": _ser_primes(supp_set)}
        )
    return CheckOutcome.ok()


def check_l21_v(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    ring = module.ring
    for q in ctx.probe_primes(include_zero=False):
        loc = theory.localize(module, q)
        lhs = set()
        if loc.local_invariant_factors:
            lhs.add(q)
        if loc.free_rank > 0:
            lhs.add(PrimeIdeal(ring, ring.zero()))
        rhs = {p for p in ctx.ass_primes if q.contains_ideal(p)}
        if lhs != rhs:
            return CheckOutcome.fail(
                {
                    "prime": ser_ideal(q),
                    "localized_ass": _ser_primes(lhs),
                    "filtered_ass": _ser_primes(rhs),
                }
            )
    return CheckOutcome.ok()


def check_l21_vi(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    if module.is_zero_module:
        return CheckOutcome.skipped()
    ass = {PrincipalIdeal(module.ring, p.gen) for p in ctx.ass_primes}
    decomposition = ctx.structural_decomposition
    radicals = {c.submodule.colon().radical() for c in decomposition.components}
    if radicals != ass:
        return CheckOutcome.fail(
            {
                "colon_radicals": _ser_primes(radicals),
                "ass": _ser_primes(ass),
            }
        )
    families = ctx.oracle_decompositions
    if families is not None:
        table = ctx.table
        for family in families:
            radicals = {table.colon_ideal(members).radical() for members, _ in family}
            if radicals != ass:
                return CheckOutcome.fail(
                    {
                        "oracle_family": [
                            [_ser_set(table, m), ser_ideal(p)] for m, p in family
                        ],
                        "colon_radicals": _ser_primes(radicals),
                        "ass": _ser_primes(ass),
                    }
                )
    return CheckOutcome.ok()


def check_l22_i(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    for p in ctx.probe_primes():
        sat = theory.prime_saturation(module, p)
        if sat.is_full():
            continue
        cert = theory.prime_submodule_certificate(sat)
        if cert is None or cert.witness_prime != p:
            return CheckOutcome.fail(
                {
                    "prime": ser_ideal(p),
                    "saturation": ser_submodule(sat),
                    "witness": None if cert is None else ser_ideal(cert.witness_prime),
                }
            )
    return CheckOutcome.ok()


def check_l22_ii(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    supp = ctx.supp
    for p in ctx.probe_primes():
        proper = theory.prime_saturation(module, p).is_proper()
        if proper != supp.contains(p):
            return CheckOutcome.fail(
                {"prime": ser_ideal(p), "saturation_proper": proper, "in_supp": supp.contains(p)}
            )
    return CheckOutcome.ok()


def check_l22_iii(ctx: CheckContext) -> CheckOutcome:
    table = ctx.table
    if table is None or ctx.lattice is None:
        return CheckOutcome.skipped()
    for members, p in ctx.oracle_primes:
        sat_set = ctx.set_of(theory.prime_saturation(ctx.module, p))
        if not sat_set <= members:
            return CheckOutcome.fail(
                {
                    "prime": ser_ideal(p),
                    "prime_submodule": _ser_set(table, members),
                    "saturation": _ser_set(table, sat_set),
                }
            )
    return CheckOutcome.ok()


def check_l25(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    family = ctx.ass_p_family
    bound = len(ctx.ass_primes)
    if len(family) > bound:
        return CheckOutcome.fail({"count": len(family), "bound": bound})
    if (len(family) == 0) != module.is_zero_module:
        return CheckOutcome.fail(
            {"empty": len(family) == 0, "module_zero": module.is_zero_module}
        )
    return CheckOutcome.ok()


def check_l26_i(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    if not module.length_class().finite_length:
        return CheckOutcome.skipped()
    ass_p = set(ctx.ass_p_family.submodules)
    supp_p_family = ctx.supp_p_family
    if not supp_p_family.complete:
        return CheckOutcome.fail({"reason": "support unexpectedly cofinite"})
    if ass_p != set(supp_p_family.submodules):
        return CheckOutcome.fail(
            {"ass_p": _ser_subs(ass_p), "supp_p": _ser_subs(supp_p_family.submodules)}
        )
    return CheckOutcome.ok()


def check_l26_ii(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    if not module.length_class().finite_length or not ctx.is_multiplication:
        return CheckOutcome.skipped()
    table = ctx.table
    if table is None or ctx.lattice is None:
        return CheckOutcome.skipped()
    ass_p = {ctx.set_of(s) for s in ctx.ass_p_family.submodules}
    maximal = set(ctx.lattice.maximal_members())
    spec = {members for members, _ in ctx.oracle_primes}
    if ass_p != maximal or maximal != spec:
        return CheckOutcome.fail(
            {
                "ass_p": [_ser_set(table, s) for s in sorted(ass_p, key=sorted)],
                "max": [_ser_set(table, s) for s in sorted(maximal, key=sorted)],
                "spec": [_ser_set(table, s) for s in sorted(spec, key=sorted)],
            }
        )
    return CheckOutcome.ok()


def _is_maximal_submodule(sub: Submodule) -> bool:
    quotient = sub.parent.quotient(sub).module
    if quotient.free_rank != 0 or len(quotient.invariant_factors) != 1:
        return False
    return quotient.ring.is_irreducible(quotient.invariant_factors[0])


def check_c27(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    if not ctx.is_multiplication:
        return CheckOutcome.skipped()
    length = module.length_class()
    ass_p = ctx.ass_p_family.submodules
    all_maximal = all(_is_maximal_submodule(s) for s in ass_p)
    lhs = length.artinian
    rhs = length.noetherian and all_maximal
    if lhs != rhs:
        return CheckOutcome.fail(
            {"artinian": lhs, "noetherian": length.noetherian, "ass_p_maximal": all_maximal}
        )
    return CheckOutcome.ok()


def check_l28(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    ass_p = ctx.ass_p_family
    for q in ctx.probe_primes(include_zero=False):
        lhs = set(theory.localized_associated_prime_submodules(module, q))
        rhs = {
            theory.saturate(sub, q)
            for sub in ass_p.submodules
            if q.contains_ideal(sub.colon())
        }
        if lhs != rhs:
            return CheckOutcome.fail(
                {
                    "prime": ser_ideal(q),
                    "localized_ass_p": _ser_subs(lhs),
                    "saturated_filtered": _ser_subs(rhs),
                }
            )
    return CheckOutcome.ok()


def t29_compare(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    ass_p = set(ctx.ass_p_family.submodules)
    decomposition = ctx.structural_decomposition
    radicals = {theory.submodule_radical(c.submodule) for c in decomposition.components}
    if radicals != ass_p:
        return CheckOutcome.fail(
            {
                "radicals": _ser_subs(radicals),
                "ass_p": _ser_subs(ass_p),
                "source": "constructed decomposition",
            }
        )
    families = ctx.oracle_decompositions
    if families is not None:
        table = ctx.table
        ass_p_sets = {ctx.set_of(s) for s in ass_p}
        primes = ctx.oracle_primes
        for family in families:
            rad_sets = {
                oracle.radical_set(primes, table.full_set, members)
                for members, _ in family
            }
            if rad_sets != ass_p_sets:
                return CheckOutcome.fail(
                    {
                        "oracle_family": [
                            [_ser_set(table, m), ser_ideal(p)] for m, p in family
                        ],
                        "radicals": [
                            _ser_set(table, s) for s in sorted(rad_sets, key=sorted)
                        ],
                        "ass_p": [
                            _ser_set(table, s) for s in sorted(ass_p_sets, key=sorted)
                        ],
                        "source": "oracle decomposition",
                    }
                )
    return CheckOutcome.ok()


def check_t29(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    if module.is_zero_module or not ctx.is_multiplication:
        return CheckOutcome.skipped()
    return t29_compare(ctx)


def check_l33(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    if not ctx.is_quasi:
        return CheckOutcome.skipped()
    ass_p = set(ctx.ass_p_family.submodules)
    expected = {ideal_times_module(p, module) for p in ctx.ass_primes}
    if ass_p != expected:
        return CheckOutcome.fail(
            {"ass_p": _ser_subs(ass_p), "pM_over_ass": _ser_subs(expected)}
        )
    supp = ctx.supp
    supp_p_family = ctx.supp_p_family
    supp_primes = supp.minimal if supp.cofinite else supp.primes
    expected_supp = {ideal_times_module(p, module) for p in supp_primes}
    if set(supp_p_family.submodules) != expected_supp:
        return CheckOutcome.fail(
            {
                "supp_p": _ser_subs(supp_p_family.submodules),
                "pM_over_supp": _ser_subs(expected_supp),
            }
        )
    return CheckOutcome.ok()


def check_p34_i(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    if module.is_zero_module or not ctx.is_quasi:
        return CheckOutcome.skipped()
    minimal = {c.submodule for c in theory.minimal_prime_submodules(module)}
    expected = {ideal_times_module(p, module) for p in ctx.supp.minimal}
    if minimal != expected:
        return CheckOutcome.fail(
            {"minimal_primes": _ser_subs(minimal), "pM_over_min_supp": _ser_subs(expected)}
        )
    return CheckOutcome.ok()


def _minimal_subs(subs):
    items = list(subs)
    return {
        s
        for s in items
        if not any(t != s and s.contains_submodule(t) for t in items)
    }


def check_p34_ii(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    if module.is_zero_module or not ctx.is_quasi:
        return CheckOutcome.skipped()
    min_ass_p = _minimal_subs(ctx.ass_p_family.submodules)
    min_supp_p = _minimal_subs(ctx.supp_p_family.submodules)
    if min_ass_p != min_supp_p:
        return CheckOutcome.fail(
            {"min_ass_p": _ser_subs(min_ass_p), "min_supp_p": _ser_subs(min_supp_p)}
        )
    if ctx.table is not None and ctx.lattice is not None:
        table = ctx.table
        spec_min = set(
            ctx.lattice.minimal_among([members for members, _ in ctx.oracle_primes])
        )
        ass_min_sets = {ctx.set_of(s) for s in min_ass_p}
        if spec_min != ass_min_sets:
            return CheckOutcome.fail(
                {
                    "min_spec": [_ser_set(table, s) for s in sorted(spec_min, key=sorted)],
                    "min_ass_p": [
                        _ser_set(table, s) for s in sorted(ass_min_sets, key=sorted)
                    ],
                }
            )
    return CheckOutcome.ok()


def check_l35(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    ring = module.ring
    ann = module.annihilator()
    supp = ctx.supp
    if ann.is_zero or not supp.minimal:
        return CheckOutcome.skipped()
    product = ring.one()
    for p in supp.minimal:
        product = ring.mul(product, p.gen)
    if not ann.contains(product):
        return CheckOutcome.skipped()  # hypothesis p1...pn M = 0 fails
    recomputed = {
        PrimeIdeal(ring, q) for q, _ in ring.factor(module.exponent()).factors
    }
    if set(supp.minimal) != recomputed:
        return CheckOutcome.fail(
            {
                "min_supp": _ser_primes(supp.minimal),
                "exponent_primes": _ser_primes(recomputed),
            }
        )
    if len(supp.minimal) > 1:
        for dropped in supp.minimal:
            partial = ring.one()
            for p in supp.minimal:
                if p != dropped:
                    partial = ring.mul(partial, p.gen)
            if ann.contains(partial):
                return CheckOutcome.fail(
                    {"reason": "proper subset already kills M", "dropped": ser_ideal(dropped)}
                )
    return CheckOutcome.ok()


def check_p36(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    supp = ctx.supp
    if supp.cofinite:
        bound = 1
    else:
        ring = module.ring
        ann = module.annihilator()
        bound = (
            0
            if ann.is_unit_ideal
            else len(ring.factor(ann.gen).factors)
        )
    if len(supp.minimal) > bound:
        return CheckOutcome.fail({"count": len(supp.minimal), "bound": bound})
    return CheckOutcome.ok()


def check_t37(ctx: CheckContext) -> CheckOutcome:
    module = ctx.module
    if module.is_zero_module or not ctx.is_quasi:
        return CheckOutcome.skipped()
    minimal = theory.minimal_prime_submodules(module)
    supp = ctx.supp
    if len(minimal) > len(supp.minimal):
        return CheckOutcome.fail(
            {"minimal_prime_count": len(minimal), "min_supp_count": len(supp.minimal)}
        )
    return CheckOutcome.ok()


CHECKS: dict[str, Callable[[CheckContext], CheckOutcome]] = {
    "OA.m_of_p": check_oa_m_of_p,
    "OA.ass_ring": check_oa_ass_ring,
    "OA.colon_ideal": check_oa_colon_ideal,
    "OA.is_prime_submodule": check_oa_is_prime_submodule,
    "OA.is_multiplication": check_oa_is_multiplication,
    "OA.is_quasi_multiplication": check_oa_is_quasi_multiplication,
    "OA.m_radical": check_oa_m_radical,
    "OA.primary_decomposition": check_oa_primary_decomposition,
    "L2.1.i": check_l21_i,
    "L2.1.ii": check_l21_ii,
    "L2.1.iii": check_l21_iii,
    "L2.1.iv": check_l21_iv,
    "L2.1.v": check_l21_v,
    "L2.1.vi": check_l21_vi,
    "L2.2.i": check_l22_i,
    "L2.2.ii": check_l22_ii,
    "L2.2.iii": check_l22_iii,
    "L2.5": check_l25,
    "L2.6.i": check_l26_i,
    "L2.6.ii": check_l26_ii,
    "C2.7": check_c27,
    "L2.8": check_l28,
    "T2.9": check_t29,
    "L3.3": check_l33,
    "P3.4.i": check_p34_i,
    "P3.4.ii": check_p34_ii,
    "L3.5": check_l35,
    "P3.6": check_p36,
    "T3.7": check_t37,
}


def run_check(check_id: str, ctx: CheckContext) -> CheckOutcome:
    return CHECKS[check_id](ctx)


def failure_payload(check_id: str, ctx: CheckContext, outcome: CheckOutcome) -> dict:
    return {
        "check": check_id,
        "trial": ctx.instance.index,
        "category": ctx.instance.category,
        "module": ser_module(ctx.module),
        "detail": outcome.failure,
    }
