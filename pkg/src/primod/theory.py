"""Prime-submodule theory for finitely presented modules over a Euclidean domain.

This is the structural (fast) layer: support and associated primes, the
saturation submodule attached to a prime, prime/primary certificates, the
minimal primary decomposition of zero, radicals of submodules, the
module-class predicates (multiplication / quasi multiplication / weak
multiplication), localization at a nonzero prime, and a combined
classification report.

Two shortcuts specific to principal ideal domains are used throughout and are
cross-validated against the exhaustive engine in :mod:`primod.oracle` by the
test suite and the check harness:

* for a nonzero prime (q), the quotient by qM is a vector space over the
  field R/(q), so the saturation of qM collapses to qM itself;
* a finitely generated module is a multiplication module iff it is cyclic.

The radical of a submodule N is assembled from its minimal prime candidates:
the torsion saturation of N (the smallest candidate with zero colon, present
when M/N has a free part) intersected with N + qM over the finitely many
primes q dividing an invariant factor of M/N.  Primes not dividing any
invariant factor are absorbed by the torsion saturation, because they act
invertibly on the torsion of M/N.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, UnsupportedInstanceError
from .modules import FPModule, Submodule, ideal_times_module
from .rings import Element, PrimeIdeal, PrincipalIdeal


# ---------------------------------------------------------------------------
# Support and associated primes of the base ring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SupportDescription:
    """Supp of a module: a finite prime set, or the cofinite 'all primes' case."""

    cofinite: bool
    primes: tuple[PrimeIdeal, ...] | None  # None exactly when cofinite
    minimal: tuple[PrimeIdeal, ...]

    def contains(self, p: PrincipalIdeal) -> bool:
        if self.cofinite:
            return True
        return any(p == q for q in self.primes)

    def is_empty(self) -> bool:
        return not self.cofinite and not self.primes


def support(module: FPModule) -> SupportDescription:
    """Primes containing the annihilator; cofinite exactly for faithful modules."""
    ring = module.ring
    ann = module.annihilator()
    if ann.is_zero:
        zero = PrimeIdeal(ring, ring.zero())
        return SupportDescription(cofinite=True, primes=None, minimal=(zero,))
    if ann.is_unit_ideal:
        return SupportDescription(cofinite=False, primes=(), minimal=())
    primes = tuple(
        sorted(
            (PrimeIdeal(ring, q) for q, _ in ring.factor(ann.gen).factors),
            key=lambda p: p.sort_key(),
        )
    )
    # nonzero primes of a PID are maximal, hence pairwise incomparable
    return SupportDescription(cofinite=False, primes=primes, minimal=primes)


def associated_primes(module: FPModule) -> tuple[PrimeIdeal, ...]:
    """Primes occurring as the exact annihilator of a nonzero element."""
    ring = module.ring
    found = set()
    for d in module.invariant_factors:
        for q, _ in ring.factor(d).factors:
            found.add(PrimeIdeal(ring, q))
    if module.free_rank > 0:
        found.add(PrimeIdeal(ring, ring.zero()))
    return tuple(sorted(found, key=lambda p: p.sort_key()))


# ---------------------------------------------------------------------------
# Saturation submodules M(p)
# ---------------------------------------------------------------------------


def prime_saturation(module: FPModule, p: PrimeIdeal) -> Submodule:
    """{x : s x in pM for some s outside p}.

    At p = (0) this is the torsion submodule.  At a nonzero prime it equals pM
    (the PID shortcut validated against the oracle).
    """
    if p.is_zero:
        return module.torsion_submodule()
    return ideal_times_module(p, module)


@dataclass(frozen=True)
class PrimeSubmoduleFamily:
    """Deduplicated saturation submodules with the primes witnessing each."""

    submodules: tuple[Submodule, ...]
    witnesses: tuple[tuple[Submodule, tuple[PrimeIdeal, ...]], ...]
    complete: bool

    def __len__(self):
        return len(self.submodules)


def _family(module: FPModule, primes, complete: bool) -> PrimeSubmoduleFamily:
    by_sub: dict[Submodule, list[PrimeIdeal]] = {}
    for p in primes:
        by_sub.setdefault(prime_saturation(module, p), []).append(p)
    subs = tuple(sorted(by_sub, key=lambda s: s.sort_key()))
    witnesses = tuple(
        (s, tuple(sorted(by_sub[s], key=lambda p: p.sort_key()))) for s in subs
    )
    return PrimeSubmoduleFamily(submodules=subs, witnesses=witnesses, complete=complete)


def associated_prime_submodules(module: FPModule) -> PrimeSubmoduleFamily:
    return _family(module, associated_primes(module), complete=True)


def supported_prime_submodules(module: FPModule) -> PrimeSubmoduleFamily:
    """Saturations over the support; minimal-only (flagged) for faithful modules."""
    supp = support(module)
    if supp.cofinite:
        return _family(module, supp.minimal, complete=False)
    return _family(module, supp.primes, complete=True)


# ---------------------------------------------------------------------------
# Prime and primary certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeSubmoduleCert:
    submodule: Submodule
    witness_prime: PrimeIdeal


@dataclass(frozen=True)
class PrimaryComponent:
    submodule: Submodule
    associated_prime: PrimeIdeal


def prime_submodule_certificate(sub: Submodule) -> PrimeSubmoduleCert | None:
    """Certificate that the submodule is prime, or None.

    The colon ideal must be prime; at a nonzero colon (q) the quotient is a
    vector space over R/(q) and the defining implication is automatic, at (0)
    the quotient must be torsion-free.
    """
    if sub.is_full():
        return None
    colon = sub.colon()
    if not colon.is_prime():
        return None
    if colon.is_zero:
        quotient = sub.parent.quotient(sub).module
        if quotient.invariant_factors:
            return None
    ring = sub.parent.ring
    return PrimeSubmoduleCert(submodule=sub, witness_prime=PrimeIdeal(ring, colon.gen))


def primary_component_certificate(sub: Submodule) -> PrimaryComponent | None:
    """Certificate that M/Q has exactly one associated prime, or None."""
    if sub.is_full():
        raise InputError("a primary submodule must be proper")
    quotient = sub.parent.quotient(sub).module
    primes = associated_primes(quotient)
    if len(primes) != 1:
        return None
    prime = primes[0]
    if quotient.annihilator().radical() != PrincipalIdeal(prime.ring, prime.gen):
        raise RuntimeError("primary certificate disagrees with the colon radical")
    return PrimaryComponent(submodule=sub, associated_prime=prime)


# ---------------------------------------------------------------------------
# Primary decomposition of the zero submodule
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimaryDecomposition:
    components: tuple[PrimaryComponent, ...]

    def primes(self) -> tuple[PrimeIdeal, ...]:
        return tuple(c.associated_prime for c in self.components)

    def submodules(self) -> tuple[Submodule, ...]:
        return tuple(c.submodule for c in self.components)


def _prime_multiplicity(ring, d: Element, q: Element) -> int:
    v = 0
    while ring.divides(q, d) and not ring.is_zero(d):
        d = ring.exact_div(d, q)
        v += 1
    return v


def primary_decomposition(module: FPModule) -> PrimaryDecomposition:
    """The minimal primary decomposition of the zero submodule, via the Smith splitting.

    Each prime q dividing an invariant factor contributes the preimage of the
    complement of the q-primary part; a free part contributes the torsion
    submodule.  All decomposition invariants are re-verified before returning.
    """
    if module.is_zero_module:
        raise InputError("the zero module has no primary decomposition of zero")
    ring = module.ring
    snf = module.snf
    diag = snf.diagonal()
    n = module.ambient_rank

    primes: list[Element] = []
    seen = set()
    for d in module.invariant_factors:
        for q, _ in ring.factor(d).factors:
            if q not in seen:
                seen.add(q)
                primes.append(q)
    primes.sort(key=ring.sort_key)

    free_coords = [
        i for i in range(n) if i >= len(diag) or ring.is_zero(diag[i])
    ]
    torsion_coords = [
        (i, diag[i]) for i in range(len(diag)) if not ring.is_zero(diag[i])
    ]

    components = []
    for q in primes:
        rows = []
        for i, d in torsion_coords:
            part = ring.one()
            for _ in range(_prime_multiplicity(ring, d, q)):
                part = ring.mul(part, q)
            rows.append(tuple(ring.mul(part, x) for x in snf.v_inv.rows[i]))
        for i in free_coords:
            rows.append(snf.v_inv.rows[i])
        sub = module.submodule(rows)
        components.append(
            PrimaryComponent(submodule=sub, associated_prime=PrimeIdeal(ring, q))
        )
    if module.free_rank > 0:
        components.append(
            PrimaryComponent(
                submodule=module.torsion_submodule(),
                associated_prime=PrimeIdeal(ring, ring.zero()),
            )
        )
    components.sort(key=lambda c: c.associated_prime.sort_key())
    decomposition = PrimaryDecomposition(components=tuple(components))
    _verify_decomposition(module, decomposition)
    return decomposition


def _verify_decomposition(module: FPModule, decomposition: PrimaryDecomposition):
    components = decomposition.components
    if len(set(decomposition.primes())) != len(components):
        raise RuntimeError("primary decomposition has repeated primes")
    for component in components:
        cert = primary_component_certificate(component.submodule)
        if cert is None or cert.associated_prime != component.associated_prime:
            raise RuntimeError("primary decomposition component is not primary")
    inter = None
    for component in components:
        inter = component.submodule if inter is None else inter.intersect(component.submodule)
    if inter is None or not inter.is_zero():
        raise RuntimeError("primary decomposition does not intersect to zero")
    if len(components) > 1:
        for skip in range(len(components)):
            partial = None
            for i, component in enumerate(components):
                if i == skip:
                    continue
                partial = (
                    component.submodule
                    if partial is None
                    else partial.intersect(component.submodule)
                )
            if partial.is_zero():
                raise RuntimeError("primary decomposition is redundant")


# ---------------------------------------------------------------------------
# Radicals
# ---------------------------------------------------------------------------


def torsion_saturation(sub: Submodule) -> Submodule:
    """{x : s x in N for some nonzero s}: the preimage of the torsion of M/N."""
    parent = sub.parent
    quotient = parent.quotient(sub).module
    return parent.submodule(quotient.torsion_submodule().canonical)


def submodule_radical(sub: Submodule) -> Submodule:
    """Intersection of the prime submodules containing N; M itself when none do."""
    module = sub.parent
    quotient = module.quotient(sub).module
    if quotient.is_zero_module:
        return module.full_submodule()
    if is_multiplication(module):
        return ideal_times_module(sub.colon().radical(), module)
    ring = module.ring
    candidates = []
    if quotient.free_rank > 0:
        candidates.append(torsion_saturation(sub))
    seen = set()
    for d in quotient.invariant_factors:
        for q, _ in ring.factor(d).factors:
            if q in seen:
                continue
            seen.add(q)
            candidates.append(sub.sum(ideal_times_module(PrincipalIdeal(ring, q), module)))
    result = None
    for candidate in candidates:
        result = candidate if result is None else result.intersect(candidate)
    return module.full_submodule() if result is None else result


# ---------------------------------------------------------------------------
# Module-class predicates
# ---------------------------------------------------------------------------


def is_multiplication(module: FPModule) -> bool:
    """Over a PID: multiplication iff cyclic (oracle-validated)."""
    if module.is_zero_module:
        return True
    if module.free_rank == 0:
        return len(module.invariant_factors) <= 1
    return module.free_rank == 1 and not module.invariant_factors


def is_quasi_multiplication(module: FPModule) -> bool:
    """Saturation equals pM at every support prime.

    Only p = (0) can fail over a PID, so this reduces to: no free part, or no
    torsion (oracle-validated at the nonzero primes, definitional at zero).
    """
    return module.free_rank == 0 or not module.invariant_factors


def is_weak_multiplication(module: FPModule, allow_structural: bool = False) -> bool:
    """Every prime submodule is pM for some prime ideal p.

    Finite modules are decided exhaustively through the submodule lattice.
    Infinite ones only have the structural answer (torsion-free of rank one),
    which is returned when allow_structural is set and refused otherwise.
    """
    if module.is_zero_module:
        return True
    if not module.is_finite:
        if not allow_structural:
            raise UnsupportedInstanceError(
                "weak-multiplication is only decided exhaustively on finite modules"
            )
        return module.free_rank == 1 and not module.invariant_factors
    from . import oracle

    ring = module.ring
    table = oracle.FiniteModuleTable(module)
    lattice = oracle.enumerate_submodules(table)
    allowed = {table.zero_set}
    for q, _ in ring.factor(table.exponent).factors:
        allowed.add(table.ideal_times_set(PrincipalIdeal(ring, q)))
    for members, _ in oracle.prime_submodules(lattice):
        if members not in allowed:
            return False
    return True


def minimal_prime_submodules(module: FPModule) -> tuple[PrimeSubmoduleCert, ...]:
    """Inclusion-minimal saturations attached to the minimal support primes.

    For quasi-multiplication modules these are exactly the minimal prime
    submodules, and for finite modules they coincide with the
    inclusion-minimal members of the full prime-submodule lattice.
    """
    if module.is_zero_module:
        raise InputError("the zero module has no prime submodules")
    supp = support(module)
    candidates: dict[Submodule, PrimeIdeal] = {}
    for p in supp.minimal:
        sat = prime_saturation(module, p)
        candidates.setdefault(sat, p)
    minimal = [
        sub
        for sub in candidates
        if not any(
            other != sub and sub.contains_submodule(other) for other in candidates
        )
    ]
    minimal.sort(key=lambda s: s.sort_key())
    certs = []
    for sub in minimal:
        cert = prime_submodule_certificate(sub)
        if cert is None:
            raise RuntimeError("minimal saturation candidate failed the prime certificate")
        certs.append(PrimeSubmoduleCert(submodule=sub, witness_prime=candidates[sub]))
    return tuple(certs)


# ---------------------------------------------------------------------------
# Localization at a nonzero prime
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalizedModule:
    """The localization at R minus a nonzero prime, by its q-power invariant factors."""

    base_prime: PrimeIdeal
    local_invariant_factors: tuple[Element, ...]
    free_rank: int

    @property
    def is_zero_module(self) -> bool:
        return self.free_rank == 0 and not self.local_invariant_factors


def localize(module: FPModule, q: PrimeIdeal) -> LocalizedModule:
    if q.is_zero:
        raise UnsupportedInstanceError(
            "localization at (0) is a fraction-field vector space; not supported"
        )
    ring = module.ring
    locals_ = []
    for d in module.invariant_factors:
        v = _prime_multiplicity(ring, d, q.gen)
        if v > 0:
            part = ring.one()
            for _ in range(v):
                part = ring.mul(part, q.gen)
            locals_.append(part)
    return LocalizedModule(
        base_prime=q,
        local_invariant_factors=tuple(locals_),
        free_rank=module.free_rank,
    )


def saturate(sub: Submodule, q: PrimeIdeal) -> Submodule:
    """{x : s x in N for some s outside q}: membership in N after localizing at q."""
    if q.is_zero:
        raise UnsupportedInstanceError("saturation at (0) is torsion_saturation")
    parent = sub.parent
    ring = parent.ring
    quotient = parent.quotient(sub).module
    diag = quotient.snf.diagonal()
    rows = list(sub.canonical.rows)
    for i, d in enumerate(diag):
        if ring.is_zero(d):
            continue
        part = ring.one()
        for _ in range(_prime_multiplicity(ring, d, q.gen)):
            part = ring.mul(part, q.gen)
        rows.append(tuple(ring.mul(part, x) for x in quotient.snf.v_inv.rows[i]))
    return parent.submodule(rows)


def localized_associated_prime_submodules(
    module: FPModule, q: PrimeIdeal
) -> tuple[Submodule, ...]:
    """Associated prime submodules of the localized module, as saturations in M."""
    loc = localize(module, q)
    out = []
    if loc.local_invariant_factors:
        out.append(saturate(ideal_times_module(q, module), q))
    if loc.free_rank > 0:
        out.append(saturate(module.torsion_submodule(), q))
    dedup = sorted(set(out), key=lambda s: s.sort_key())
    return tuple(dedup)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    weakly_finitely_generated: bool
    multiplication: bool
    quasi_multiplication: bool
    weak_multiplication: bool
    weak_multiplication_exhaustive: bool
    finite_length: bool
    artinian: bool
    noetherian: bool
    length: int | None
    ass_ring: tuple[PrimeIdeal, ...]
    supp_minimal: tuple[PrimeIdeal, ...]
    ass_p: tuple[Submodule, ...]
    minimal_primes: tuple[Submodule, ...]


def classify(module: FPModule) -> ClassificationReport:
    supp = support(module)
    wfg = all(
        prime_saturation(module, p).is_proper() for p in supp.minimal
    )
    if supp.cofinite:
        # also probe the nonzero support primes that touch the torsion
        ring = module.ring
        seen = set()
        for d in module.invariant_factors:
            for qq, _ in ring.factor(d).factors:
                if qq not in seen:
                    seen.add(qq)
                    wfg = wfg and prime_saturation(module, PrimeIdeal(ring, qq)).is_proper()
    mult = is_multiplication(module)
    quasi = is_quasi_multiplication(module)
    exhaustive = module.is_finite
    weak = is_weak_multiplication(module, allow_structural=True)
    length = module.length_class()
    report = ClassificationReport(
        weakly_finitely_generated=wfg,
        multiplication=mult,
        quasi_multiplication=quasi,
        weak_multiplication=weak,
        weak_multiplication_exhaustive=exhaustive,
        finite_length=length.finite_length,
        artinian=length.artinian,
        noetherian=length.noetherian,
        length=length.length,
        ass_ring=associated_primes(module),
        supp_minimal=supp.minimal,
        ass_p=associated_prime_submodules(module).submodules,
        minimal_primes=tuple(
            cert.submodule for cert in minimal_prime_submodules(module)
        )
        if not module.is_zero_module
        else (),
    )
    if report.multiplication and not report.quasi_multiplication:
        raise RuntimeError("classification violates multiplication => quasi")
    if (
        report.weakly_finitely_generated
        and report.weak_multiplication
        and not report.quasi_multiplication
    ):
        raise RuntimeError("classification violates weak multiplication => quasi")
    if report.finite_length and not report.artinian:
        raise RuntimeError("classification violates finite length => artinian")
    return report
