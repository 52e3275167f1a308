"""Structural theory layer, cross-checked against the exhaustive engine.

The oracle table realizes every definition literally, so set-level agreement
on small modules is the authority for each derived expectation here.
"""

import random

import pytest

from primod import oracle, theory
from primod.errors import InputError, UnsupportedInstanceError
from primod.linalg import mat
from primod.modules import FPModule, ideal_times_module, module_from_invariants
from primod.rings import ZZ, GFpx, PrimeIdeal, PrincipalIdeal


def z6():
    return module_from_invariants(ZZ, [6])


def elements_of(sub):
    table = oracle.FiniteModuleTable(sub.parent)
    return sorted(table.elements[i] for i in table.set_of_submodule(sub))


def test_support_examples():
    supp = theory.support(z6())
    assert not supp.cofinite
    assert {p.gen for p in supp.primes} == {2, 3}
    assert {p.gen for p in supp.minimal} == {2, 3}

    free = FPModule(ZZ, 1, mat(ZZ, [], cols=1))
    supp = theory.support(free)
    assert supp.cofinite and supp.primes is None
    assert [p.gen for p in supp.minimal] == [0]
    assert supp.contains(PrincipalIdeal(ZZ, 17))

    zero = FPModule(ZZ, 0, mat(ZZ, [], cols=0))
    assert theory.support(zero).is_empty()


def test_associated_primes_examples():
    assert {p.gen for p in theory.associated_primes(z6())} == {2, 3}
    free2 = FPModule(ZZ, 2, mat(ZZ, [], cols=2))
    assert [p.gen for p in theory.associated_primes(free2)] == [0]
    zero = FPModule(ZZ, 0, mat(ZZ, [], cols=0))
    assert theory.associated_primes(zero) == ()


def test_prime_saturation_examples():
    m = z6()
    assert elements_of(theory.prime_saturation(m, PrimeIdeal(ZZ, 2))) == [(0,), (2,), (4,)]
    assert theory.prime_saturation(m, PrimeIdeal(ZZ, 5)).is_full()
    mixed = FPModule(ZZ, 2, mat(ZZ, [[0, 4]]))
    sat0 = theory.prime_saturation(mixed, PrimeIdeal(ZZ, 0))
    assert sat0 == mixed.torsion_submodule()
    assert sat0.contains(mixed.element([0, 1]))


def test_prime_saturation_agrees_with_oracle_on_random_modules():
    # the PID shortcut must match the literal definition before being trusted
    rng = random.Random(99)
    shapes = [[6], [4], [2, 2], [2, 4], [12], [2, 6], [9], [3, 9], [8, 8], [30]]
    count = 0
    while count < 200:
        factors = rng.choice(shapes)
        m = module_from_invariants(ZZ, factors)
        table = oracle.FiniteModuleTable(m)
        probes = [0, 2, 3, 5, 7]
        for g in probes:
            if g and not ZZ.is_irreducible(g):
                continue
            p = PrimeIdeal(ZZ, g)
            structural = table.set_of_submodule(theory.prime_saturation(m, p))
            assert structural == table.m_of_p_set(p), (factors, g)
        count += 1


def test_family_dedup_and_witnesses():
    fam = theory.associated_prime_submodules(z6())
    assert len(fam.submodules) == 2 and fam.complete
    for sub, primes in fam.witnesses:
        assert len(primes) == 1
    zero = FPModule(ZZ, 0, mat(ZZ, [], cols=0))
    assert len(theory.associated_prime_submodules(zero)) == 0
    free2 = FPModule(ZZ, 2, mat(ZZ, [], cols=2))
    fam = theory.associated_prime_submodules(free2)
    assert len(fam.submodules) == 1 and fam.submodules[0].is_zero()


def test_supported_prime_submodules_faithful_flagged():
    free2 = FPModule(ZZ, 2, mat(ZZ, [], cols=2))
    fam = theory.supported_prime_submodules(free2)
    assert not fam.complete
    assert len(fam.submodules) == 1 and fam.submodules[0].is_zero()
    fam6 = theory.supported_prime_submodules(z6())
    assert fam6.complete and len(fam6.submodules) == 2


def test_prime_certificate_examples():
    m = z6()
    cert = theory.prime_submodule_certificate(m.submodule([[3]]))
    assert cert is not None and cert.witness_prime.gen == 3
    z4 = module_from_invariants(ZZ, [4])
    cert = theory.prime_submodule_certificate(z4.submodule([[2]]))
    assert cert is not None and cert.witness_prime.gen == 2
    assert theory.prime_submodule_certificate(z4.zero_submodule()) is None
    assert theory.prime_submodule_certificate(m.full_submodule()) is None
    # zero prime: quotient must be torsion-free
    mixed = FPModule(ZZ, 2, mat(ZZ, [[0, 2]]))
    t = mixed.torsion_submodule()
    cert = theory.prime_submodule_certificate(t)
    assert cert is not None and cert.witness_prime.is_zero


def test_primary_certificate_examples():
    z4 = module_from_invariants(ZZ, [4])
    comp = theory.primary_component_certificate(z4.zero_submodule())
    assert comp is not None and comp.associated_prime.gen == 2
    assert theory.primary_component_certificate(z6().zero_submodule()) is None
    comp = theory.primary_component_certificate(z6().submodule([[3]]))
    assert comp is not None and comp.associated_prime.gen == 3
    with pytest.raises(InputError):
        theory.primary_component_certificate(z6().full_submodule())


def test_primary_decomposition_examples():
    m = z6()
    decomposition = theory.primary_decomposition(m)
    got = {
        (tuple(elements_of(c.submodule)), c.associated_prime.gen)
        for c in decomposition.components
    }
    assert got == {(((0,), (2,), (4,)), 2), (((0,), (3,)), 3)}

    z4 = module_from_invariants(ZZ, [4])
    d4 = theory.primary_decomposition(z4)
    assert len(d4.components) == 1
    assert d4.components[0].submodule.is_zero()
    assert d4.components[0].associated_prime.gen == 2

    mixed = FPModule(ZZ, 2, mat(ZZ, [[0, 2]]))
    dm = theory.primary_decomposition(mixed)
    assert [c.associated_prime.gen for c in dm.components] == [0, 2]
    q0 = dm.components[0].submodule
    assert q0 == mixed.torsion_submodule()

    with pytest.raises(InputError):
        theory.primary_decomposition(FPModule(ZZ, 0, mat(ZZ, [], cols=0)))


def test_radical_examples():
    z12 = module_from_invariants(ZZ, [12])
    rad0 = theory.submodule_radical(z12.zero_submodule())
    assert elements_of(rad0) == [(0,), (6,)]
    m = z6()
    three = m.submodule([[3]])
    assert theory.submodule_radical(three) == three
    free = FPModule(ZZ, 1, mat(ZZ, [], cols=1))
    assert theory.submodule_radical(free.zero_submodule()).is_zero()
    assert theory.submodule_radical(m.full_submodule()).is_full()


def test_radical_agrees_with_oracle_everywhere_small():
    for factors in ([6], [4], [12], [2, 2], [2, 4], [2, 6], [9], [8]):
        m = module_from_invariants(ZZ, factors)
        table = oracle.FiniteModuleTable(m)
        lattice = oracle.enumerate_submodules(table)
        primes = oracle.prime_submodules(lattice)
        for members in lattice.members:
            sub = table.submodule_of_set(members)
            structural = table.set_of_submodule(theory.submodule_radical(sub))
            literal = oracle.radical_set(primes, table.full_set, members)
            assert structural == literal, (factors, sorted(members))


def test_multiplication_examples():
    assert theory.is_multiplication(z6())
    assert not theory.is_multiplication(module_from_invariants(ZZ, [2, 2]))
    assert theory.is_multiplication(FPModule(ZZ, 0, mat(ZZ, [], cols=0)))
    assert theory.is_multiplication(FPModule(ZZ, 1, mat(ZZ, [], cols=1)))
    assert not theory.is_multiplication(FPModule(ZZ, 2, mat(ZZ, [], cols=2)))
    assert not theory.is_multiplication(FPModule(ZZ, 2, mat(ZZ, [[0, 2]])))


def test_quasi_multiplication_examples():
    free2 = FPModule(ZZ, 2, mat(ZZ, [], cols=2))
    assert theory.is_quasi_multiplication(free2)
    mixed = FPModule(ZZ, 2, mat(ZZ, [[0, 2]]))
    assert not theory.is_quasi_multiplication(mixed)
    assert theory.is_quasi_multiplication(z6())
    # definitional check at the zero prime: saturation vs (0)M
    assert theory.prime_saturation(mixed, PrimeIdeal(ZZ, 0)) != ideal_times_module(
        PrincipalIdeal(ZZ, 0), mixed
    )


def test_weak_multiplication_examples():
    assert theory.is_weak_multiplication(z6())
    assert not theory.is_weak_multiplication(module_from_invariants(ZZ, [2, 2]))
    zero = FPModule(ZZ, 0, mat(ZZ, [], cols=0))
    assert theory.is_weak_multiplication(zero)
    free = FPModule(ZZ, 1, mat(ZZ, [], cols=1))
    with pytest.raises(UnsupportedInstanceError):
        theory.is_weak_multiplication(free)
    assert theory.is_weak_multiplication(free, allow_structural=True)
    free2 = FPModule(ZZ, 2, mat(ZZ, [], cols=2))
    assert not theory.is_weak_multiplication(free2, allow_structural=True)


def test_minimal_prime_submodules_examples():
    z12 = module_from_invariants(ZZ, [12])
    certs = theory.minimal_prime_submodules(z12)
    got = {tuple(elements_of(c.submodule)) for c in certs}
    assert got == {
        ((0,), (2,), (4,), (6,), (8,), (10,)),
        ((0,), (3,), (6,), (9,)),
    }
    mixed = FPModule(ZZ, 2, mat(ZZ, [[0, 2]]))
    certs = theory.minimal_prime_submodules(mixed)
    assert len(certs) == 1
    assert certs[0].submodule == mixed.torsion_submodule()
    assert certs[0].witness_prime.is_zero
    free = FPModule(ZZ, 1, mat(ZZ, [], cols=1))
    certs = theory.minimal_prime_submodules(free)
    assert len(certs) == 1 and certs[0].submodule.is_zero()
    with pytest.raises(InputError):
        theory.minimal_prime_submodules(FPModule(ZZ, 0, mat(ZZ, [], cols=0)))


def test_minimal_primes_match_oracle_on_finite_modules():
    for factors in ([12], [6], [2, 2], [2, 4], [30], [2, 6]):
        m = module_from_invariants(ZZ, factors)
        table = oracle.FiniteModuleTable(m)
        lattice = oracle.enumerate_submodules(table)
        prime_sets = [members for members, _ in oracle.prime_submodules(lattice)]
        oracle_min = set(lattice.minimal_among(prime_sets))
        structural = {
            table.set_of_submodule(c.submodule)
            for c in theory.minimal_prime_submodules(m)
        }
        assert structural == oracle_min, factors


def test_localize_examples():
    m = z6()
    loc = theory.localize(m, PrimeIdeal(ZZ, 2))
    assert loc.local_invariant_factors == (2,) and loc.free_rank == 0
    loc5 = theory.localize(m, PrimeIdeal(ZZ, 5))
    assert loc5.is_zero_module
    free2 = FPModule(ZZ, 2, mat(ZZ, [], cols=2))
    locf = theory.localize(free2, PrimeIdeal(ZZ, 2))
    assert locf.free_rank == 2 and locf.local_invariant_factors == ()
    with pytest.raises(UnsupportedInstanceError):
        theory.localize(m, PrimeIdeal(ZZ, 0))


def test_localized_ass_p_examples():
    m = z6()
    subs = theory.localized_associated_prime_submodules(m, PrimeIdeal(ZZ, 2))
    assert len(subs) == 1
    assert elements_of(subs[0]) == [(0,), (2,), (4,)]
    assert theory.localized_associated_prime_submodules(m, PrimeIdeal(ZZ, 5)) == ()


def test_saturate():
    m = z6()
    sat = theory.saturate(m.zero_submodule(), PrimeIdeal(ZZ, 2))
    assert elements_of(sat) == [(0,), (2,), (4,)]
    mixed = FPModule(ZZ, 2, mat(ZZ, [[0, 6]]))
    n = mixed.submodule([[2, 0]])
    sat = theory.saturate(n, PrimeIdeal(ZZ, 2))
    # M/N has odd torsion (0,2): it is absorbed, the 2-torsion (0,3) is not
    assert sat.contains(mixed.element([0, 2]))
    assert not sat.contains(mixed.element([0, 3]))
    assert not sat.contains(mixed.element([1, 0]))
    assert sat.contains(mixed.element([2, 0]))


def test_classify_examples():
    rep = theory.classify(z6())
    assert rep.multiplication and rep.quasi_multiplication and rep.weak_multiplication
    assert rep.finite_length and rep.length == 2 and rep.artinian and rep.noetherian
    assert rep.weakly_finitely_generated

    rep = theory.classify(module_from_invariants(ZZ, [2, 2]))
    assert not rep.multiplication and rep.quasi_multiplication
    assert not rep.weak_multiplication

    rep = theory.classify(FPModule(ZZ, 2, mat(ZZ, [[0, 2]])))
    assert not rep.multiplication and not rep.quasi_multiplication

    rep = theory.classify(FPModule(ZZ, 2, mat(ZZ, [], cols=2)))
    assert rep.quasi_multiplication and not rep.weak_multiplication
    assert not rep.weak_multiplication_exhaustive

    F2 = GFpx(2)
    rep = theory.classify(module_from_invariants(F2, [F2.poly([0, 1, 1])]))
    assert rep.multiplication and rep.weak_multiplication
    assert {p.gen for p in rep.ass_ring} == {F2.poly([0, 1]), F2.poly([1, 1])}
