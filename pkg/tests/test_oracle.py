"""Exhaustive engine: lattice enumeration, literal definition scans.

Counts and element sets here are derived by hand or by independent small
computations (divisor counts, subgroup counting formulas).
"""

import pytest

from primod import oracle
from primod.errors import SizeError, UnsupportedInstanceError
from primod.linalg import mat
from primod.modules import FPModule, module_from_invariants
from primod.rings import ZZ, GFpx, PrincipalIdeal


def table_for(factors, ring=ZZ):
    return oracle.FiniteModuleTable(module_from_invariants(ring, factors))


def sets(table, members_list):
    return sorted(sorted(table.elements[i] for i in s) for s in members_list)


def test_table_rejects_infinite_and_oversize():
    free = FPModule(ZZ, 1, mat(ZZ, [], cols=1))
    with pytest.raises(UnsupportedInstanceError):
        oracle.FiniteModuleTable(free)
    with pytest.raises(SizeError):
        oracle.FiniteModuleTable(module_from_invariants(ZZ, [1024]))


def test_enumerate_submodules_counts():
    # number of submodules equals the divisor count for cyclic groups
    assert len(oracle.enumerate_submodules(table_for([6])).members) == 4
    assert len(oracle.enumerate_submodules(table_for([4])).members) == 3
    assert len(oracle.enumerate_submodules(table_for([2, 2])).members) == 5
    assert len(oracle.enumerate_submodules(table_for([12])).members) == 6


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_rank_two_elementary_count(p):
    # (Z/p)^2 has p + 3 submodules: 0, whole, and p + 1 lines
    lattice = oracle.enumerate_submodules(table_for([p, p]))
    assert len(lattice.members) == p + 3


def test_lattice_closure_properties():
    table = table_for([2, 6])
    lattice = oracle.enumerate_submodules(table)
    members = set(lattice.members)
    assert table.zero_set in members and table.full_set in members
    for a in lattice.members:
        for b in lattice.members:
            assert (a & b) in members
            assert oracle._join(table, a, b) in members


def test_oracle_m_of_p_examples():
    table = table_for([6])
    assert sets(table, [table.m_of_p_set(PrincipalIdeal(ZZ, 2))]) == [[(0,), (2,), (4,)]]
    assert table.m_of_p_set(PrincipalIdeal(ZZ, 7)) == table.full_set
    table4 = table_for([4])
    assert sets(table4, [table4.m_of_p_set(PrincipalIdeal(ZZ, 2))]) == [[(0,), (2,)]]
    # zero prime on a finite module saturates to everything (all torsion)
    assert table.m_of_p_set(PrincipalIdeal(ZZ, 0)) == table.full_set


def test_oracle_prime_submodules_z6():
    table = table_for([6])
    lattice = oracle.enumerate_submodules(table)
    found = oracle.prime_submodules(lattice)
    as_sets = {
        (tuple(sorted(table.elements[i] for i in members)), p.gen) for members, p in found
    }
    assert as_sets == {
        (((0,), (2,), (4,)), 2),
        (((0,), (3,)), 3),
    }


def test_oracle_prime_submodules_z4():
    table = table_for([4])
    lattice = oracle.enumerate_submodules(table)
    found = oracle.prime_submodules(lattice)
    assert sets(table, [m for m, _ in found]) == [[(0,), (2,)]]


def test_oracle_prime_submodules_v22():
    # (Z/2)^2: the three lines are prime, and so is zero: its colon is (2) and
    # the quotient is a vector space over F_2 (the saturation of 2M, which is
    # zero and proper, must be prime)
    table = table_for([2, 2])
    lattice = oracle.enumerate_submodules(table)
    found = oracle.prime_submodules(lattice)
    assert len(found) == 4
    assert all(p.gen == 2 for _, p in found)
    sizes = sorted(len(m) for m, _ in found)
    assert sizes == [1, 2, 2, 2]


def test_oracle_radical_examples():
    table = table_for([12])
    lattice = oracle.enumerate_submodules(table)
    primes = oracle.prime_submodules(lattice)
    rad0 = oracle.radical_set(primes, table.full_set, table.zero_set)
    assert sorted(table.elements[i] for i in rad0) == [(0,), (6,)]
    table4 = table_for([4])
    lattice4 = oracle.enumerate_submodules(table4)
    primes4 = oracle.prime_submodules(lattice4)
    rad04 = oracle.radical_set(primes4, table4.full_set, table4.zero_set)
    assert sorted(table4.elements[i] for i in rad04) == [(0,), (2,)]
    for members, _ in primes:
        assert oracle.radical_set(primes, table.full_set, members) == members


def test_oracle_primary_decompositions_examples():
    table = table_for([6])
    lattice = oracle.enumerate_submodules(table)
    found = oracle.primary_decompositions(lattice)
    assert len(found) == 1
    fam = found[0]
    assert sets(table, [m for m, _ in fam]) == [[(0,), (2,), (4,)], [(0,), (3,)]]

    table4 = table_for([4])
    found4 = oracle.primary_decompositions(oracle.enumerate_submodules(table4))
    assert len(found4) == 1 and len(found4[0]) == 1
    members, prime = found4[0][0]
    assert members == table4.zero_set and prime.gen == 2

    table22 = table_for([2, 2])
    found22 = oracle.primary_decompositions(oracle.enumerate_submodules(table22))
    assert len(found22) == 1 and len(found22[0]) == 1
    members, prime = found22[0][0]
    assert members == table22.zero_set and prime.gen == 2


def test_oracle_decomposition_cap():
    table = table_for([2, 6, 6])
    lattice = oracle.enumerate_submodules(table)
    assert len(lattice.members) > 64
    with pytest.raises(SizeError):
        oracle.primary_decompositions(lattice)


def test_oracle_multiplication_examples():
    assert oracle.is_multiplication(oracle.enumerate_submodules(table_for([6])))
    assert not oracle.is_multiplication(oracle.enumerate_submodules(table_for([2, 2])))
    assert oracle.is_multiplication(oracle.enumerate_submodules(table_for([9])))


def test_oracle_quasi_multiplication_finite_always_holds():
    for factors in ([6], [2, 2], [4, 8], [12]):
        assert oracle.is_quasi_multiplication(table_for(factors))


def test_oracle_associated_primes():
    table = table_for([6])
    assert {p.gen for p in table.associated_primes()} == {2, 3}
    table8 = table_for([2, 4, 8])
    assert {p.gen for p in table8.associated_primes()} == {2}


def test_order_independence_of_results():
    # the same module presented two ways yields identical canonical answers
    m1 = module_from_invariants(ZZ, [2, 6])
    m2 = FPModule(ZZ, 2, mat(ZZ, [[2, 2], [0, 6]]))
    assert m1 == FPModule(ZZ, 2, m1.relations)
    t1, t2 = oracle.FiniteModuleTable(m1), oracle.FiniteModuleTable(m2)
    l1 = oracle.enumerate_submodules(t1)
    l2 = oracle.enumerate_submodules(t2)
    assert len(l1.members) == len(l2.members)
    assert sorted(len(s) for s in l1.members) == sorted(len(s) for s in l2.members)


def test_poly_lattice():
    F2 = GFpx(2)
    x = F2.poly([0, 1])
    table = table_for([F2.poly([0, 1, 1])], ring=F2)
    lattice = oracle.enumerate_submodules(table)
    assert len(lattice.members) == 4  # mirror of Z/6
    found = oracle.prime_submodules(lattice)
    assert sorted(str(p) for _, p in found) == ["(x)", "(x+1)"]
    # F_2[x]-submodules must be closed under the action of x, not just addition:
    # F_2[x]/(x^2) has 3 submodules while its additive group has 5 subgroups
    table_x2 = table_for([F2.poly([0, 0, 1])], ring=F2)
    assert len(oracle.enumerate_submodules(table_x2).members) == 3


def test_maximal_members():
    table = table_for([2, 2])
    lattice = oracle.enumerate_submodules(table)
    assert len(lattice.maximal_members()) == 3
    table12 = table_for([12])
    lattice12 = oracle.enumerate_submodules(table12)
    assert sets(table12, lattice12.maximal_members()) == [
        [(0,), (2,), (4,), (6,), (8,), (10,)],
        [(0,), (3,), (6,), (9,)],
    ]
