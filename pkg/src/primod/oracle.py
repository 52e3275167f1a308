"""Definitional brute-force engine for finite modules.

Everything in this module evaluates definitions literally, by exhaustive
enumeration over a finite module's elements, and serves as ground truth for
the structural fast paths elsewhere in the package.  Nothing here may call
into :mod:`primod.theory`.

Scalars and the residue-lift rule
---------------------------------

The ring action on a finite module factors through R/(e), where e generates
the annihilator.  Definitions that quantify a scalar s over the whole ring
("for some s outside the prime p") are therefore decided on residue classes
c modulo e, together with an explicit lift rule: the class c + (e) contains a
representative outside a nonzero prime (q) unless q divides both c and e (if
q does not divide e, the lifts c + ke sweep every residue modulo q; if q
divides e, all lifts are congruent to c modulo q).  For the zero prime, every
class contains a nonzero lift because e itself is nonzero.  Scanning residue
classes with this rule is exactly equivalent to quantifying over the ring.

Elements of a finite module are indexed 0..order-1 in a fixed deterministic
order; sets of elements are ``frozenset`` of indices, so every oracle result
is independent of enumeration order by construction.  Submodule enumeration
splits the module into coprime primary parts (a submodule is the direct sum
of its primary parts), runs a breadth-first join closure inside each part,
and assembles the lattice as sums of one part per prime.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import reduce

from .errors import SizeError, UnsupportedInstanceError
from .linalg import Mat, hnf_pivots, mat, residue_reduce
from .modules import FPModule, Submodule
from .rings import Element, IntegerRing, PrincipalIdeal, PrimeIdeal

DEFAULT_ORDER_CAP = 512
DEFAULT_SUBMODULE_CAP = 20000
DEFAULT_DECOMPOSITION_LATTICE_CAP = 64


def _make_reducer(H: Mat):
    """A fast canonical-residue reducer specialized to the relation HNF."""
    ring = H.ring
    pivots = hnf_pivots(H)
    cols = H.cols
    if isinstance(ring, IntegerRing):
        diagonal = len(pivots) == cols and all(
            i == j and all(x == 0 for k, x in enumerate(H.rows[i]) if k != j)
            for i, j in pivots
        )
        if diagonal:
            mods = tuple(H.rows[i][i] for i in range(cols))

            def reduce_diag(v):
                return tuple(a % m for a, m in zip(v, mods))

            return reduce_diag
        rows = [tuple(r) for r in H.rows]

        def reduce_int(v):
            out = list(v)
            for i, j in pivots:
                q = out[j] // rows[i][j]
                if q:
                    row = rows[i]
                    for k in range(j, cols):
                        out[k] -= q * row[k]
            return tuple(out)

        return reduce_int

    def reduce_generic(v):
        return residue_reduce(H, v)

    return reduce_generic


class FiniteModuleTable:
    """Complete element table of a finite module, with addition and scalar action.

    Rows of the addition and scalar-action tables are built lazily and cached;
    most computations touch only a small slice of either table.
    """

    def __init__(self, module: FPModule, order_cap: int = DEFAULT_ORDER_CAP):
        if not module.is_finite:
            raise UnsupportedInstanceError("module has a free part; not enumerable")
        count = module.element_count()
        if count > order_cap:
            raise SizeError(f"module order {count} exceeds cap {order_cap}")
        self.module = module
        ring = module.ring
        self.ring = ring

        H = module.rel_canonical
        pivots = hnf_pivots(H)
        if len(pivots) != module.ambient_rank:
            raise RuntimeError("finite module whose relations miss a pivot column")
        self._reduce = _make_reducer(H)
        per_column = [list(ring.residues(H.rows[i][j])) for i, j in pivots]
        self.elements: list[tuple[Element, ...]] = [
            tuple(combo) for combo in itertools.product(*per_column)
        ]
        if len(self.elements) != count:
            raise RuntimeError("element grid does not match invariant-factor count")
        self.index = {coords: k for k, coords in enumerate(self.elements)}
        self.zero = self.index[tuple(ring.zero() for _ in range(module.ambient_rank))]

        self.exponent = module.exponent()
        self.residues: list[Element] = list(ring.residues(self.exponent))
        self.residue_index = {c: k for k, c in enumerate(self.residues)}
        self.basis_indices = [
            self.index[module.basis_element(i).coords]
            for i in range(module.ambient_rank)
        ]
        self.full_set = frozenset(range(len(self.elements)))
        self.zero_set = frozenset({self.zero})
        self._add_rows: dict[int, list[int]] = {}
        self._scalar_rows: dict[int, list[int]] = {}
        self._cyclic: dict[int, frozenset[int]] = {}

    def add_row(self, i: int) -> list[int]:
        row = self._add_rows.get(i)
        if row is None:
            ring = self.ring
            x = self.elements[i]
            reduce_ = self._reduce
            index = self.index
            row = [
                index[reduce_(tuple(ring.add(a, b) for a, b in zip(x, y)))]
                for y in self.elements
            ]
            self._add_rows[i] = row
        return row

    def scalar_row(self, k: int) -> list[int]:
        row = self._scalar_rows.get(k)
        if row is None:
            ring = self.ring
            c = self.residues[k]
            reduce_ = self._reduce
            index = self.index
            row = [
                index[reduce_(tuple(ring.mul(c, a) for a in x))] for x in self.elements
            ]
            self._scalar_rows[k] = row
        return row

    def add(self, i: int, j: int) -> int:
        return self.add_row(i)[j]

    # -- conversions ---------------------------------------------------------

    def set_of_submodule(self, sub: Submodule) -> frozenset[int]:
        ring = self.ring
        reduce_ = _make_reducer(sub.canonical)
        is_zero = ring.is_zero
        out = []
        for k, coords in enumerate(self.elements):
            if all(is_zero(x) for x in reduce_(coords)):
                out.append(k)
        return frozenset(out)

    def submodule_of_set(self, members: frozenset[int]) -> Submodule:
        # pick a small generating subset before canonicalizing
        gens = []
        current: frozenset[int] = self.zero_set
        for k in sorted(members):
            if k not in current:
                gens.append(self.elements[k])
                current = _join(self, current, self.cyclic_submodule(k))
        return self.module.submodule(mat(self.ring, gens, cols=self.module.ambient_rank))

    def scalar_index(self, r: Element) -> int:
        """Index of the residue class acting like the ring element r."""
        return self.residue_index[self.ring.reduce_mod(r, self.exponent)]

    def lift_outside(self, c: Element, p: PrincipalIdeal) -> bool:
        """Whether the class c + (exponent) contains a representative outside p."""
        if p.is_zero:
            return True
        return not (p.contains(self.exponent) and p.contains(c))

    # -- literal definitions ---------------------------------------------------

    def ideal_times_set(self, p: PrincipalIdeal) -> frozenset[int]:
        if p.is_zero:
            return self.zero_set
        return frozenset(self.scalar_row(self.scalar_index(p.gen)))

    def m_of_p_set(self, p: PrincipalIdeal) -> frozenset[int]:
        """{x : s x in pM for some s outside p}, by residue scan with the lift rule."""
        target = self.ideal_times_set(p)
        usable = [k for k, c in enumerate(self.residues) if self.lift_outside(c, p)]
        rows = [self.scalar_row(k) for k in usable]
        out = []
        for x in range(len(self.elements)):
            for row in rows:
                if row[x] in target:
                    out.append(x)
                    break
        return frozenset(out)

    def colon_residues(self, members: frozenset[int]) -> list[Element]:
        """Residue classes c with c*M inside the given submodule set."""
        out = []
        for k, c in enumerate(self.residues):
            row = self.scalar_row(k)
            if all(row[b] in members for b in self.basis_indices):
                out.append(c)
        return out

    def colon_ideal(self, members: frozenset[int]) -> PrincipalIdeal:
        ring = self.ring
        g = self.exponent
        for c in self.colon_residues(members):
            if not ring.is_zero(c):
                g = ring.gcd(g, c)
        return PrincipalIdeal(ring, g)

    def annihilator_of_element(self, x: int) -> PrincipalIdeal:
        ring = self.ring
        g = self.exponent
        for k, c in enumerate(self.residues):
            if self.scalar_row(k)[x] == self.zero and not ring.is_zero(c):
                g = ring.gcd(g, c)
        return PrincipalIdeal(ring, g)

    def associated_primes(self) -> frozenset[PrimeIdeal]:
        """Annihilators of nonzero elements that happen to be prime ideals."""
        found = set()
        for x in range(len(self.elements)):
            if x == self.zero:
                continue
            ann = self.annihilator_of_element(x)
            if ann.is_prime():
                found.add(PrimeIdeal(self.ring, ann.gen))
        return frozenset(found)

    def is_prime_set(self, members: frozenset[int]) -> PrimeIdeal | None:
        """Literal primality test: r e in N implies e in N or r in (N:M)."""
        if members == self.full_set:
            return None
        colon = self.colon_ideal(members)
        if not colon.is_prime():
            return None
        outside = [x for x in range(len(self.elements)) if x not in members]
        for k, c in enumerate(self.residues):
            if not self.lift_outside(c, colon):
                continue  # every lift of c lies in the colon ideal
            row = self.scalar_row(k)
            for x in outside:
                if row[x] in members:
                    return None
        return PrimeIdeal(self.ring, colon.gen)

    # -- cyclic submodules -------------------------------------------------------

    def cyclic_submodule(self, x: int) -> frozenset[int]:
        """The submodule generated by one element: closure under addition and action."""
        cached = self._cyclic.get(x)
        if cached is not None:
            return cached
        members = self._cyclic_uncached(x)
        self._cyclic[x] = members
        return members

    def _add_index(self, i: int, j: int) -> int:
        ring = self.ring
        x, y = self.elements[i], self.elements[j]
        return self.index[self._reduce(tuple(ring.add(a, b) for a, b in zip(x, y)))]

    def _cyclic_uncached(self, x: int) -> frozenset[int]:
        if isinstance(self.ring, IntegerRing):
            members = {self.zero}
            y = x
            while y not in members:
                members.add(y)
                y = self._add_index(y, x)
            return frozenset(members)
        # polynomial ring: close under addition and the action of the variable;
        # pushing the variable acting on each adjoined generator suffices since
        # the action is linear over the additive span
        var_row = self.scalar_row(self.scalar_index(self.ring.variable()))
        members = {self.zero}
        stack = [x]
        while stack:
            g = stack.pop()
            if g in members:
                continue
            orbit = []
            y = g
            while y != self.zero:
                orbit.append(y)
                y = self._add_index(y, g)
            new = set()
            for m in orbit:
                for s in members:
                    t = self._add_index(m, s)
                    if t not in members:
                        new.add(t)
            members.update(new)
            stack.append(var_row[g])
        return frozenset(members)


@dataclass(frozen=True)
class SubmoduleLattice:
    """All submodules of a finite module, as element index sets."""

    table: FiniteModuleTable
    members: tuple[frozenset[int], ...]

    def proper(self) -> tuple[frozenset[int], ...]:
        return tuple(s for s in self.members if s != self.table.full_set)

    def maximal_members(self) -> tuple[frozenset[int], ...]:
        proper = self.proper()
        return tuple(s for s in proper if not any(s < t for t in proper))

    def minimal_among(self, family) -> tuple[frozenset[int], ...]:
        fam = list(family)
        return tuple(s for s in fam if not any(t < s for t in fam))


def _join(table: FiniteModuleTable, base: frozenset[int], cyc: frozenset[int]):
    """base + cyc via coset representatives of cyc modulo its meet with base."""
    inter = base & cyc
    seen: set[int] = set()
    reps = []
    for c in sorted(cyc):
        if c in seen:
            continue
        reps.append(c)
        row = table.add_row(c)
        seen.update(row[d] for d in inter)
    out: set[int] = set()
    for r in reps:
        row = table.add_row(r)
        out.update(row[s] for s in base)
    return frozenset(out)


def _enumerate_closure(
    table: FiniteModuleTable,
    universe: frozenset[int],
    cap: int,
) -> list[frozenset[int]]:
    """All submodules contained in a given closed universe, by join BFS."""
    cyclic_by_set: dict[frozenset[int], int] = {}
    for x in sorted(universe):
        members = table.cyclic_submodule(x)
        cyclic_by_set.setdefault(members, x)
    cyclics = sorted(cyclic_by_set, key=lambda s: (len(s), sorted(s)))
    known = {table.zero_set}
    queue = deque([table.zero_set])
    while queue:
        current = queue.popleft()
        for cyc in cyclics:
            if cyc <= current:
                continue
            joined = _join(table, current, cyc)
            if joined not in known:
                known.add(joined)
                if len(known) > cap:
                    raise SizeError(f"submodule lattice exceeds cap {cap}")
                queue.append(joined)
    return sorted(known, key=lambda s: (len(s), sorted(s)))


def enumerate_submodules(
    table: FiniteModuleTable, submodule_cap: int = DEFAULT_SUBMODULE_CAP
) -> SubmoduleLattice:
    """The full submodule lattice.

    The module splits into coprime primary parts and every submodule is the
    sum of its intersections with them, so the lattice is assembled as sums of
    one submodule per part, each part enumerated by breadth-first joins of
    cyclic submodules.
    """
    ring = table.ring
    if table.module.is_zero_module:
        return SubmoduleLattice(table=table, members=(table.zero_set,))
    factors = ring.factor(table.exponent).factors
    part_lattices: list[list[frozenset[int]]] = []
    for q, a in factors:
        # the q-primary part: elements killed by q^a
        power = ring.one()
        for _ in range(a):
            power = ring.mul(power, q)
        row = table.scalar_row(table.scalar_index(power))
        part = frozenset(x for x in range(len(table.elements)) if row[x] == table.zero)
        part_lattices.append(_enumerate_closure(table, part, submodule_cap))
    total = 1
    for lat in part_lattices:
        total *= len(lat)
        if total > submodule_cap:
            raise SizeError(f"submodule lattice exceeds cap {submodule_cap}")
    members = []
    for combo in itertools.product(*part_lattices):
        acc = combo[0]
        for nxt in combo[1:]:
            acc = _join(table, acc, nxt)
        members.append(acc)
    uniq = sorted(set(members), key=lambda s: (len(s), sorted(s)))
    if len(uniq) != len(members):
        raise RuntimeError("primary-part lattice product produced duplicates")
    return SubmoduleLattice(table=table, members=tuple(uniq))


def prime_submodules(
    lattice: SubmoduleLattice,
) -> tuple[tuple[frozenset[int], PrimeIdeal], ...]:
    """All (N, witness prime) pairs found by the literal implication scan."""
    out = []
    for members in lattice.members:
        witness = lattice.table.is_prime_set(members)
        if witness is not None:
            out.append((members, witness))
    return tuple(out)


def radical_set(
    prime_list, full_set: frozenset[int], contained: frozenset[int]
) -> frozenset[int]:
    """Intersection of the prime submodules containing the given set; M if none."""
    acc = None
    for members, _ in prime_list:
        if contained <= members:
            acc = members if acc is None else acc & members
    return full_set if acc is None else acc


def is_multiplication(lattice: SubmoduleLattice) -> bool:
    """Whether N = (N:M)M for every submodule N in the lattice."""
    table = lattice.table
    for members in lattice.members:
        colon = table.colon_ideal(members)
        if table.ideal_times_set(colon) != members:
            return False
    return True


def is_quasi_multiplication(table: FiniteModuleTable) -> bool:
    """Definitional check of the saturation identity at every support prime."""
    ring = table.ring
    if table.module.is_zero_module:
        return True
    for q, _ in ring.factor(table.exponent).factors:
        p = PrincipalIdeal(ring, q)
        if table.m_of_p_set(p) != table.ideal_times_set(p):
            return False
    return True


def quotient_associated_primes(
    table: FiniteModuleTable, members: frozenset[int]
) -> frozenset[PrimeIdeal]:
    """Associated primes of M/N, by the coset-annihilator scan."""
    ring = table.ring
    found = set()
    for x in range(len(table.elements)):
        if x in members:
            continue
        g = table.exponent
        for k, c in enumerate(table.residues):
            if table.scalar_row(k)[x] in members and not ring.is_zero(c):
                g = ring.gcd(g, c)
        ann = PrincipalIdeal(ring, g)
        if ann.is_prime():
            found.add(PrimeIdeal(ring, ann.gen))
    return frozenset(found)


def primary_submodules(
    lattice: SubmoduleLattice,
) -> tuple[tuple[frozenset[int], PrimeIdeal], ...]:
    """Proper submodules whose quotient has exactly one associated prime."""
    out = []
    table = lattice.table
    for members in lattice.proper():
        primes = quotient_associated_primes(table, members)
        if len(primes) == 1:
            out.append((members, next(iter(primes))))
    return tuple(out)


def primary_decompositions(
    lattice: SubmoduleLattice,
    lattice_cap: int = DEFAULT_DECOMPOSITION_LATTICE_CAP,
) -> tuple[tuple[tuple[frozenset[int], PrimeIdeal], ...], ...]:
    """Every minimal primary decomposition of the zero submodule.

    A family qualifies when its members are primary with pairwise distinct
    associated primes, the intersection is zero, and no member can be dropped.
    The search space is bounded because at most one member per prime may occur.
    """
    if len(lattice.members) > lattice_cap:
        raise SizeError(
            f"lattice size {len(lattice.members)} exceeds decomposition cap {lattice_cap}"
        )
    table = lattice.table
    by_prime: dict[PrimeIdeal, list[frozenset[int]]] = {}
    for members, prime in primary_submodules(lattice):
        by_prime.setdefault(prime, []).append(members)
    primes = sorted(by_prime, key=lambda p: p.sort_key())
    results = []
    # each prime contributes either nothing or exactly one primary submodule
    option_lists = [[None] + by_prime[p] for p in primes]
    for combo in itertools.product(*option_lists):
        chosen = [
            (members, primes[i]) for i, members in enumerate(combo) if members is not None
        ]
        if not chosen:
            continue
        inter = reduce(lambda a, b: a & b, (m for m, _ in chosen))
        if inter != table.zero_set:
            continue
        irredundant = True
        for skip in range(len(chosen)):
            rest = [m for i, (m, _) in enumerate(chosen) if i != skip]
            partial = reduce(lambda a, b: a & b, rest) if rest else table.full_set
            if partial == table.zero_set:
                irredundant = False
                break
        if irredundant:
            results.append(tuple(chosen))
    return tuple(sorted(results, key=lambda fam: [p.sort_key() for _, p in fam]))
