"""Finitely presented modules over a Euclidean domain and their submodule calculus.

A module is presented as ``R^n / rowspace(relations)``.  Elements are ambient
row vectors kept in canonical residue form relative to the Hermite form of the
relation matrix, so element equality is coordinate equality.  A submodule is
represented by the Hermite form of its generators stacked over the parent's
relations; that canonical matrix is unique, so submodule equality is matrix
equality and the zero submodule's canonical form is the relation lattice
itself.

The Smith form of the relations is computed once per module and cached: it
gives the invariant factors (units dropped), the free rank, and the coordinate
change used to pull torsion and primary components back to ambient
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateInputError, InputError
from .linalg import (
    Mat,
    hermite_normal_form,
    identity,
    kernel,
    mat,
    residue_reduce,
    smith_normal_form,
    strip_zero_rows,
)
from .rings import BaseRing, Element, PrincipalIdeal


class FPModule:
    """R^n modulo the row lattice of a relation matrix, with cached normal forms."""

    def __init__(self, ring: BaseRing, ambient_rank: int, relations: Mat):
        if relations.cols != ambient_rank:
            raise InputError(
                f"relations have {relations.cols} columns, ambient rank is {ambient_rank}"
            )
        if relations.ring != ring:
            raise InputError("relation matrix ring does not match module ring")
        self.ring = ring
        self.ambient_rank = ambient_rank
        self.relations = relations
        self.rel_canonical = strip_zero_rows(hermite_normal_form(relations).H)
        self.snf = smith_normal_form(relations)
        diag = self.snf.diagonal()
        self.invariant_factors = tuple(
            d for d in diag if not ring.is_zero(d) and not ring.is_unit(d)
        )
        rank = sum(1 for d in diag if not ring.is_zero(d))
        self.free_rank = ambient_rank - rank
        if self.free_rank + len(self.invariant_factors) > ambient_rank:
            raise RuntimeError("inconsistent decomposition of relations")

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FPModule)
            and self.ring == other.ring
            and self.ambient_rank == other.ambient_rank
            and self.rel_canonical.rows == other.rel_canonical.rows
        )

    def __hash__(self):
        return hash((self.ring, self.ambient_rank, self.rel_canonical.rows))

    def __repr__(self):
        ring = self.ring
        parts = [ring.format_element(d) for d in self.invariant_factors]
        desc = " x ".join(f"R/({p})" for p in parts)
        if self.free_rank:
            desc = (desc + " x " if desc else "") + f"R^{self.free_rank}"
        return f"FPModule({desc or '0'} over {ring!r})"

    # -- structure ----------------------------------------------------------

    @property
    def is_zero_module(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def element_count(self) -> int | None:
        if not self.is_finite:
            return None
        count = 1
        for d in self.invariant_factors:
            count *= self.ring.residue_count(d)
        return count

    def annihilator(self) -> PrincipalIdeal:
        """(0 : M); zero iff the module has a free part, else the last invariant factor."""
        ring = self.ring
        if self.free_rank > 0:
            return PrincipalIdeal(ring, ring.zero())
        if self.invariant_factors:
            return PrincipalIdeal(ring, self.invariant_factors[-1])
        return PrincipalIdeal(ring, ring.one())

    def exponent(self) -> Element:
        return self.annihilator().gen

    # -- elements ------------------------------------------------------------

    def element(self, coords) -> "ModuleElement":
        tup = tuple(coords)
        if len(tup) != self.ambient_rank:
            raise InputError("coordinate length does not match ambient rank")
        return ModuleElement(self, residue_reduce(self.rel_canonical, tup))

    def zero_element(self) -> "ModuleElement":
        return self.element(tuple(self.ring.zero() for _ in range(self.ambient_rank)))

    def basis_element(self, i: int) -> "ModuleElement":
        ring = self.ring
        return self.element(
            tuple(ring.one() if j == i else ring.zero() for j in range(self.ambient_rank))
        )

    # -- submodules ------------------------------------------------------------

    def submodule(self, gens) -> "Submodule":
        if isinstance(gens, Mat):
            g = gens
        else:
            g = mat(self.ring, gens, cols=self.ambient_rank)
        if g.cols != self.ambient_rank:
            raise InputError("generator width does not match ambient rank")
        return Submodule(self, g)

    def zero_submodule(self) -> "Submodule":
        return self.submodule(mat(self.ring, [], cols=self.ambient_rank))

    def full_submodule(self) -> "Submodule":
        return self.submodule(identity(self.ring, self.ambient_rank))

    def torsion_submodule(self) -> "Submodule":
        """Elements killed by a nonzero scalar, from the Smith coordinates."""
        ring = self.ring
        diag = self.snf.diagonal()
        gens = [
            self.snf.v_inv.rows[i]
            for i, d in enumerate(diag)
            if not ring.is_zero(d)
        ]
        return self.submodule(mat(ring, gens, cols=self.ambient_rank))

    def quotient(self, sub: "Submodule") -> "QuotientPresentation":
        if sub.parent != self:
            raise InputError("submodule does not belong to this module")
        quotient = FPModule(self.ring, self.ambient_rank, sub.canonical)
        return QuotientPresentation(module=quotient, parent=self, modded=sub)

    def length_class(self) -> "LengthClass":
        finite = self.free_rank == 0
        length = None
        if finite:
            length = 0
            for d in self.invariant_factors:
                length += self.ring.factor(d).total_multiplicity()
        return LengthClass(
            finite_length=finite, length=length, noetherian=True, artinian=finite
        )


@dataclass(frozen=True)
class ModuleElement:
    """A coset representative in canonical residue form; equality is syntactic."""

    module: FPModule
    coords: tuple[Element, ...]

    def is_zero(self) -> bool:
        return all(self.module.ring.is_zero(c) for c in self.coords)

    def add(self, other: "ModuleElement") -> "ModuleElement":
        ring = self.module.ring
        return self.module.element(
            tuple(ring.add(a, b) for a, b in zip(self.coords, other.coords))
        )

    def sub(self, other: "ModuleElement") -> "ModuleElement":
        ring = self.module.ring
        return self.module.element(
            tuple(ring.sub(a, b) for a, b in zip(self.coords, other.coords))
        )

    def smul(self, r: Element) -> "ModuleElement":
        ring = self.module.ring
        return self.module.element(tuple(ring.mul(r, c) for c in self.coords))

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.sub(other)

    def __repr__(self):
        ring = self.module.ring
        return "(" + ", ".join(ring.format_element(c) for c in self.coords) + ")"


class Submodule:
    """A submodule of an FPModule, canonicalized as the HNF of generators over relations."""

    def __init__(self, parent: FPModule, gens: Mat):
        self.parent = parent
        self.gens = gens
        stacked = gens.stack(parent.rel_canonical)
        self.canonical = strip_zero_rows(hermite_normal_form(stacked).H)

    def __eq__(self, other):
        return (
            isinstance(other, Submodule)
            and self.parent == other.parent
            and self.canonical.rows == other.canonical.rows
        )

    def __hash__(self):
        return hash((self.parent, self.canonical.rows))

    def __repr__(self):
        return f"Submodule({self.canonical!r} of {self.parent!r})"

    def sort_key(self):
        ring = self.parent.ring
        return tuple(tuple(ring.sort_key(x) for x in row) for row in self.canonical.rows)

    # -- membership and comparison ------------------------------------------

    def _member(self, coords) -> bool:
        # membership in the canonical row lattice: the residue reduces to zero
        ring = self.parent.ring
        red = residue_reduce(self.canonical, coords)
        return all(ring.is_zero(x) for x in red)

    def contains(self, elem: ModuleElement) -> bool:
        if elem.module != self.parent:
            raise InputError("element does not belong to the parent module")
        return self._member(elem.coords)

    def contains_submodule(self, other: "Submodule") -> bool:
        if other.parent != self.parent:
            raise InputError("submodules live in different parents")
        return all(self._member(row) for row in other.canonical.rows)

    def is_zero(self) -> bool:
        return self.canonical.rows == self.parent.rel_canonical.rows

    def is_full(self) -> bool:
        return all(
            self.contains(self.parent.basis_element(i))
            for i in range(self.parent.ambient_rank)
        )

    def is_proper(self) -> bool:
        return not self.is_full()

    # -- lattice operations ----------------------------------------------------

    def sum(self, other: "Submodule") -> "Submodule":
        if other.parent != self.parent:
            raise InputError("submodules live in different parents")
        return Submodule(self.parent, self.gens.stack(other.gens))

    def intersect(self, other: "Submodule") -> "Submodule":
        """Syzygy method: kernel rows of the stacked canonical matrices."""
        if other.parent != self.parent:
            raise InputError("submodules live in different parents")
        ring = self.parent.ring
        c1, c2 = self.canonical, other.canonical
        ker = kernel(c1.stack(c2))
        gens = []
        for krow in ker.rows:
            vec = [ring.zero()] * self.parent.ambient_rank
            for i in range(c1.nrows):
                if not ring.is_zero(krow[i]):
                    for j in range(c1.cols):
                        vec[j] = ring.add(vec[j], ring.mul(krow[i], c1.rows[i][j]))
            gens.append(tuple(vec))
        return Submodule(self.parent, mat(ring, gens, cols=self.parent.ambient_rank))

    def __add__(self, other):
        return self.sum(other)

    def __and__(self, other):
        return self.intersect(other)

    # -- colon ideal --------------------------------------------------------------

    def colon(self) -> PrincipalIdeal:
        """(N : M) = Ann(M/N): r is in the result iff r*M lies in N."""
        return self.parent.quotient(self).module.annihilator()

    def to_json(self):
        return {"generators": self.canonical.to_json()}


@dataclass(frozen=True)
class QuotientPresentation:
    """M/N in the same ambient coordinates; the projection is the identity on rows."""

    module: FPModule
    parent: FPModule
    modded: Submodule

    def project(self, elem: ModuleElement) -> ModuleElement:
        if elem.module != self.parent:
            raise InputError("element does not belong to the quotiented module")
        return self.module.element(elem.coords)


@dataclass(frozen=True)
class LengthClass:
    finite_length: bool
    length: int | None
    noetherian: bool
    artinian: bool


def ideal_times_module(a: PrincipalIdeal, module: FPModule) -> Submodule:
    """The submodule aM, generated by a*e_i over the ambient basis."""
    ring = module.ring
    if a.ring != ring:
        raise InputError("ideal ring does not match module ring")
    if a.is_zero:
        return module.zero_submodule()
    gens = identity(ring, module.ambient_rank).scale(a.gen)
    return module.submodule(gens)


def module_from_invariants(
    ring: BaseRing, factors, free_rank: int = 0
) -> FPModule:
    """Convenience constructor: a diagonal presentation with the given torsion factors."""
    factors = [ring.normalize(d) for d in factors]
    if any(ring.is_zero(d) for d in factors):
        raise DegenerateInputError("invariant factors must be nonzero")
    n = len(factors) + free_rank
    rows = []
    for i, d in enumerate(factors):
        row = [ring.zero()] * n
        row[i] = d
        rows.append(row)
    return FPModule(ring, n, mat(ring, rows, cols=n))
