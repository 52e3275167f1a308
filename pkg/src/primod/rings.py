"""Exact arithmetic and principal-ideal algebra for the two supported Euclidean domains.

Supported rings:

* the integers, with elements stored as plain Python ``int``;
* univariate polynomials over a prime field F_p, with elements stored as
  little-endian coefficient tuples of ints in ``[0, p)`` carrying no trailing
  zero (the zero polynomial is the empty tuple).

Both representations are canonical: two ring elements are equal iff their
stored values are equal, so elements can live in sets and dict keys directly.
A ring object only dispatches operations; it holds no state beyond ``kind``
(and ``p`` for the polynomial rings).

Normalization convention for associates: non-negative for integers, monic for
polynomials.  Ideals compare equal iff their normalized generators do, with
the zero ideal represented by the zero generator.

Factorization is deliberately exhaustive (trial division; for polynomials,
division by all monic polynomials of lower degree in degree order).  Instance
sizes are capped by the callers, so correctness wins over speed here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterator

from .errors import DegenerateInputError, InputError

# A ring element is either an int (integers) or a tuple of ints (polynomials).
Element = Any


class BaseRing:
    """Common Euclidean-domain interface; see IntegerRing and PolynomialRing."""

    kind: str

    # -- basic arithmetic -------------------------------------------------

    def zero(self) -> Element:
        raise NotImplementedError

    def one(self) -> Element:
        raise NotImplementedError

    def add(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def neg(self, a: Element) -> Element:
        raise NotImplementedError

    def mul(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def divmod(self, a: Element, b: Element) -> tuple[Element, Element]:
        """Division with remainder; the remainder has smaller norm than b."""
        raise NotImplementedError

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def is_zero(self, a: Element) -> bool:
        raise NotImplementedError

    def is_unit(self, a: Element) -> bool:
        raise NotImplementedError

    def norm(self, a: Element) -> int:
        """Euclidean size used for pivoting: |a| for integers, degree for polynomials."""
        raise NotImplementedError

    def normalize(self, a: Element) -> Element:
        """The canonical associate: non-negative integer / monic polynomial."""
        raise NotImplementedError

    def unit_part(self, a: Element) -> Element:
        """The unit u with a = u * normalize(a); returns 1 for a = 0."""
        raise NotImplementedError

    def inv_unit(self, u: Element) -> Element:
        raise NotImplementedError

    # -- derived Euclidean routines ---------------------------------------

    def divides(self, a: Element, b: Element) -> bool:
        """Whether a | b; everything divides zero, zero divides only zero."""
        if self.is_zero(b):
            return True
        if self.is_zero(a):
            return False
        _, r = self.divmod(b, a)
        return self.is_zero(r)

    def exact_div(self, a: Element, b: Element) -> Element:
        q, r = self.divmod(a, b)
        if not self.is_zero(r):
            raise ArithmeticError("inexact division")
        return q

    def xgcd(self, a: Element, b: Element) -> tuple[Element, Element, Element]:
        """Extended Euclid: (g, u, v) with g = u*a + v*b and g the normalized gcd."""
        if self.is_zero(a) and self.is_zero(b):
            raise DegenerateInputError("gcd of (0, 0) is undefined")
        r0, r1 = a, b
        u0, u1 = self.one(), self.zero()
        v0, v1 = self.zero(), self.one()
        while not self.is_zero(r1):
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            u0, u1 = u1, self.sub(u0, self.mul(q, u1))
            v0, v1 = v1, self.sub(v0, self.mul(q, v1))
        w = self.inv_unit(self.unit_part(r0))
        return self.mul(w, r0), self.mul(w, u0), self.mul(w, v0)

    def gcd(self, a: Element, b: Element) -> Element:
        if self.is_zero(a) and self.is_zero(b):
            return self.zero()
        r0, r1 = a, b
        while not self.is_zero(r1):
            _, r = self.divmod(r0, r1)
            r0, r1 = r1, r
        return self.normalize(r0)

    def lcm(self, a: Element, b: Element) -> Element:
        if self.is_zero(a) or self.is_zero(b):
            return self.zero()
        return self.normalize(self.exact_div(self.mul(a, b), self.gcd(a, b)))

    # -- factorization ------------------------------------------------------

    def is_irreducible(self, a: Element) -> bool:
        raise NotImplementedError

    def factor(self, a: Element) -> "Factorization":
        """Exhaustive factorization into normalized irreducibles."""
        if self.is_zero(a):
            raise DegenerateInputError("cannot factor zero")
        unit = self.unit_part(a)
        rest = self.normalize(a)
        counts: dict[Element, int] = {}
        while not self.is_unit(rest):
            d = self._smallest_divisor(rest)
            counts[d] = counts.get(d, 0) + 1
            rest = self.exact_div(rest, d)
        factors = tuple(sorted(counts.items(), key=lambda kv: self.sort_key(kv[0])))
        return Factorization(ring=self, unit=unit, factors=factors)

    def _smallest_divisor(self, a: Element) -> Element:
        """Smallest-norm nontrivial normalized divisor of a non-unit a (a itself if irreducible)."""
        raise NotImplementedError

    def radical_of(self, a: Element) -> Element:
        """Product of the distinct irreducible factors of a; radical of 0 is 0."""
        if self.is_zero(a):
            return self.zero()
        result = self.one()
        for q, _ in self.factor(a).factors:
            result = self.mul(result, q)
        return self.normalize(result)

    # -- residues and ordering ---------------------------------------------

    def residues(self, m: Element) -> Iterator[Element]:
        """Canonical residue system modulo a nonzero m (the HNF residue range)."""
        raise NotImplementedError

    def iter_irreducibles(self) -> Iterator[Element]:
        """Normalized irreducibles in increasing norm order, endlessly."""
        raise NotImplementedError

    def residue_count(self, m: Element) -> int:
        raise NotImplementedError

    def reduce_mod(self, a: Element, m: Element) -> Element:
        """Canonical representative of a modulo nonzero m."""
        _, r = self.divmod(a, self.normalize(m))
        return r

    def sort_key(self, a: Element):
        """Total order: zero first, then magnitude/degree, then coefficients."""
        raise NotImplementedError

    # -- serialization -------------------------------------------------------

    def ser_element(self, a: Element):
        raise NotImplementedError

    def de_element(self, data) -> Element:
        raise NotImplementedError

    def format_element(self, a: Element) -> str:
        raise NotImplementedError

    def ser_ring(self) -> dict:
        raise NotImplementedError


class IntegerRing(BaseRing):
    kind = "int"

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def divmod(self, a, b):
        # Python floor division: remainder norm < |b| for either sign of b.
        return divmod(a, b)

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def norm(self, a):
        return abs(a)

    def normalize(self, a):
        return abs(a)

    def unit_part(self, a):
        return -1 if a < 0 else 1

    def inv_unit(self, u):
        return u

    def is_irreducible(self, a):
        n = abs(a)
        if n < 2:
            return False
        d = 2
        while d * d <= n:
            if n % d == 0:
                return False
            d += 1
        return True

    def _smallest_divisor(self, a):
        n = abs(a)
        d = 2
        while d * d <= n:
            if n % d == 0:
                return d
            d += 1
        return n

    def residues(self, m):
        return iter(range(abs(m)))

    def iter_irreducibles(self):
        n = 2
        while True:
            if self.is_irreducible(n):
                yield n
            n += 1

    def residue_count(self, m):
        return abs(m)

    def sort_key(self, a):
        if a == 0:
            return (0, 0, ())
        return (1, abs(a), (a,))

    def ser_element(self, a):
        return str(a)

    def de_element(self, data):
        if isinstance(data, bool) or not isinstance(data, (int, str)):
            raise InputError(f"not an integer element: {data!r}")
        try:
            return int(data)
        except ValueError as exc:
            raise InputError(f"not an integer element: {data!r}") from exc

    def format_element(self, a):
        return str(a)

    def ser_ring(self):
        return {"kind": "int"}

    def __repr__(self):
        return "ZZ"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("int")


class PolynomialRing(BaseRing):
    """Univariate polynomials over F_p, as little-endian coefficient tuples."""

    kind = "polyFp"

    def __init__(self, p: int):
        if p < 2 or not IntegerRing().is_irreducible(p):
            raise InputError(f"characteristic must be prime, got {p}")
        self.p = p

    def poly(self, coeffs) -> tuple[int, ...]:
        """Build a canonical element from any iterable of integer coefficients."""
        c = [x % self.p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def zero(self):
        return ()

    def one(self):
        return (1,)

    def constant(self, c: int):
        return self.poly([c])

    def variable(self):
        return self.poly([0, 1])

    def degree(self, a) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(a) - 1

    def add(self, a, b):
        n = max(len(a), len(b))
        return self.poly(
            ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) for i in range(n)
        )

    def neg(self, a):
        return tuple((-c) % self.p for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        prod = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    prod[i + j] += ca * cb
        return self.poly(prod)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        inv_lead = pow(b[-1], p - 2, p)
        rem = list(a)
        quo = [0] * max(len(a) - len(b) + 1, 0)
        while len(rem) >= len(b):
            if rem[-1] == 0:
                rem.pop()
                continue
            shift = len(rem) - len(b)
            c = (rem[-1] * inv_lead) % p
            quo[shift] = c
            for i, cb in enumerate(b):
                rem[shift + i] = (rem[shift + i] - c * cb) % p
            while rem and rem[-1] == 0:
                rem.pop()
        return self.poly(quo), tuple(rem)

    def is_zero(self, a):
        return not a

    def is_unit(self, a):
        return len(a) == 1

    def norm(self, a):
        # Degree shifted so the zero polynomial sits below all units.
        return len(a)

    def normalize(self, a):
        if not a:
            return ()
        inv_lead = pow(a[-1], self.p - 2, self.p)
        return tuple((c * inv_lead) % self.p for c in a)

    def unit_part(self, a):
        if not a:
            return (1,)
        return (a[-1],)

    def inv_unit(self, u):
        return (pow(u[0], self.p - 2, self.p),)

    def is_irreducible(self, a):
        deg = len(a) - 1
        if deg < 1:
            return False
        for d in range(1, deg // 2 + 1):
            for cand in self._monic_of_degree(d):
                _, r = self.divmod(a, cand)
                if not r:
                    return False
        return True

    def _monic_of_degree(self, d: int) -> Iterator[tuple[int, ...]]:
        for lower in itertools.product(range(self.p), repeat=d):
            yield lower + (1,)

    def _smallest_divisor(self, a):
        deg = len(a) - 1
        for d in range(1, deg // 2 + 1):
            for cand in self._monic_of_degree(d):
                _, r = self.divmod(a, cand)
                if not r:
                    return cand
        return self.normalize(a)

    def residues(self, m):
        deg = len(m) - 1
        if deg <= 0:
            yield ()
            return
        for coeffs in itertools.product(range(self.p), repeat=deg):
            yield self.poly(coeffs)

    def iter_irreducibles(self):
        degree = 1
        while True:
            for cand in self._monic_of_degree(degree):
                if self.is_irreducible(cand):
                    yield cand
            degree += 1

    def residue_count(self, m):
        deg = len(m) - 1
        return 1 if deg <= 0 else self.p ** deg

    def sort_key(self, a):
        if not a:
            return (0, 0, ())
        return (1, len(a) - 1, tuple(reversed(a)))

    def ser_element(self, a):
        return list(a)

    def de_element(self, data):
        if not isinstance(data, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in data
        ):
            raise InputError(f"not a polynomial element: {data!r}")
        return self.poly(data)

    def format_element(self, a):
        if not a:
            return "0"
        parts = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                x = "x" if i == 1 else f"x^{i}"
                parts.append(x if c == 1 else f"{c}{x}")
        return "+".join(parts)

    def ser_ring(self):
        return {"kind": "polyFp", "p": self.p}

    def __repr__(self):
        return f"GF({self.p})[x]"

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.p == self.p

    def __hash__(self):
        return hash(("polyFp", self.p))


ZZ = IntegerRing()


@lru_cache(maxsize=None)
def GFpx(p: int) -> PolynomialRing:
    return PolynomialRing(p)


def ring_from_json(data: dict) -> BaseRing:
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError(f"not a ring description: {data!r}")
    if data["kind"] == "int":
        return ZZ
    if data["kind"] == "polyFp":
        if "p" not in data:
            raise InputError("polyFp ring needs a characteristic p")
        return GFpx(int(data["p"]))
    raise InputError(f"unknown ring kind {data['kind']!r}")


@dataclass(frozen=True)
class Factorization:
    """unit * product(q^e) == the factored element; factors sorted and distinct."""

    ring: BaseRing
    unit: Element
    factors: tuple[tuple[Element, int], ...]

    def value(self) -> Element:
        result = self.unit
        for q, e in self.factors:
            for _ in range(e):
                result = self.ring.mul(result, q)
        return result

    def as_dict(self) -> dict[Element, int]:
        return dict(self.factors)

    def distinct_primes(self) -> tuple[Element, ...]:
        return tuple(q for q, _ in self.factors)

    def total_multiplicity(self) -> int:
        return sum(e for _, e in self.factors)


@dataclass(frozen=True, eq=False)
class PrincipalIdeal:
    """An ideal (g) of the ring, stored by its normalized generator."""

    ring: BaseRing
    gen: Element

    def __post_init__(self):
        object.__setattr__(self, "gen", self.ring.normalize(self.gen))

    # PrimeIdeal values must compare equal to equal PrincipalIdeal values,
    # so equality is by (ring, generator) regardless of the concrete class.
    def __eq__(self, other):
        if not isinstance(other, PrincipalIdeal):
            return NotImplemented
        return self.ring == other.ring and self.gen == other.gen

    def __hash__(self):
        return hash((self.ring, self.gen))

    @property
    def is_zero(self) -> bool:
        return self.ring.is_zero(self.gen)

    @property
    def is_unit_ideal(self) -> bool:
        return self.ring.is_unit(self.gen)

    def is_prime(self) -> bool:
        """Zero ideal of a domain, or generated by an irreducible."""
        return self.is_zero or self.ring.is_irreducible(self.gen)

    def contains(self, a: Element) -> bool:
        return self.ring.divides(self.gen, a)

    def contains_ideal(self, other: "PrincipalIdeal") -> bool:
        return self.contains(other.gen)

    def product(self, other: "PrincipalIdeal") -> "PrincipalIdeal":
        return PrincipalIdeal(self.ring, self.ring.mul(self.gen, other.gen))

    def plus(self, other: "PrincipalIdeal") -> "PrincipalIdeal":
        """Ideal sum: the gcd of the generators."""
        if self.is_zero and other.is_zero:
            return PrincipalIdeal(self.ring, self.ring.zero())
        return PrincipalIdeal(self.ring, self.ring.gcd(self.gen, other.gen))

    def intersect(self, other: "PrincipalIdeal") -> "PrincipalIdeal":
        """Ideal intersection: the lcm of the generators."""
        return PrincipalIdeal(self.ring, self.ring.lcm(self.gen, other.gen))

    def radical(self) -> "PrincipalIdeal":
        """Product of distinct irreducible factors; radical of (0) is (0)."""
        return PrincipalIdeal(self.ring, self.ring.radical_of(self.gen))

    def sort_key(self):
        return self.ring.sort_key(self.gen)

    def to_json(self):
        if self.is_zero:
            return {"zero": True}
        return {"gen": self.ring.ser_element(self.gen)}

    def __repr__(self):
        return f"({self.ring.format_element(self.gen)})"


class PrimeIdeal(PrincipalIdeal):
    """A prime ideal: the zero ideal, or generated by a normalized irreducible."""

    def __post_init__(self):
        super().__post_init__()
        if not (self.ring.is_zero(self.gen) or self.ring.is_irreducible(self.gen)):
            raise InputError(
                f"({self.ring.format_element(self.gen)}) is not a prime ideal"
            )
