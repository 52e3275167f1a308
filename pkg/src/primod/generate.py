"""Deterministic random instance generation for the check harness.

Every instance is a pure function of (seed, index): the per-trial generator is
seeded with seed + index, so trials can be evaluated independently and in any
order (or in parallel) without changing the corpus.

The draw targets a fixed category mix: roughly 40% finite cyclic modules
(these are the multiplication instances), 30% finite non-cyclic, 30% with a
free part.  A presentation is assembled from a divisibility chain of invariant
factors on a diagonal, optionally padded with unit relations, and then
scrambled by small unimodular row and column operations; ops that would blow
the entry-size budget are skipped, which keeps finite orders at or below
max_order by construction.  Polynomial instances are restricted to p in {2, 3}
with relation entries of degree at most 3.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .linalg import mat
from .modules import FPModule
from .rings import ZZ, BaseRing, GFpx

CATEGORY_CYCLIC = "finite-cyclic"
CATEGORY_NONCYCLIC = "finite-noncyclic"
CATEGORY_FREE = "free-part"

INT_ENTRY_BOUND = 4096
POLY_DEGREE_BOUND = 3


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 42
    trials: int = 200
    max_order: int = 512
    max_rank: int = 3
    int_weight: float = 0.6
    checks: frozenset[str] | None = None  # None means every registered check

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.max_order < 2 or self.max_rank < 1:
            raise ValueError("caps are too small to generate instances")
        if self.max_order > 512:
            raise ValueError("max_order exceeds the oracle's element-table cap (512)")


@dataclass(frozen=True)
class Instance:
    index: int
    category: str
    module: FPModule


def _draw_ring(rng: random.Random, config: TrialConfig) -> BaseRing:
    if rng.random() < config.int_weight:
        return ZZ
    return GFpx(rng.choice([2, 3]))


def _random_factor(rng: random.Random, ring: BaseRing, budget: int):
    """A random nonzero non-unit d with |R/(d)| <= budget, or None."""
    if ring is ZZ:
        if budget < 2:
            return None
        hi = budget if rng.random() < 0.25 else min(36, budget)
        return rng.randint(2, max(2, hi))
    p = ring.p
    max_deg = 0
    size = p
    while size <= budget and max_deg < POLY_DEGREE_BOUND:
        max_deg += 1
        size *= p
    if max_deg < 1:
        return None
    deg = rng.randint(1, max_deg)
    coeffs = [rng.randrange(p) for _ in range(deg)] + [1]
    return ring.poly(coeffs)


def _chain_multiplier(rng: random.Random, ring: BaseRing, current, budget: int):
    """A multiplier m (possibly 1) with |R/(current*m)| within budget and degree caps."""
    if ring is ZZ:
        room = budget // current
        if room < 2:
            return ring.one()
        return rng.randint(1, min(4, room))
    p = ring.p
    cur_deg = len(current) - 1
    room_deg = 0
    size = ring.residue_count(current) * p
    while size <= budget and cur_deg + room_deg < POLY_DEGREE_BOUND:
        room_deg += 1
        size *= p
    deg = rng.randint(0, room_deg)
    if deg == 0:
        return ring.one()
    return ring.poly([rng.randrange(p) for _ in range(deg)] + [1])


def _invariant_chain(rng: random.Random, ring: BaseRing, count: int, budget: int):
    """A divisibility chain d_1 | ... | d_k with the product of sizes within budget."""
    if count == 0:
        return []
    first_budget = budget
    if count > 1:
        # leave room for the later factors, which are at least as large
        first_budget = max(2, math.isqrt(budget))
    first = _random_factor(rng, ring, first_budget)
    if first is None:
        return []
    chain = [first]
    remaining = budget // ring.residue_count(first)
    while len(chain) < count:
        if ring.residue_count(chain[-1]) > remaining:
            break
        m = _chain_multiplier(rng, ring, chain[-1], remaining)
        nxt = ring.normalize(ring.mul(chain[-1], m))
        size = ring.residue_count(nxt)
        if size > remaining:
            break
        chain.append(nxt)
        remaining //= size
    return chain


def _entry_ok(ring: BaseRing, x) -> bool:
    if ring is ZZ:
        return abs(x) <= INT_ENTRY_BOUND
    return len(x) - 1 <= POLY_DEGREE_BOUND


def _scramble(rng: random.Random, ring: BaseRing, rows: list[list]):
    """Random transvections on rows and columns, skipping ops that blow the size budget."""
    if not rows:
        return rows
    n = len(rows[0])
    if ring is ZZ:
        coeffs = [1, -1, 2, -2]
    else:
        coeffs = [ring.one(), ring.poly([0, 1]), ring.poly([1, 1])]
    for _ in range(rng.randint(0, 4)):
        c = rng.choice(coeffs)
        if rng.random() < 0.5 and len(rows) >= 2:
            i, j = rng.sample(range(len(rows)), 2)
            cand = [ring.add(rows[i][k], ring.mul(c, rows[j][k])) for k in range(n)]
            if all(_entry_ok(ring, x) for x in cand):
                rows[i] = cand
        elif n >= 2:
            i, j = rng.sample(range(n), 2)
            ok = True
            cand_col = []
            for row in rows:
                x = ring.add(row[i], ring.mul(c, row[j]))
                if not _entry_ok(ring, x):
                    ok = False
                    break
                cand_col.append(x)
            if ok:
                for row, x in zip(rows, cand_col):
                    row[i] = x
    rng.shuffle(rows)
    return rows


def random_instance(config: TrialConfig, index: int) -> Instance:
    rng = random.Random(config.seed + index)
    ring = _draw_ring(rng, config)
    u = rng.random()
    if u < 0.4:
        category = CATEGORY_CYCLIC
    elif u < 0.7:
        category = CATEGORY_NONCYCLIC
    else:
        category = CATEGORY_FREE

    if category == CATEGORY_CYCLIC:
        torsion_count, free_rank = 1, 0
    elif category == CATEGORY_NONCYCLIC:
        torsion_count = rng.randint(2, max(2, config.max_rank))
        free_rank = 0
    else:
        free_rank = rng.randint(1, config.max_rank)
        torsion_count = rng.randint(0, config.max_rank - free_rank)

    chain = _invariant_chain(rng, ring, torsion_count, config.max_order)
    if category == CATEGORY_NONCYCLIC and len(chain) < 2:
        # budget too tight for the drawn sizes: fall back to the smallest pair
        small = 2 if ring is ZZ else ring.poly([0, 1])
        chain = [small, small]
    if category == CATEGORY_CYCLIC and not chain:
        chain = [2 if ring is ZZ else ring.poly([0, 1])]

    n = len(chain) + free_rank
    pad = 1 if n < config.max_rank and rng.random() < 0.3 else 0
    n += pad

    rows: list[list] = []
    for i, d in enumerate(chain):
        row = [ring.zero()] * n
        row[i] = d
        rows.append(row)
    for i in range(pad):
        row = [ring.zero()] * n
        row[len(chain) + free_rank + i] = ring.one()
        rows.append(row)
    if rows and rng.random() < 0.25:
        # a redundant relation exercises non-minimal presentations
        extra = [ring.zero()] * n
        for row in rng.sample(rows, min(2, len(rows))):
            for k in range(n):
                extra[k] = ring.add(extra[k], row[k])
        rows.append(extra)
    rows = _scramble(rng, ring, rows)

    module = FPModule(ring, n, mat(ring, rows, cols=n))
    if module.is_finite and module.element_count() > config.max_order:
        raise RuntimeError("generated instance exceeds the order cap")
    return Instance(index=index, category=category, module=module)


def random_module(config: TrialConfig, index: int) -> FPModule:
    return random_instance(config, index).module
