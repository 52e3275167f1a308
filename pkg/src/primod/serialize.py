"""JSON wire formats for rings, matrices, modules, submodules, and reports.

Integers serialize as decimal strings (arbitrary precision survives any JSON
parser), polynomials as little-endian coefficient arrays reduced mod p.
Matrices are arrays of rows of element serializations; an empty matrix is an
empty array, so the surrounding object must supply the width (the module's
ambient rank).
"""

from __future__ import annotations

from .errors import InputError
from .linalg import Mat, mat
from .modules import FPModule, Submodule
from .rings import BaseRing, PrimeIdeal, PrincipalIdeal, ring_from_json


def ser_matrix(m: Mat):
    return m.to_json()


def de_matrix(ring: BaseRing, data, cols: int) -> Mat:
    if not isinstance(data, list):
        raise InputError(f"not a matrix: {data!r}")
    rows = []
    for row in data:
        if not isinstance(row, list) or len(row) != cols:
            raise InputError(f"matrix row {row!r} does not have width {cols}")
        rows.append(tuple(ring.de_element(x) for x in row))
    return mat(ring, rows, cols=cols)


def ser_module(module: FPModule):
    return {
        "ring": module.ring.ser_ring(),
        "ambient_rank": module.ambient_rank,
        "relations": ser_matrix(module.relations),
    }


def de_module(data) -> FPModule:
    if not isinstance(data, dict):
        raise InputError(f"not a module description: {data!r}")
    for key in ("ring", "ambient_rank", "relations"):
        if key not in data:
            raise InputError(f"module description is missing {key!r}")
    ring = ring_from_json(data["ring"])
    n = data["ambient_rank"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InputError(f"ambient_rank must be a non-negative integer, got {n!r}")
    relations = de_matrix(ring, data["relations"], cols=n)
    return FPModule(ring, n, relations)


def ser_submodule(sub: Submodule):
    return {"generators": ser_matrix(sub.canonical)}


def de_submodule(module: FPModule, data) -> Submodule:
    if not isinstance(data, dict) or "generators" not in data:
        raise InputError(f"not a submodule description: {data!r}")
    gens = de_matrix(module.ring, data["generators"], cols=module.ambient_rank)
    return module.submodule(gens)


def ser_ideal(ideal: PrincipalIdeal):
    return ideal.to_json()


def de_ideal(ring: BaseRing, data) -> PrincipalIdeal:
    if isinstance(data, dict) and data.get("zero"):
        return PrincipalIdeal(ring, ring.zero())
    if isinstance(data, dict) and "gen" in data:
        return PrincipalIdeal(ring, ring.de_element(data["gen"]))
    raise InputError(f"not an ideal description: {data!r}")


def de_prime(ring: BaseRing, data) -> PrimeIdeal:
    ideal = de_ideal(ring, data)
    return PrimeIdeal(ring, ideal.gen)


def ser_element_vector(ring: BaseRing, coords):
    return [ring.ser_element(x) for x in coords]


def de_element_vector(ring: BaseRing, data, length: int):
    if not isinstance(data, list) or len(data) != length:
        raise InputError(f"element vector {data!r} does not have length {length}")
    return tuple(ring.de_element(x) for x in data)
