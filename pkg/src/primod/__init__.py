"""Exact prime-submodule calculus for finitely presented modules over Euclidean domains.

Layers, bottom up: rings (integers and F_p[x] with ideal algebra), linalg
(Hermite/Smith normal forms and kernels), modules (finitely presented modules
and their submodule lattice operations), theory (saturations, associated prime
submodules, radicals, primary decomposition, module-class predicates), oracle
(exhaustive definitional engine for finite modules), and the check harness
that confronts the two on randomized instances.
"""

from .generate import TrialConfig, random_instance, random_module
from .linalg import Mat, hermite_normal_form, kernel, mat, smith_normal_form, solve_membership
from .modules import FPModule, ModuleElement, Submodule, ideal_times_module, module_from_invariants
from .rings import ZZ, BaseRing, GFpx, PrimeIdeal, PrincipalIdeal

__all__ = [
    "TrialConfig",
    "random_instance",
    "random_module",
    "Mat",
    "mat",
    "hermite_normal_form",
    "smith_normal_form",
    "kernel",
    "solve_membership",
    "FPModule",
    "ModuleElement",
    "Submodule",
    "ideal_times_module",
    "module_from_invariants",
    "ZZ",
    "GFpx",
    "BaseRing",
    "PrimeIdeal",
    "PrincipalIdeal",
]
