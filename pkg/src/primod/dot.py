"""DOT rendering of the submodule lattice of a finite module.

Nodes are submodules, edges are covering relations.  Prime submodules get a
doubled border, associated prime submodules are additionally filled, and the
radical of zero is flagged in its label.
"""

from __future__ import annotations

from . import oracle, theory
from .modules import FPModule


def _label(table: oracle.FiniteModuleTable, members: frozenset[int]) -> str:
    if len(members) == 1:
        return "0"
    if members == table.full_set:
        return f"M ({len(members)})"
    if len(table.elements) <= 16:
        ring = table.ring
        elems = ",".join(
            "(" + ",".join(ring.format_element(c) for c in table.elements[i]) + ")"
            for i in sorted(members)
        )
        return f"{{{elems}}}"
    return f"|N|={len(members)}"


def emit_lattice(module: FPModule) -> str:
    """DOT digraph of the submodule lattice; raises on infinite modules."""
    table = oracle.FiniteModuleTable(module)
    lattice = oracle.enumerate_submodules(table)
    members = list(lattice.members)
    prime_sets = {members_: p for members_, p in oracle.prime_submodules(lattice)}
    ass_p_sets = {
        table.set_of_submodule(s)
        for s in theory.associated_prime_submodules(module).submodules
    }
    rad0 = table.set_of_submodule(theory.submodule_radical(module.zero_submodule()))

    index = {s: i for i, s in enumerate(members)}
    lines = ["digraph submodule_lattice {", "  rankdir=BT;", '  node [shape=box];']
    for s in members:
        attrs = []
        label = _label(table, s)
        if s == rad0:
            label += "  rad(0)"
        if s in prime_sets:
            attrs.append("peripheries=2")
            label += f"  prime {prime_sets[s]}"
        if s in ass_p_sets:
            attrs.append('style=filled fillcolor="lightgrey"')
        attrs.insert(0, f'label="{label}"')
        lines.append(f"  n{index[s]} [{' '.join(attrs)}];")
    # covering relations: s < t with nothing strictly between
    for s in members:
        for t in members:
            if s < t and not any(s < u < t for u in members):
                lines.append(f"  n{index[s]} -> n{index[t]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
