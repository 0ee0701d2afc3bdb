"""Symbolic transfer functions of RLC circuits by the direct topological method.

The denominator D is the topological determinant of the non-excited graph:

    D = sum over spanning trees T of
          prod(C*s for admittance branches in T)
        * prod(R or L*s for impedance branches outside T, looped ones included)

which is the node-admittance determinant scaled by the product of every
impedance in the graph. The numerator N is the signed sum, over the cycles
through both transmitter and receptor, of the cycle admittances times the
determinant of the graph with that cycle contracted away.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .multigraph import (
    Branch,
    BranchKind,
    GraphError,
    Multigraph,
    build_graph,
    delete_branches,
    is_connected,
    supplement,
)
from .pathfinder import Path, TransferCycle, transfer_cycles
from .symbolic import ONE, ZERO, Monomial, TopoPolynomial, poly_sum, poly_to_json


@dataclass(frozen=True)
class Circuit:
    component_branches: tuple[Branch, ...]
    transmitter: Branch
    receptor: Branch

    def __post_init__(self):
        if self.transmitter.kind is not BranchKind.TRANSMITTER:
            raise GraphError("transmitter branch must have kind 'transmitter'")
        if self.receptor.kind is not BranchKind.RECEPTOR:
            raise GraphError("receptor branch must have kind 'receptor'")
        for b in (self.transmitter, self.receptor):
            if b.is_loop:
                raise GraphError(f"{b.nature_name} must join two distinct nodes")
        for b in self.component_branches:
            if not b.kind.is_component:
                raise GraphError(f"{b.nature_name} is not an R, L or C component")
            if b.value is not None and b.value <= 0:
                raise GraphError(f"{b.nature_name} must have a positive value")

    @property
    def values(self) -> dict[str, Fraction]:
        return {b.nature_name: b.value for b in self.component_branches if b.value is not None}

    def transfer_graph(self) -> Multigraph:
        return build_graph(self.component_branches + (self.transmitter, self.receptor))


def transmitter(pos: int, neg: int, name: str = "VIN") -> Branch:
    """Voltage source branch; positive direction runs from ``neg`` to ``pos``."""
    return Branch(neg, pos, name, kind=BranchKind.TRANSMITTER, oriented=True)


def receptor(pos: int, neg: int, name: str = "OUT") -> Branch:
    """Voltage probe branch; positive direction runs from ``pos`` to ``neg``."""
    return Branch(pos, neg, name, kind=BranchKind.RECEPTOR, oriented=True)


@dataclass(frozen=True)
class TransferFunction:
    numerator: TopoPolynomial
    denominator: TopoPolynomial
    degenerate: bool = False
    cycles: tuple[TransferCycle, ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "numerator": poly_to_json(self.numerator),
            "denominator": poly_to_json(self.denominator),
            "degenerate": self.degenerate,
            "transfer_cycles": [
                {"branches": list(c.path.names), "sign": c.sign} for c in self.cycles
            ],
        }


def branch_weight(b: Branch) -> TopoPolynomial:
    """Impedance weight for Z branches, admittance weight for Y branches."""
    if b.is_impedance and b.kind is BranchKind.RESISTOR:
        return TopoPolynomial.symbol(b.nature_name)
    if b.is_impedance and b.kind is BranchKind.INDUCTOR:
        return TopoPolynomial.symbol(b.nature_name, s_power=1)
    if b.is_admittance and b.kind is BranchKind.CAPACITOR:
        return TopoPolynomial.symbol(b.nature_name, s_power=1)
    raise GraphError(
        f"no polynomial weight for {b.kind.value} {b.nature_name} in category {b.category_name!r}"
    )


def non_excited_graph(circuit: Circuit) -> Multigraph:
    """Short the transmitter (contract it) and drop the receptor (no merge)."""
    g = circuit.transfer_graph()
    return supplement(delete_branches(g, [circuit.receptor]), [circuit.transmitter])


def is_degenerate(graph: Multigraph) -> bool:
    return not is_connected(graph)


def _iter_spanning_trees(graph: Multigraph) -> Iterator[tuple[Branch, ...]]:
    edges = graph.non_looped
    n = len(graph.vertices)
    index = {v: i for i, v in enumerate(graph.labels)}

    def find(parent: list[int], x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def still_spannable(parent: list[int], start: int) -> bool:
        p = list(parent)
        roots = len({find(p, i) for i in range(n)})
        for e in edges[start:]:
            a, b = find(p, index[e.first_node]), find(p, index[e.second_node])
            if a != b:
                p[max(a, b)] = min(a, b)
                roots -= 1
                if roots == 1:
                    return True
        return roots == 1

    # deletion-contraction: each edge is either contracted into the tree or deleted
    def rec(i: int, parent: list[int], chosen: tuple[Branch, ...]):
        if len(chosen) == n - 1:
            yield chosen
            return
        if i == len(edges):
            return
        e = edges[i]
        a, b = find(parent, index[e.first_node]), find(parent, index[e.second_node])
        if a != b:
            merged = list(parent)
            merged[max(a, b)] = min(a, b)
            yield from rec(i + 1, merged, chosen + (e,))
        if still_spannable(parent, i + 1):
            yield from rec(i + 1, parent, chosen)

    if n == 0 or not is_connected(graph):
        return
    yield from rec(0, list(range(n)), ())


def spanning_trees(graph: Multigraph) -> list[tuple[Branch, ...]]:
    """All spanning trees as tuples of non-looped branches; [] if disconnected."""
    return list(_iter_spanning_trees(graph))


def determinant_terms(graph: Multigraph) -> list[Monomial]:
    """One uncollected monomial per spanning tree."""
    loop_factor = ONE
    for b in graph.looped:
        if b.is_impedance:
            loop_factor = loop_factor * branch_weight(b)
    terms = []
    for tree in _iter_spanning_trees(graph):
        in_tree = {b.nature_name for b in tree}
        term = loop_factor
        for b in graph.non_looped:
            if b.nature_name in in_tree:
                if b.is_admittance:
                    term = term * branch_weight(b)
            elif b.is_impedance:
                term = term * branch_weight(b)
        (m,) = term.monomials()
        terms.append(m)
    return terms


def determinant(graph: Multigraph) -> TopoPolynomial:
    if not graph.vertices:
        raise GraphError("determinant of an empty graph is undefined")
    if is_degenerate(graph):
        return ZERO
    return TopoPolynomial.from_monomials(determinant_terms(graph))


def cycle_value(cycle: TransferCycle | Path, transfer_graph: Multigraph, sign: int | None = None) -> TopoPolynomial:
    if isinstance(cycle, TransferCycle):
        path, sign = cycle.path, cycle.sign
    else:
        path = cycle
        if sign is None:
            raise ValueError("a bare path needs an explicit sign")
    admittances = ONE
    for b in path.branches:
        if b.kind.is_component and b.is_admittance:
            admittances = admittances * branch_weight(b)
    rest = supplement(transfer_graph, path.branches)
    return admittances * determinant(rest) * sign


def _cycles(circuit: Circuit) -> tuple[Multigraph, list[TransferCycle]]:
    tg = circuit.transfer_graph()
    return tg, transfer_cycles(tg, circuit.transmitter, circuit.receptor)


def numerator(circuit: Circuit) -> TopoPolynomial:
    tg, cycles = _cycles(circuit)
    return poly_sum(cycle_value(c, tg) for c in cycles)


def transfer_function(circuit: Circuit) -> TransferFunction:
    tg, cycles = _cycles(circuit)
    num = poly_sum(cycle_value(c, tg) for c in cycles)
    graph = non_excited_graph(circuit)
    degenerate = is_degenerate(graph)
    den = ZERO if degenerate else determinant(graph)
    return TransferFunction(num, den, degenerate, tuple(cycles))
