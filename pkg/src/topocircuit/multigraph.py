"""Labeled, weighted topological multigraphs.

A graph keeps its vertices, its non-looped and looped branches in separate
ordered lists, and an adjacency-incidence list mapping every vertex to the
``(neighbor, branch)`` pairs of its non-looped incident branches.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph queries."""


class BranchKind(str, enum.Enum):
    RESISTOR = "resistor"
    INDUCTOR = "inductor"
    CAPACITOR = "capacitor"
    TRANSMITTER = "transmitter"
    RECEPTOR = "receptor"

    @property
    def is_component(self) -> bool:
        return self in (BranchKind.RESISTOR, BranchKind.INDUCTOR, BranchKind.CAPACITOR)


@dataclass(frozen=True)
class Branch:
    first_node: int
    second_node: int
    nature_name: str
    category_name: str = ""
    kind: BranchKind = BranchKind.RESISTOR
    value: Fraction | None = None
    oriented: bool = False

    @property
    def is_loop(self) -> bool:
        return self.first_node == self.second_node

    @property
    def is_admittance(self) -> bool:
        return self.category_name.startswith("Y")

    @property
    def is_impedance(self) -> bool:
        return self.category_name.startswith("Z")

    def other_end(self, v: int) -> int:
        if v == self.first_node:
            return self.second_node
        if v == self.second_node:
            return self.first_node
        raise GraphError(f"vertex {v} is not an endpoint of {self.nature_name}")

    def reversed(self) -> Branch:
        return replace(self, first_node=self.second_node, second_node=self.first_node)


@dataclass(frozen=True)
class VertexRecord:
    label: int
    degree: int


@dataclass(frozen=True)
class Multigraph:
    vertices: tuple[VertexRecord, ...]
    non_looped: tuple[Branch, ...]
    looped: tuple[Branch, ...]
    adjacency_incidence: Mapping[int, tuple[tuple[int, Branch], ...]] = field(repr=False)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(v.label for v in self.vertices)

    @property
    def branches(self) -> tuple[Branch, ...]:
        return self.non_looped + self.looped

    def branch(self, name: str) -> Branch:
        for b in self.branches:
            if b.nature_name == name:
                return b
        raise GraphError(f"no branch named {name!r}")

    def __contains__(self, v: object) -> bool:
        return v in self.adjacency_incidence


def build_graph(branches: Iterable[Branch], extra_vertices: Iterable[int] = ()) -> Multigraph:
    """Build a multigraph from ``branches``.

    The vertex set is every branch endpoint plus ``extra_vertices`` (which
    lets callers keep vertices that lost all their branches), listed in
    ascending label order.
    """
    branches = tuple(branches)
    seen: set[str] = set()
    for b in branches:
        if b.nature_name in seen:
            raise GraphError(f"duplicate branch name {b.nature_name!r}")
        seen.add(b.nature_name)

    labels = set(extra_vertices)
    for b in branches:
        labels.add(b.first_node)
        labels.add(b.second_node)

    non_looped = tuple(b for b in branches if not b.is_loop)
    looped = tuple(b for b in branches if b.is_loop)

    adjacency: dict[int, list[tuple[int, Branch]]] = {v: [] for v in sorted(labels)}
    for b in non_looped:
        adjacency[b.first_node].append((b.second_node, b))
        adjacency[b.second_node].append((b.first_node, b))

    vertices = tuple(VertexRecord(v, len(adjacency[v])) for v in sorted(labels))
    return Multigraph(
        vertices=vertices,
        non_looped=non_looped,
        looped=looped,
        # neighbor label first, then branch insertion order (sort is stable)
        adjacency_incidence={v: tuple(sorted(e, key=lambda x: x[0])) for v, e in adjacency.items()},
    )


def adjacency_incidence(graph: Multigraph) -> Mapping[int, tuple[tuple[int, Branch], ...]]:
    return graph.adjacency_incidence


def degree(graph: Multigraph, v: int) -> int:
    try:
        return len(graph.adjacency_incidence[v])
    except KeyError:
        raise GraphError(f"unknown vertex {v}") from None


def _branch_names(graph: Multigraph, removed: Iterable[Branch | str]) -> set[str]:
    names = {b.nature_name if isinstance(b, Branch) else b for b in removed}
    known = {b.nature_name for b in graph.branches}
    missing = sorted(names - known)
    if missing:
        raise GraphError(f"branches not in graph: {', '.join(missing)}")
    return names


def delete_branches(graph: Multigraph, removed: Iterable[Branch | str]) -> Multigraph:
    """Remove branches without merging their endpoints; every vertex is kept."""
    names = _branch_names(graph, removed)
    kept = [b for b in graph.branches if b.nature_name not in names]
    return build_graph(kept, extra_vertices=graph.labels)


def supplement(graph: Multigraph, removed: Iterable[Branch | str]) -> Multigraph:
    """Delete ``removed`` and merge the endpoints of each deleted branch.

    Merging is transitive; a merged vertex takes the smallest constituent
    label. Surviving branches whose endpoints coincide afterwards are moved
    to the looped list.
    """
    names = _branch_names(graph, removed)
    parent = {v: v for v in graph.labels}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for b in graph.branches:
        if b.nature_name in names:
            ra, rb = find(b.first_node), find(b.second_node)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    survivors = []
    newly_looped = []
    for b in graph.non_looped:
        if b.nature_name in names:
            continue
        moved = replace(b, first_node=find(b.first_node), second_node=find(b.second_node))
        (newly_looped if moved.is_loop else survivors).append(moved)
    loops = [
        replace(b, first_node=find(b.first_node), second_node=find(b.first_node))
        for b in graph.looped
        if b.nature_name not in names
    ]
    return build_graph(
        survivors + loops + newly_looped,
        extra_vertices={find(v) for v in graph.labels},
    )


def components(graph: Multigraph) -> list[set[int]]:
    """Vertex sets of the connected components, ordered by smallest label."""
    parent = {v: v for v in graph.labels}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for b in graph.non_looped:
        ra, rb = find(b.first_node), find(b.second_node)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    groups: dict[int, set[int]] = {}
    for v in graph.labels:
        groups.setdefault(find(v), set()).add(v)
    return [groups[k] for k in sorted(groups)]


def is_connected(graph: Multigraph) -> bool:
    if not graph.vertices:
        raise GraphError("connectivity of an empty graph is undefined")
    return len(components(graph)) == 1
