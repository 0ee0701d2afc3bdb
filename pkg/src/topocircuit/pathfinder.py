"""All-paths enumeration on weighted multigraphs, and the cycles built on it.

``enumerate_paths`` is a worklist search driven entirely by the
adjacency-incidence list: every branch incident to the start vertex seeds one
partial path, and partial paths are extended one hop at a time until none is
left. A partial path is accepted as soon as it reaches the end vertex, and
dropped when it revisits a vertex or stalls on a degree-1 vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .multigraph import Branch, GraphError, Multigraph, degree, delete_branches


class SameEndpointsError(GraphError):
    """Beginning node shall be different than the ending node."""

    def __init__(self, node: int):
        super().__init__(f"beginning node shall be different than the ending node (both {node})")
        self.node = node


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]
    branches: tuple[Branch, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.branches) + 1:
            raise ValueError("a path has exactly one more vertex than branches")

    @property
    def is_closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(b.nature_name for b in self.branches)

    def reversed(self) -> Path:
        return Path(self.vertices[::-1], self.branches[::-1])

    def steps(self) -> list[int | str]:
        out: list[int | str] = [self.vertices[0]]
        for b, v in zip(self.branches, self.vertices[1:]):
            out += [b.nature_name, v]
        return out

    def render(self) -> str:
        parts = [str(self.vertices[0])]
        for b, v in zip(self.branches, self.vertices[1:]):
            parts.append(f"-({b.nature_name})- {v}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class TransferCycle:
    path: Path
    sign: int

    @property
    def branches(self) -> tuple[Branch, ...]:
        return self.path.branches

    def render(self) -> str:
        return f"{'+' if self.sign > 0 else '-'} {self.path.render()}"


def _check_endpoints(graph: Multigraph, bgn: int, end: int) -> None:
    if bgn == end:
        raise SameEndpointsError(bgn)
    for v in (bgn, end):
        if v not in graph:
            raise GraphError(f"unknown vertex {v}")


def enumerate_paths(graph: Multigraph, bgn: int, end: int) -> list[Path]:
    """Return every vertex-simple path from ``bgn`` to ``end``.

    Parallel branches give distinct paths. Paths come out in discovery order
    (FIFO over the frontier, adjacency-incidence order within a vertex).
    """
    _check_endpoints(graph, bgn, end)
    adjacency = graph.adjacency_incidence
    found: list[Path] = []

    # first stage: one temporary path per branch leaving bgn
    frontier: deque[tuple[tuple[int, ...], tuple[Branch, ...]]] = deque()
    for nb, b in adjacency[bgn]:
        if nb == end:
            found.append(Path((bgn, nb), (b,)))
        elif degree(graph, nb) == 1:
            continue
        else:
            frontier.append(((bgn, nb), (b,)))

    # second stage: extend until the temporary paths run out
    while frontier:
        vertices, branches = frontier.popleft()
        for nb, b in adjacency[vertices[-1]]:
            if nb == end:
                found.append(Path(vertices + (nb,), branches + (b,)))
            elif nb in vertices:
                continue
            elif degree(graph, nb) == 1:
                continue
            else:
                frontier.append((vertices + (nb,), branches + (b,)))
    return found


def cycles_through(graph: Multigraph, g: Branch | str) -> list[Path]:
    """Simple cycles containing ``g``, each starting at g's first node and crossing g first."""
    g = graph.branch(g) if isinstance(g, str) else g
    if g.is_loop:
        raise GraphError(f"{g.nature_name} is a looped branch")
    if g not in graph.non_looped:
        raise GraphError(f"{g.nature_name} is not a branch of this graph")
    rest = delete_branches(graph, [g])
    return [
        Path((g.first_node,) + p.vertices, (g,) + p.branches)
        for p in enumerate_paths(rest, g.second_node, g.first_node)
    ]


def _crossing(cycle: Path, b: Branch) -> int:
    """+1 if the cycle crosses ``b`` from first to second node, -1 otherwise."""
    hits = [i for i, x in enumerate(cycle.branches) if x.nature_name == b.nature_name]
    if len(hits) != 1:
        raise GraphError(f"{b.nature_name} must occur exactly once in the cycle")
    i = hits[0]
    a, z = cycle.vertices[i], cycle.vertices[i + 1]
    if (a, z) == (b.first_node, b.second_node):
        return 1
    if (a, z) == (b.second_node, b.first_node):
        return -1
    raise GraphError(f"cycle step {a}->{z} does not match {b.nature_name}")


def cycle_sign(cycle: Path, g: Branch, h: Branch) -> int:
    """+1 when ``g`` and ``h`` point the same way around the cycle, else -1.

    The orientation is read from the stored endpoint order of ``g`` and ``h``
    (which may differ from the copies held in ``cycle``).
    """
    return _crossing(cycle, g) * _crossing(cycle, h)


def transfer_cycles(graph: Multigraph, g: Branch | str, h: Branch | str) -> list[TransferCycle]:
    g = graph.branch(g) if isinstance(g, str) else g
    h = graph.branch(h) if isinstance(h, str) else h
    if g.nature_name == h.nature_name:
        raise GraphError("transmitter and receptor must be distinct branches")
    if h.is_loop:
        raise GraphError(f"{h.nature_name} is a looped branch")
    out = []
    for c in cycles_through(graph, g):
        if h.nature_name in c.names:
            out.append(TransferCycle(c, cycle_sign(c, g, h)))
    return out
