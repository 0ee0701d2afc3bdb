"""Independent checks for the topological results.

None of these share code paths with the enumerators they check: the MNA
solver works on node equations, ``brute_paths`` scans the raw branch list
with no pruning, and ``tree_count`` is the Kirchhoff cofactor of the
Laplacian.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dtm import Circuit, TransferFunction, transfer_function
from .multigraph import Branch, BranchKind, GraphError, Multigraph
from .pathfinder import Path, SameEndpointsError
from .symbolic import poly_eval, poly_scale

RESIDUAL_TOL = 1e-10
POLE_SKIP = 1e-3
MATCH_TOL = 1e-9


class OracleError(RuntimeError):
    """The oracle could not produce an answer (e.g. singular system)."""


def _admittance(b: Branch, s: complex) -> complex:
    v = float(b.value)
    if b.kind is BranchKind.RESISTOR:
        return 1.0 / v
    if b.kind is BranchKind.INDUCTOR:
        return 1.0 / (v * s)
    if b.kind is BranchKind.CAPACITOR:
        return v * s
    raise OracleError(f"cannot stamp {b.kind.value} {b.nature_name}")


def _floating_nodes(circuit: Circuit, nodes: list[int], ref: int) -> list[int]:
    links: dict[int, set[int]] = {n: set() for n in nodes}
    for b in circuit.component_branches + (circuit.transmitter,):
        links[b.first_node].add(b.second_node)
        links[b.second_node].add(b.first_node)
    seen, stack = {ref}, [ref]
    while stack:
        for m in links[stack.pop()]:
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return [n for n in nodes if n not in seen]


def mna_system(circuit: Circuit, s: complex) -> tuple[np.ndarray, np.ndarray, dict[int, int]]:
    """Assemble ``A x = b`` for a 1 V transmitter; returns (A, b, node -> row)."""
    g = circuit.transmitter
    nodes = sorted(
        {n for b in circuit.component_branches + (g, circuit.receptor) for n in (b.first_node, b.second_node)}
    )
    ref = 0 if 0 in nodes else nodes[0]
    row = {n: i for i, n in enumerate(n for n in nodes if n != ref)}
    size = len(row) + 1
    A = np.zeros((size, size), dtype=complex)
    rhs = np.zeros(size, dtype=complex)

    for b in circuit.component_branches:
        y = _admittance(b, s)
        i, j = row.get(b.first_node), row.get(b.second_node)
        if i is not None:
            A[i, i] += y
        if j is not None:
            A[j, j] += y
        if i is not None and j is not None:
            A[i, j] -= y
            A[j, i] -= y

    # transmitter: stored (n-, n+); source current k enters n+
    k = size - 1
    pos, neg = row.get(g.second_node), row.get(g.first_node)
    if pos is not None:
        A[pos, k] -= 1
        A[k, pos] += 1
    if neg is not None:
        A[neg, k] += 1
        A[k, neg] -= 1
    rhs[k] = 1.0
    return A, rhs, row


def mna_transfer(circuit: Circuit, s: complex) -> complex:
    """V(out+) - V(out-) when the transmitter is an ideal 1 V source."""
    if s == 0:
        raise OracleError("s must be nonzero")
    g = circuit.transmitter
    nodes = sorted(
        {n for b in circuit.component_branches + (g, circuit.receptor) for n in (b.first_node, b.second_node)}
    )
    ref = 0 if 0 in nodes else nodes[0]
    floating = _floating_nodes(circuit, nodes, ref)
    if floating:
        raise OracleError(f"singular system: nodes {floating} float with the source shorted")

    A, rhs, row = mna_system(circuit, s)
    try:
        x = np.linalg.solve(A, rhs)
        x = x + np.linalg.solve(A, rhs - A @ x)  # one step of iterative refinement
    except np.linalg.LinAlgError as exc:
        raise OracleError(f"singular system at s={s}") from exc
    residual = np.linalg.norm(A @ x - rhs)
    if not np.all(np.isfinite(x)) or residual > RESIDUAL_TOL * np.linalg.norm(rhs):
        raise OracleError(f"unreliable solution at s={s} (residual {residual:.3g})")

    def volt(n: int) -> complex:
        return 0j if n == ref else complex(x[row[n]])

    h = circuit.receptor
    return volt(h.first_node) - volt(h.second_node)


def brute_paths(graph: Multigraph, bgn: int, end: int) -> list[Path]:
    """Exhaustive depth-first listing of vertex-simple paths, no pruning."""
    if bgn == end:
        raise SameEndpointsError(bgn)
    labels = set(graph.labels)
    if bgn not in labels or end not in labels:
        raise GraphError("unknown vertex")
    out: list[Path] = []

    def walk(vertices: list[int], branches: list[Branch]) -> None:
        here = vertices[-1]
        if here == end:
            out.append(Path(tuple(vertices), tuple(branches)))
            return
        for b in graph.non_looped:
            if here not in (b.first_node, b.second_node):
                continue
            nxt = b.second_node if b.first_node == here else b.first_node
            if nxt in vertices:
                continue
            walk(vertices + [nxt], branches + [b])

    walk([bgn], [])
    return out


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def tree_count(graph: Multigraph) -> int:
    """Number of spanning trees: any cofactor of the multigraph Laplacian."""
    labels = list(graph.labels)
    if not labels:
        raise GraphError("tree count of an empty graph is undefined")
    idx = {v: i for i, v in enumerate(labels)}
    n = len(labels)
    lap = [[0] * n for _ in range(n)]
    for b in graph.non_looped:
        i, j = idx[b.first_node], idx[b.second_node]
        lap[i][i] += 1
        lap[j][j] += 1
        lap[i][j] -= 1
        lap[j][i] -= 1
    minor = [row[1:] for row in lap[1:]]
    return _bareiss_det(minor)


def relative_error(got: complex, want: complex) -> float:
    return abs(got - want) / max(1.0, abs(want))


def log_frequencies(lo: float = 1e0, hi: float = 1e8, count: int = 16) -> list[float]:
    return [float(w) for w in np.logspace(np.log10(lo), np.log10(hi), count)]


@dataclass
class FrequencyCheck:
    omega: float
    dtm: complex | None
    mna: complex | None
    error: float | None
    skipped: str | None = None


@dataclass
class Verification:
    checks: list[FrequencyCheck] = field(default_factory=list)
    tolerance: float = MATCH_TOL

    @property
    def compared(self) -> list[FrequencyCheck]:
        return [c for c in self.checks if c.error is not None]

    @property
    def max_error(self) -> float:
        return max((c.error for c in self.compared), default=0.0)

    @property
    def passed(self) -> bool:
        return bool(self.compared) and self.max_error <= self.tolerance


def verify(
    circuit: Circuit,
    omegas: list[float] | None = None,
    tf: TransferFunction | None = None,
    tolerance: float = MATCH_TOL,
) -> Verification:
    """Compare N(jw)/D(jw) with the MNA solution at each angular frequency.

    Frequencies where |D| falls below ``POLE_SKIP`` times the sum of its
    term magnitudes are skipped, as are frequencies where MNA is singular.
    """
    tf = tf or transfer_function(circuit)
    values = {b.nature_name: b.value for b in circuit.component_branches}
    result = Verification(tolerance=tolerance)
    for w in omegas or log_frequencies():
        s = complex(0.0, w)
        if tf.degenerate:
            result.checks.append(FrequencyCheck(w, None, None, None, "degenerate"))
            continue
        d = poly_eval(tf.denominator, values, s)
        if abs(d) < POLE_SKIP * poly_scale(tf.denominator, values, s):
            result.checks.append(FrequencyCheck(w, None, None, None, "near pole"))
            continue
        try:
            want = mna_transfer(circuit, s)
        except OracleError as exc:
            result.checks.append(FrequencyCheck(w, None, None, None, str(exc)))
            continue
        got = poly_eval(tf.numerator, values, s) / d
        result.checks.append(FrequencyCheck(w, got, want, relative_error(got, want)))
    return result
