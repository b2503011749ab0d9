"""Trotterized XXZ traces and their six-vertex Eulerian-orientation form.

A first-order Trotter circuit for e^{-beta H} with H = -sum_e h_e applies the
two-qubit gate e^{delta h} along edges in a fixed cyclic order. Writing the
trace of the circuit as a tensor network and reading each gate as a degree-4
vertex gives a six-vertex partition function: edge bits are orientations,
and the three distinct nonzero gate elements become the vertex weights

    a = 1 (straight-through 00 or 11),
    b = t = e^{delta d} sinh(delta f) (swap),
    c = t + e^{delta (d - f)} (pass-through 01 or 10),

so Z(Gamma, a, b, c) = tr(G_J ... G_1) exactly. Each vertex reads its four
half-edges in the order (in_1, in_2, out_1, out_2); assignments that violate
particle conservation at any vertex get weight zero, which is what restricts
the sum to Eulerian orientations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import eulerian_sum
from .hamiltonians import Graph

MAX_ENUM_EDGES = 24
TRACE_MAX_QUBITS = 10


def gate_matrix(d: float, f: float, delta: float) -> np.ndarray:
    """e^{delta h} for h = (1/2)(f(XX+YY) + d(I-ZZ)), in basis 00,01,10,11."""
    t = math.exp(delta * d) * math.sinh(delta * f)
    diag = t + math.exp(delta * (d - f))
    return np.array([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, diag, t, 0.0],
        [0.0, t, diag, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])


@dataclass
class TrotterCircuit:
    """Ordered list of identical two-qubit gates on 1-based qubit pairs."""

    n_qubits: int
    gates: list  # [(i, j), ...] in application order, 1 <= i < j <= n
    d: float
    f: float
    beta: float
    delta: float

    def __post_init__(self):
        for i, j in self.gates:
            if not (1 <= i < j <= self.n_qubits):
                raise ValueError(f"gate pair ({i},{j}) out of range")

    @property
    def n_gates(self) -> int:
        return len(self.gates)

    @property
    def matrix(self) -> np.ndarray:
        return gate_matrix(self.d, self.f, self.delta)


def trotterize(g: Graph, d: float, f: float, beta: float, steps: int) -> TrotterCircuit:
    """First-order circuit with `steps` gates cycling the edge list in order.

    delta = beta |E| / steps, so a whole number of passes reproduces beta
    exactly per edge. Requires f > 0 (the mapping regime) and uniform unit
    weights.
    """
    if f <= 0:
        raise ValueError("the six-vertex mapping needs f > 0")
    if steps < 1:
        raise ValueError("need at least one gate")
    if g.n_edges == 0:
        raise ValueError("graph has no edges")
    if any(w != 1.0 for _, _, w, _ in g.edges):
        raise ValueError("trotterize assumes uniform unit weights")
    delta = beta * g.n_edges / steps
    pairs = [(i, j) for i, j, _, _ in g.edges]
    gates = [pairs[k % len(pairs)] for k in range(steps)]
    return TrotterCircuit(g.n_vertices, gates, d, f, beta, delta)


def trotter_trace(c: TrotterCircuit) -> float:
    """tr(G_J ... G_1) by dense application of each gate to the running product."""
    n = c.n_qubits
    if n > TRACE_MAX_QUBITS:
        raise ValueError(f"dense trace capped at {TRACE_MAX_QUBITS} qubits")
    if c.n_gates == 0:
        return float(2**n)
    gate = c.matrix.reshape(2, 2, 2, 2)  # (out_i, out_j, in_i, in_j)
    m = np.eye(2**n).reshape((2,) * n + (2**n,))
    for i, j in c.gates:
        qi, qj = i - 1, j - 1
        m = np.tensordot(gate, m, axes=([2, 3], [qi, qj]))
        m = np.moveaxis(m, (0, 1), (qi, qj))
    m = m.reshape(2**n, 2**n)
    return float(np.real(np.trace(m)))


# ---------------------------------------------------------------------------
# six-vertex side

@dataclass
class SixVertexParams:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise ValueError("vertex weights must be nonnegative")

    @classmethod
    def from_gate(cls, d: float, f: float, delta: float) -> "SixVertexParams":
        t = math.exp(delta * d) * math.sinh(delta * f)
        return cls(1.0, t, t + math.exp(delta * (d - f)))

    def regime(self) -> str:
        """"tractable" when (a^2, b^2, c^2) satisfy all triangle inequalities,
        "hard" when c > a + b, otherwise "neither". The triangle comparisons
        carry a 1e-12 relative slack so exact boundary points (the free-fermion
        line c^2 = a^2 + b^2) classify stably under rounding."""
        a2, b2, c2 = self.a**2, self.b**2, self.c**2
        tol = 1e-12 * max(a2, b2, c2)
        if a2 <= b2 + c2 + tol and b2 <= a2 + c2 + tol and c2 <= a2 + b2 + tol:
            return "tractable"
        if self.c > self.a + self.b:
            return "hard"
        return "neither"

    def weight_table(self) -> np.ndarray:
        """16-entry vertex weights indexed by (in1<<3)|(in2<<2)|(out1<<1)|out2."""
        w = np.zeros(16)
        w[0b0000] = w[0b1111] = self.a
        w[0b0110] = w[0b1001] = self.b
        w[0b0101] = w[0b1010] = self.c
        return w


@dataclass
class EdgeOrderedGraph:
    """4-regular multigraph; each vertex lists its half-edges as
    (in_1, in_2, out_1, out_2) edge ids. Self-loops show up as a repeated id
    within one row. free_loops counts closed wires that touch no vertex."""

    n_edges: int
    vertex_edges: np.ndarray  # (J, 4) int64
    free_loops: int = 0

    def __post_init__(self):
        ve = np.asarray(self.vertex_edges, dtype=np.int64).reshape(-1, 4)
        self.vertex_edges = ve
        if self.free_loops < 0:
            raise ValueError("free_loops must be nonnegative")
        counts = np.zeros(self.n_edges, dtype=np.int64)
        for e in ve.reshape(-1):
            if not 0 <= e < self.n_edges:
                raise ValueError("edge id out of range")
            counts[e] += 1
        if self.n_edges and not np.all(counts == 2):
            raise ValueError("every edge must have exactly two endpoints")

    @property
    def n_vertices(self) -> int:
        return self.vertex_edges.shape[0]


def circuit_to_six_vertex(c: TrotterCircuit):
    """Map a circuit to (EdgeOrderedGraph, SixVertexParams).

    One vertex per gate; the wire segment between consecutive gates on a
    qubit is an edge, and the trace closes each touched qubit's final segment
    onto its first. Untouched qubits become free loops (a factor 2 each).
    """
    current: dict = {}  # qubit -> open segment id
    first: dict = {}
    next_id = 0
    rows = []
    for i, j in c.gates:
        row = []
        for q in (i, j):
            if q not in current:
                current[q] = next_id
                first[q] = next_id
                next_id += 1
            row.append(current[q])
        for q in (i, j):
            current[q] = next_id
            row.append(next_id)
            next_id += 1
        rows.append(row)
    # periodic closure: the last open segment is the same edge as the first
    remap = np.arange(next_id, dtype=np.int64)
    for q in current:
        remap[current[q]] = first[q]
    rows_arr = np.asarray(rows, dtype=np.int64).reshape(-1, 4) if rows else np.zeros((0, 4), dtype=np.int64)
    mapped = remap[rows_arr]
    used = np.unique(mapped)
    compact = np.zeros(max(next_id, 1), dtype=np.int64)
    compact[used] = np.arange(used.size)
    ve = compact[mapped]
    gamma = EdgeOrderedGraph(
        n_edges=int(used.size),
        vertex_edges=ve,
        free_loops=c.n_qubits - len(current),
    )
    return gamma, SixVertexParams.from_gate(c.d, c.f, c.delta)


def eulerian_partition(gamma: EdgeOrderedGraph, params: SixVertexParams) -> float:
    """Z(Gamma, a, b, c) = sum over edge-bit assignments of the product of
    vertex weights; only Eulerian orientations contribute. Brute force over
    2^{n_edges} assignments, capped at 24 edges."""
    if gamma.n_edges > MAX_ENUM_EDGES:
        raise ValueError(f"enumeration capped at {MAX_ENUM_EDGES} edges")
    total = eulerian_sum(gamma.vertex_edges, params.weight_table(), gamma.n_edges)
    return float(total * 2.0**gamma.free_loops)
