"""Spin Hamiltonians on interaction graphs, their Gibbs states and spectra.

Vertices are numbered 1..n; qubit q (0-based) maps to bit n-1-q of the flat
index, so vertex 1 is the most significant bit, matching the tensor layout.
Every builder accumulates sparse COO triplets from 2-local edge terms and
1-local field terms, so dense and sparse paths share one assembly routine.
Dense matrices are materialized for n <= 12; for n in {13, 14} spectra come
from sector-restricted Lanczos extremes on the sparse blocks.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .tensor import OperatorTensor, StateTensor, bit_weights

MAX_QUBITS = 14
DENSE_MAX = 12
GIBBS_MAX = 10
HERMITICITY_TOL = 1e-10


# ---------------------------------------------------------------------------
# graphs

@dataclass
class Graph:
    """Undirected weighted graph with optional per-edge phases, vertices 1..n."""

    n_vertices: int
    edges: list
    simple: bool = True

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError("need at least one vertex")
        norm = []
        seen = set()
        for e in self.edges:
            if len(e) == 2:
                i, j, w, th = e[0], e[1], 1.0, 0.0
            elif len(e) == 3:
                i, j, w, th = e[0], e[1], e[2], 0.0
            elif len(e) == 4:
                i, j, w, th = e
            else:
                raise ValueError("edges are (i, j[, weight[, phase]])")
            i, j = int(i), int(j)
            if not (1 <= i < j <= self.n_vertices):
                raise ValueError(f"edge ({i},{j}) violates 1 <= i < j <= n")
            w = float(w)
            if w < 0:
                raise ValueError("edge weights must be nonnegative")
            if self.simple:
                if (i, j) in seen:
                    raise ValueError(f"duplicate edge ({i},{j})")
                seen.add((i, j))
            norm.append((i, j, w, float(th)))
        self.edges = norm

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n_vertices, dtype=np.int64)
        for i, j, _, _ in self.edges:
            d[i - 1] += 1
            d[j - 1] += 1
        return d

    def is_connected(self) -> bool:
        parent = list(range(self.n_vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j, _, _ in self.edges:
            ra, rb = find(i - 1), find(j - 1)
            if ra != rb:
                parent[ra] = rb
        return len({find(v) for v in range(self.n_vertices)}) == 1

    def is_tree(self) -> bool:
        return self.n_edges == self.n_vertices - 1 and self.is_connected()

    def is_star(self) -> bool:
        if self.n_vertices < 3 or not self.is_tree():
            return False
        d = sorted(self.degrees())
        return d[-1] == self.n_vertices - 1

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(1, n)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycles need n >= 3")
        return cls(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])

    @classmethod
    def star(cls, n: int) -> "Graph":
        if n < 2:
            raise ValueError("stars need n >= 2")
        return cls(n, [(1, j) for j in range(2, n + 1)])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])

    def with_phases(self, phases) -> "Graph":
        phases = np.asarray(phases, dtype=np.float64)
        if phases.shape != (self.n_edges,):
            raise ValueError("need one phase per edge")
        return Graph(
            self.n_vertices,
            [(i, j, w, float(t)) for (i, j, w, _), t in zip(self.edges, phases)],
            simple=self.simple,
        )

    def to_json_dict(self) -> dict:
        return {"n": self.n_vertices, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "Graph":
        return cls(int(d["n"]), [tuple(e) for e in d["edges"]])

    @classmethod
    def from_graph6(cls, s: str) -> "Graph":
        import networkx as nx

        g = nx.from_graph6_bytes(s.strip().encode())
        n = g.number_of_nodes()
        edges = [(min(a, b) + 1, max(a, b) + 1) for a, b in g.edges()]
        return cls(n, sorted(edges))

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh)

    @classmethod
    def load(cls, path) -> "Graph":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


# ---------------------------------------------------------------------------
# matrix assembly

def _expand_zero_bits(count: int, positions: list) -> np.ndarray:
    """All n-bit indices whose bits at `positions` are zero, as a dense range
    expansion: count = n - len(positions) free bits."""
    arr = np.arange(2**count, dtype=np.int64)
    for p in sorted(positions):
        low = arr & ((1 << p) - 1)
        arr = ((arr >> p) << (p + 1)) | low
    return arr


class DenseHermitian:
    """Hamiltonian assembled from local terms; dense on demand, sparse always.

    Terms are (bit_positions, local_matrix) pairs with bit positions counted
    from the least significant bit; the public builders translate vertex
    numbers for you.
    """

    def __init__(self, n_qubits: int, terms):
        if not 1 <= n_qubits <= MAX_QUBITS:
            raise ValueError(f"need 1 <= n <= {MAX_QUBITS} qubits")
        self.n_qubits = n_qubits
        rows, cols, vals = [], [], []
        for positions, local in terms:
            k = len(positions)
            local = np.asarray(local, dtype=np.complex128)
            if local.shape != (2**k, 2**k):
                raise ValueError("local matrix size mismatch")
            base = _expand_zero_bits(n_qubits - k, list(positions))
            # local row/col bit a sits at positions[a] with a=0 most significant
            for a in range(2**k):
                abits = sum(((a >> (k - 1 - t)) & 1) << positions[t] for t in range(k))
                for b in range(2**k):
                    if local[a, b] == 0:
                        continue
                    bbits = sum(((b >> (k - 1 - t)) & 1) << positions[t] for t in range(k))
                    rows.append(base + abits)
                    cols.append(base + bbits)
                    vals.append(np.full(base.size, local[a, b]))
        dim = 2**n_qubits
        if rows:
            coo = sp.coo_matrix(
                (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                shape=(dim, dim),
            )
        else:
            coo = sp.coo_matrix((dim, dim), dtype=np.complex128)
        csr = coo.tocsr()
        csr.sum_duplicates()
        if np.all(csr.data.imag == 0):
            csr = sp.csr_matrix((csr.data.real, csr.indices, csr.indptr), shape=csr.shape)
        self._csr = csr
        self._dense = None

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def sparse(self) -> sp.csr_matrix:
        return self._csr

    @property
    def matrix(self) -> np.ndarray:
        if self._dense is None:
            if self.n_qubits > DENSE_MAX:
                raise ValueError(f"dense materialization capped at {DENSE_MAX} qubits")
            self._dense = self._csr.toarray()
        return self._dense

    def hermiticity_defect(self) -> float:
        diff = self._csr - self._csr.getH()
        return float(np.abs(diff.data).max()) if diff.nnz else 0.0

    def is_parity_symmetric(self) -> bool:
        """[Z^{(x)n}, H] = 0 exactly: no entries mix bit-weight parities."""
        coo = self._csr.tocoo()
        w = bit_weights(self.n_qubits)
        return bool(np.all((w[coo.row] - w[coo.col]) % 2 == 0))

    def sector_indices(self, parity: int) -> np.ndarray:
        w = bit_weights(self.n_qubits)
        return np.where(w % 2 == parity)[0]

    def sector_block(self, parity: int) -> sp.csr_matrix:
        idx = self.sector_indices(parity)
        return self._csr[idx][:, idx]


def _edge_positions(g: Graph, i: int, j: int) -> tuple:
    n = g.n_vertices
    return (n - i, n - j)  # vertex v sits at bit n - v


def build_epr_like(g: Graph, s: float) -> DenseHermitian:
    """H_s = -sum_{(i,j) in E} w_ij |phi_s><phi_s|_{ij}, phi_s = |00> + s|11>."""
    if not 0 <= s <= 1:
        raise ValueError("need 0 <= s <= 1")
    phi = np.array([1.0, 0.0, 0.0, s])
    proj = np.outer(phi, phi)
    terms = [(_edge_positions(g, i, j), -w * proj) for i, j, w, _ in g.edges]
    return DenseHermitian(g.n_vertices, terms)


def build_phase_shifted(g: Graph, s: float) -> DenseHermitian:
    """H_s(theta) = -sum w_ij h(s e^{i theta_ij}) with h(z) = |phi_z><phi_z|,
    phi_z = |00> + z|11>. All phases zero reduces to build_epr_like."""
    if not 0 <= s <= 1:
        raise ValueError("need 0 <= s <= 1")
    terms = []
    for i, j, w, th in g.edges:
        z = s * np.exp(1j * th)
        phi = np.array([1.0, 0.0, 0.0, z])
        terms.append((_edge_positions(g, i, j), -w * np.outer(phi, phi.conj())))
    return DenseHermitian(g.n_vertices, terms)


def build_xxz(g: Graph, d: float, f: float, mu_z) -> DenseHermitian:
    """H = -sum w_ij h_ij - sum_i mu_z_i Z_i with the XXZ local term
    h = (1/2)(f (XX + YY) + d (I - ZZ)) = [[0,0,0,0],[0,d,f,0],[0,f,d,0],[0,0,0,0]]."""
    n = g.n_vertices
    mu_z = np.broadcast_to(np.asarray(mu_z, dtype=np.float64), (n,))
    h = np.array([
        [0.0, 0.0, 0.0, 0.0],
        [0.0, d, f, 0.0],
        [0.0, f, d, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ])
    terms = [(_edge_positions(g, i, j), -w * h) for i, j, w, _ in g.edges]
    for v in range(1, n + 1):
        terms.append(((n - v,), -mu_z[v - 1] * np.diag([1.0, -1.0])))
    return DenseHermitian(n, terms)


def build_sf(g: Graph, jx, jy, jz, mu_x=0.0, mu_y=0.0, mu_z=0.0) -> DenseHermitian:
    """H = -sum_{(i,j)} (Jx XX + Jy YY + Jz ZZ)_{ij} - sum_i (mux X + muy Y + muz Z)_i.

    Couplings may be scalars or per-edge vectors; fields scalars or per-vertex.
    """
    n, m = g.n_vertices, g.n_edges
    jx = np.broadcast_to(np.asarray(jx, dtype=np.float64), (m,))
    jy = np.broadcast_to(np.asarray(jy, dtype=np.float64), (m,))
    jz = np.broadcast_to(np.asarray(jz, dtype=np.float64), (m,))
    mu_x = np.broadcast_to(np.asarray(mu_x, dtype=np.float64), (n,))
    mu_y = np.broadcast_to(np.asarray(mu_y, dtype=np.float64), (n,))
    mu_z = np.broadcast_to(np.asarray(mu_z, dtype=np.float64), (n,))
    terms = []
    for e, (i, j, w, _) in enumerate(g.edges):
        xx = np.fliplr(np.diag([1.0, 1.0, 1.0, 1.0]))
        yy = np.fliplr(np.diag([-1.0, 1.0, 1.0, -1.0]))
        zz = np.diag([1.0, -1.0, -1.0, 1.0])
        local = -w * (jx[e] * xx + jy[e] * yy + jz[e] * zz)
        terms.append((_edge_positions(g, i, j), local))
    for v in range(1, n + 1):
        fld = -(
            mu_x[v - 1] * np.array([[0, 1], [1, 0]], dtype=complex)
            + mu_y[v - 1] * np.array([[0, -1j], [1j, 0]])
            + mu_z[v - 1] * np.array([[1, 0], [0, -1]], dtype=complex)
        )
        if np.any(fld != 0):
            terms.append(((n - v,), fld))
    return DenseHermitian(n, terms)


# ---------------------------------------------------------------------------
# Hamiltonian specifications

@dataclass
class HamiltonianSpec:
    """Term-level description of one Hamiltonian instance.

    family "SF-generic" uses per-edge (jx, jy, jz) and per-vertex fields;
    "XXZ" uses (d, f) and mu_z; "EPR-like"/"PhaseShifted" use s (phases live
    on the graph edges). beta is carried for Gibbs construction.
    """

    family: str
    graph: Graph
    params: dict = field(default_factory=dict)
    beta: float | None = None

    FAMILIES = ("SF-generic", "XXZ", "EPR-like", "PhaseShifted")

    def __post_init__(self):
        if self.family not in self.FAMILIES:
            raise ValueError(f"family must be one of {self.FAMILIES}")
        if self.family in ("EPR-like", "PhaseShifted"):
            s = self.params.get("s")
            if s is None or not 0 <= s <= 1:
                raise ValueError("EPR-like families need 0 <= s <= 1")

    def _sf_view(self):
        """Per-edge (jx, jy, jz) and per-vertex (mux, muy, muz) arrays."""
        m, n = self.graph.n_edges, self.graph.n_vertices
        if self.family == "SF-generic":
            p = self.params
            return (
                np.broadcast_to(np.asarray(p.get("jx", 0.0), float), (m,)),
                np.broadcast_to(np.asarray(p.get("jy", 0.0), float), (m,)),
                np.broadcast_to(np.asarray(p.get("jz", 0.0), float), (m,)),
                np.broadcast_to(np.asarray(p.get("mu_x", 0.0), float), (n,)),
                np.broadcast_to(np.asarray(p.get("mu_y", 0.0), float), (n,)),
                np.broadcast_to(np.asarray(p.get("mu_z", 0.0), float), (n,)),
            )
        if self.family == "XXZ":
            d, f = self.params["d"], self.params["f"]
            w = np.array([e[2] for e in self.graph.edges])
            # -w h = -(w f / 2)(XX + YY) + (w d / 2) ZZ - (w d / 2) I
            return (
                w * f / 2.0,
                w * f / 2.0,
                -w * d / 2.0,
                np.zeros(n),
                np.zeros(n),
                np.broadcast_to(np.asarray(self.params.get("mu_z", 0.0), float), (n,)),
            )
        raise ValueError("no Pauli coupling view for this family")

    def is_suzuki_fisher(self) -> bool:
        """Ferromagnetic dominating ZZ couplings and nonnegative Z fields."""
        if self.family in ("EPR-like", "PhaseShifted"):
            return False
        jx, jy, jz, mux, muy, muz = self._sf_view()
        return bool(
            np.all(jz >= np.maximum(np.abs(jx), np.abs(jy)) - 1e-12)
            and np.all(muz >= -1e-12)
        )

    def is_particle_preserving(self) -> bool:
        """Jx = Jy on every edge and no transverse fields."""
        if self.family == "XXZ":
            return True
        if self.family != "SF-generic":
            return False
        jx, jy, _, mux, muy, _ = self._sf_view()
        return bool(np.all(jx == jy) and np.all(mux == 0) and np.all(muy == 0))

    def build(self) -> DenseHermitian:
        g, p = self.graph, self.params
        if self.family == "EPR-like":
            return build_epr_like(g, p["s"])
        if self.family == "PhaseShifted":
            return build_phase_shifted(g, p["s"])
        if self.family == "XXZ":
            return build_xxz(g, p["d"], p["f"], p.get("mu_z", 0.0))
        return build_sf(
            g,
            p.get("jx", 0.0), p.get("jy", 0.0), p.get("jz", 0.0),
            p.get("mu_x", 0.0), p.get("mu_y", 0.0), p.get("mu_z", 0.0),
        )


# ---------------------------------------------------------------------------
# spectra

@dataclass
class SpectralData:
    """Eigenvalues (sorted ascending), the gap, parity-sector extremes, and
    the phase-fixed ground vector. For n in {13, 14} only sector extremes are
    computed and `eigenvalues` lists just those."""

    eigenvalues: np.ndarray
    gap: float
    lambda1_even: float | None
    lambda2_even: float | None
    lambda1_odd: float | None
    ground: np.ndarray
    degeneracy_tolerance: float
    residual: float
    parity_symmetric: bool
    lambda2_sector: str | None

    @property
    def lambda1(self) -> float:
        return float(self.eigenvalues[0])

    def ground_tensor(self) -> StateTensor:
        n = int(round(math.log2(self.ground.size)))
        return StateTensor(n, self.ground)


def _phase_fix(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    piv = v[k]
    if piv == 0:
        return v
    return v * (abs(piv) / piv)


def spectral_data(H: DenseHermitian) -> SpectralData:
    """Diagonalize, splitting bit-weight parity blocks when H commutes with
    Z^{(x)n}. Dense eigh up to 12 qubits; 13-14 use Lanczos extremes per
    sector. The ground vector's largest-modulus entry is made real positive."""
    if H.hermiticity_defect() > HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian within 1e-10")
    n = H.n_qubits
    parity_ok = H.is_parity_symmetric()
    lanczos = n > DENSE_MAX

    if not parity_ok:
        vals, vecs = np.linalg.eigh(H.matrix)
        ground = _phase_fix(vecs[:, 0].astype(np.complex128))
        hnorm = max(abs(vals[0]), abs(vals[-1]), 1.0)
        resid = float(np.linalg.norm(H.sparse() @ ground - vals[0] * ground))
        return SpectralData(
            eigenvalues=vals,
            gap=float(vals[1] - vals[0]),
            lambda1_even=None, lambda2_even=None, lambda1_odd=None,
            ground=ground,
            degeneracy_tolerance=1e-9 * hnorm,
            residual=resid,
            parity_symmetric=False,
            lambda2_sector=None,
        )

    sector_vals, sector_vecs, sector_idx = [], [], []
    for parity in (0, 1):
        idx = H.sector_indices(parity)
        block = H.sector_block(parity)
        if lanczos:
            k = min(2, idx.size - 1) if idx.size > 1 else 1
            if idx.size == 1:
                vals = np.array([block[0, 0].real])
                vecs = np.ones((1, 1))
            else:
                v0 = np.ones(idx.size) / math.sqrt(idx.size)  # deterministic start
                vals, vecs = spla.eigsh(block, k=k, which="SA", v0=v0)
                order = np.argsort(vals)
                vals, vecs = vals[order], vecs[:, order]
        else:
            vals, vecs = np.linalg.eigh(block.toarray())
        sector_vals.append(vals)
        sector_vecs.append(vecs)
        sector_idx.append(idx)

    ev, od = sector_vals
    l1e = float(ev[0])
    l2e = float(ev[1]) if ev.size > 1 else None
    l1o = float(od[0]) if od.size else None

    merged = np.sort(np.concatenate(sector_vals))
    gap = float(merged[1] - merged[0])
    hnorm = max(abs(merged[0]), abs(merged[-1]), 1.0)
    tol = 1e-9 * hnorm

    gparity = 0 if (l1o is None or l1e <= l1o) else 1
    gvec_small = sector_vecs[gparity][:, 0]
    ground = np.zeros(H.dim, dtype=np.complex128)
    ground[sector_idx[gparity]] = gvec_small
    ground = _phase_fix(ground)
    lam1 = float(sector_vals[gparity][0])
    resid = float(np.linalg.norm(H.sparse() @ ground - lam1 * ground))

    lambda2_sector = None
    if l1o is not None and l2e is not None and gparity == 0:
        if l1o < l2e - tol:
            lambda2_sector = "odd"
        elif l2e < l1o - tol:
            lambda2_sector = "even"
        else:
            lambda2_sector = "tie"

    return SpectralData(
        eigenvalues=merged,
        gap=gap,
        lambda1_even=l1e,
        lambda2_even=l2e,
        lambda1_odd=l1o,
        ground=ground,
        degeneracy_tolerance=tol,
        residual=resid,
        parity_symmetric=True,
        lambda2_sector=lambda2_sector,
    )


def gibbs(H: DenseHermitian, beta: float) -> OperatorTensor:
    """e^{-beta H} as a 2n-index operator tensor, via eigendecomposition."""
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    if H.n_qubits > GIBBS_MAX:
        raise ValueError(f"gibbs capped at {GIBBS_MAX} qubits")
    if beta == 0:
        return OperatorTensor.from_matrix(np.eye(H.dim, dtype=complex), hermitian=True)
    vals, vecs = np.linalg.eigh(H.matrix)
    mat = (vecs * np.exp(-beta * vals)) @ vecs.conj().T
    mat = (mat + mat.conj().T) / 2.0
    return OperatorTensor.from_matrix(mat.astype(np.complex128), hermitian=True)


# ---------------------------------------------------------------------------
# closed forms

def star_spectrum_analytic(n: int, s: float) -> tuple:
    """(lambda1_even, lambda2_even, lambda1_odd, gap) of the star-graph H_s.

    lambda1_even = -(n-1+s^2), lambda1_odd = -(n-2+2s^2), gap = 1-s^2 for all
    n >= 3. The second even level is -(n-3+3s^2) for n >= 4; at n = 3 the
    even sector has no second bound level of that family and the value is
    -s^2 instead (verified against dense diagonalization).
    """
    if n < 3:
        raise ValueError("star formulas need n >= 3")
    if not 0 <= s < 1:
        raise ValueError("need 0 <= s < 1")
    l1e = -(n - 1 + s * s)
    l1o = -(n - 2 + 2 * s * s)
    l2e = -(s * s) if n == 3 else -(n - 3 + 3 * s * s)
    return (l1e, l2e, l1o, 1 - s * s)


def gibbs_radius_n2(beta: float, s: float) -> float:
    """Exact multidisk radius of vec(e^{-beta H_s}) on the single edge n = 2:

        r = s^{-1/2} [ (1 + s^2 E) / (1 + s^{-2} E) ]^{1/4},  E = e^{-beta(1+s^2)}.

    beta = 0 gives 1; s = 0 with beta > 0 has no zero at finite radius and
    returns +inf.
    """
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    if not 0 <= s <= 1:
        raise ValueError("need 0 <= s <= 1")
    if beta == 0:
        return 1.0
    if s == 0:
        return math.inf
    e = math.exp(-beta * (1.0 + s * s))
    return s**-0.5 * ((1.0 + s * s * e) / (1.0 + s**-2.0 * e)) ** 0.25


def sf_radius_particle_preserving(spec: HamiltonianSpec, beta: float) -> float:
    """Certified LY radius min_i e^{beta mu_z_i} for particle-preserving specs."""
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    if not spec.is_particle_preserving():
        raise ValueError("spec is not particle-number preserving (needs Jx = Jy, no transverse fields)")
    _, _, _, _, _, muz = spec._sf_view()
    return float(np.exp(beta * muz.min()))
