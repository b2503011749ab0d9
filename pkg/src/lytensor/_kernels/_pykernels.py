"""Numpy fallback for the hot kernels.

Same signatures as the compiled module. Both backends implement the same
algorithms with the same deterministic initialization and stopping rules, so
results agree to rounding; within a backend, results are reproducible.
"""
from __future__ import annotations

import numpy as np

ABERTH_MAX_ITER = 500
ABERTH_TOL = 1e-13
EULERIAN_CHUNK = 1 << 16


def aberth_roots(coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Simultaneously find all roots of a batch of same-degree polynomials.

    coeffs has shape (B, d+1), coeffs[:, k] multiplying z^k, with a nonzero
    leading column (the caller trims degree). Returns (roots (B, d),
    iterations (B,), converged (B,)). Ehrlich-Aberth with Jacobi-style
    simultaneous updates, monic normalization, and initial guesses on the
    Cauchy-bound circle. A root set converges when every update step is
    below 1e-13 * max(1, |root|).
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    batch, width = coeffs.shape
    d = width - 1
    if d < 1:
        return (
            np.zeros((batch, 0), dtype=np.complex128),
            np.zeros(batch, dtype=np.int64),
            np.ones(batch, dtype=bool),
        )
    monic = coeffs / coeffs[:, -1:]
    if d == 1:
        return (
            -monic[:, :1].copy(),
            np.zeros(batch, dtype=np.int64),
            np.ones(batch, dtype=bool),
        )

    cauchy = 1.0 + np.abs(monic[:, :-1]).max(axis=1)
    # fixed angular offset breaks symmetry with real-coefficient batches
    angles = 2.0 * np.pi * (np.arange(d) + 0.5) / d + 0.4
    z = cauchy[:, None] * np.exp(1j * angles)[None, :]

    deriv = monic[:, 1:] * np.arange(1, d + 1)
    active = np.ones(batch, dtype=bool)
    iters = np.zeros(batch, dtype=np.int64)
    eye = np.eye(d, dtype=bool)

    for _ in range(ABERTH_MAX_ITER):
        if not active.any():
            break
        za = z[active]
        ma = monic[active]
        da = deriv[active]
        # Horner for p(z) and p'(z), highest power first; leading terms are
        # 1 and d because the rows are monic
        pv = np.ones_like(za)
        for k in range(d - 1, -1, -1):
            pv = pv * za + ma[:, k, None]
        dv = np.full_like(za, complex(d))
        for k in range(d - 2, -1, -1):
            dv = dv * za + da[:, k, None]

        dv = np.where(dv == 0, 1e-300, dv)
        newton = pv / dv
        diff = za[:, :, None] - za[:, None, :]
        np.einsum("bii->bi", diff)[...] = 1.0  # keep reciprocals finite on the diagonal
        recip = 1.0 / diff
        sums = recip.sum(axis=2) - np.einsum("bii->bi", recip)
        denom = 1.0 - newton * sums
        denom = np.where(np.abs(denom) < 1e-300, 1.0, denom)
        step = newton / denom
        z[active] = za - step

        done = (np.abs(step) <= ABERTH_TOL * np.maximum(1.0, np.abs(za - step))).all(axis=1)
        idx = np.flatnonzero(active)
        iters[idx] += 1
        active[idx[done]] = False

    return z, iters, ~active


def eulerian_sum(vertex_edges: np.ndarray, table: np.ndarray, n_edges: int) -> float:
    """Sum of vertex-weight products over all 2^n_edges edge assignments.

    vertex_edges has shape (J, 4): for each vertex the edge ids whose bits
    form its 4-bit configuration code (in1, in2, out1, out2 from high to low).
    table has 16 real weights indexed by that code. Assignments whose code
    hits a zero weight at any vertex contribute nothing, which is what
    restricts the sum to Eulerian orientations.

    Processed in fixed 2^16 chunks, chunk subtotals combined with Kahan
    compensation so the summation order is deterministic.
    """
    vertex_edges = np.asarray(vertex_edges, dtype=np.int64)
    table = np.asarray(table, dtype=np.float64)
    total_assignments = 1 << n_edges
    n_vertices = vertex_edges.shape[0]
    if n_vertices == 0:
        return float(total_assignments)

    total = 0.0
    comp = 0.0
    for start in range(0, total_assignments, EULERIAN_CHUNK):
        stop = min(start + EULERIAN_CHUNK, total_assignments)
        x = np.arange(start, stop, dtype=np.int64)
        prod = np.ones(stop - start, dtype=np.float64)
        for v in range(n_vertices):
            e = vertex_edges[v]
            code = (
                (((x >> e[0]) & 1) << 3)
                | (((x >> e[1]) & 1) << 2)
                | (((x >> e[2]) & 1) << 1)
                | ((x >> e[3]) & 1)
            )
            prod *= table[code]
        chunk = float(prod.sum())
        y = chunk - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total
