#!/usr/bin/env python3
"""Time the compiled kernels against the pure-Python fallback.

Both implementations are imported directly (the package-level backend switch
is bypassed), so one invocation produces a side-by-side table:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --batch 2048 --degree 16 --gates 11

The Aberth input is a batch of random polynomials like the ones the
equatorial scan produces; the Eulerian input is a real six-vertex graph
built from a Trotter circuit (2 edges per gate).
"""
import argparse
import statistics
import time

import numpy as np

from lytensor import Graph, circuit_to_six_vertex, trotterize
from lytensor._kernels import _pykernels

try:
    from lytensor._kernels import _cykernels
except ImportError:
    _cykernels = None


def timeit(fn, repeats):
    best = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return statistics.median(best)


def bench_aberth(impl, coeffs, repeats):
    def run():
        roots, iters, conv = impl.aberth_roots(coeffs)
        assert conv.all()
    return timeit(run, repeats)


def bench_eulerian(impl, vertex_edges, table, n_edges, repeats):
    def run():
        impl.eulerian_sum(vertex_edges, table, n_edges)
    return timeit(run, repeats)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=1024,
                    help="number of polynomials in the Aberth batch")
    ap.add_argument("--degree", type=int, default=12)
    ap.add_argument("--gates", type=int, default=10,
                    help="Trotter gates; the six-vertex sum has 2^(2*gates) terms")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    coeffs = rng.standard_normal((args.batch, args.degree + 1)) \
        + 1j * rng.standard_normal((args.batch, args.degree + 1))

    circuit = trotterize(Graph.cycle(3), 0.3, 0.5, 0.9, args.gates)
    gamma, params = circuit_to_six_vertex(circuit)
    table = params.weight_table()

    rows = []
    impls = [("pure", _pykernels)]
    if _cykernels is not None:
        impls.append(("cython", _cykernels))
    for name, impl in impls:
        t_ab = bench_aberth(impl, coeffs, args.repeats)
        t_eu = bench_eulerian(impl, gamma.vertex_edges, table,
                              gamma.n_edges, args.repeats)
        rows.append((name, t_ab, t_eu))

    print(f"aberth: batch={args.batch} degree={args.degree}   "
          f"eulerian: {gamma.n_edges} edges ({2**gamma.n_edges} terms)   "
          f"median of {args.repeats}")
    print(f"{'backend':<8} {'aberth [s]':>12} {'eulerian [s]':>12}")
    for name, t_ab, t_eu in rows:
        print(f"{name:<8} {t_ab:>12.4f} {t_eu:>12.4f}")
    if len(rows) == 2:
        print(f"{'speedup':<8} {rows[0][1] / rows[1][1]:>11.1f}x "
              f"{rows[0][2] / rows[1][2]:>11.1f}x")
    else:
        print("compiled backend not built; showing pure fallback only")


if __name__ == "__main__":
    main()
