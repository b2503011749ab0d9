# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: batched Ehrlich-Aberth iteration and Eulerian
orientation enumeration. Mirrors _pykernels exactly (same initialization,
update rule, stopping rule, and chunked Kahan summation)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF ABERTH_MAX_ITER = 500
DEF ABERTH_TOL = 1e-13
DEF EULERIAN_CHUNK = 65536


def aberth_roots(coeffs):
    """See _pykernels.aberth_roots; identical contract."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t batch = c.shape[0]
    cdef Py_ssize_t d = c.shape[1] - 1
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] roots
    cdef cnp.ndarray[cnp.int64_t, ndim=1] iters = np.zeros(batch, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] conv = np.ones(batch, dtype=np.uint8)

    if d < 1:
        return np.zeros((batch, 0), dtype=np.complex128), iters, conv.astype(bool)

    cdef cnp.ndarray[cnp.complex128_t, ndim=2] monic = c / c[:, d:d + 1]
    roots = np.empty((batch, d), dtype=np.complex128)

    cdef Py_ssize_t b, i, j, k, it
    cdef double cauchy, mx, step_mag, ref
    cdef double complex pv, dv, newton, ssum, denom, step, zi
    cdef double complex[::1] z = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] znew = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] mc
    cdef bint all_done

    if d == 1:
        for b in range(batch):
            roots[b, 0] = -monic[b, 0]
        return roots, iters, conv.astype(bool)

    cdef cnp.ndarray[cnp.complex128_t, ndim=1] init = np.exp(
        1j * (2.0 * np.pi * (np.arange(d) + 0.5) / d + 0.4)
    )

    for b in range(batch):
        mc = monic[b]
        mx = 0.0
        for k in range(d):
            if abs(mc[k]) > mx:
                mx = abs(mc[k])
        cauchy = 1.0 + mx
        for i in range(d):
            z[i] = cauchy * init[i]

        conv[b] = 0
        for it in range(ABERTH_MAX_ITER):
            all_done = True
            for i in range(d):
                zi = z[i]
                pv = 1.0  # monic
                for k in range(d - 1, -1, -1):
                    pv = pv * zi + mc[k]
                dv = d * 1.0
                for k in range(d - 1, 0, -1):
                    dv = dv * zi + k * mc[k]
                if dv == 0:
                    dv = 1e-300
                newton = pv / dv
                ssum = 0
                for j in range(d):
                    if j != i:
                        ssum = ssum + 1.0 / (zi - z[j])
                denom = 1.0 - newton * ssum
                if abs(denom) < 1e-300:
                    denom = 1.0
                step = newton / denom
                znew[i] = zi - step
                step_mag = abs(step)
                ref = abs(znew[i])
                if ref < 1.0:
                    ref = 1.0
                if step_mag > ABERTH_TOL * ref:
                    all_done = False
            for i in range(d):
                z[i] = znew[i]
            iters[b] += 1
            if all_done:
                conv[b] = 1
                break
        for i in range(d):
            roots[b, i] = z[i]

    return roots, iters, conv.astype(bool)


def eulerian_sum(vertex_edges, table, n_edges):
    """See _pykernels.eulerian_sum; identical contract."""
    cdef cnp.ndarray[cnp.int64_t, ndim=2] ve = np.ascontiguousarray(vertex_edges, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tb = np.ascontiguousarray(table, dtype=np.float64)
    cdef Py_ssize_t n_vertices = ve.shape[0]
    cdef long long total_assignments = 1LL << n_edges
    if n_vertices == 0:
        return float(total_assignments)

    cdef double total = 0.0, comp = 0.0, chunk, prod, y, t
    cdef long long x, start, stop
    cdef Py_ssize_t v
    cdef int code

    start = 0
    while start < total_assignments:
        stop = start + EULERIAN_CHUNK
        if stop > total_assignments:
            stop = total_assignments
        chunk = 0.0
        for x in range(start, stop):
            prod = 1.0
            for v in range(n_vertices):
                code = (
                    (((x >> ve[v, 0]) & 1) << 3)
                    | (((x >> ve[v, 1]) & 1) << 2)
                    | (((x >> ve[v, 2]) & 1) << 1)
                    | ((x >> ve[v, 3]) & 1)
                )
                prod = prod * tb[code]
                if prod == 0.0:
                    break
            chunk += prod
        y = chunk - comp
        t = total + y
        comp = (t - total) - y
        total = t
        start = stop
    return total
