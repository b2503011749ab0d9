"""Univariate polynomials with residual-certified simultaneous root finding."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import aberth_roots

# Trailing coefficients below this (relative to the largest coefficient) are
# treated as zero when computing the degree.
DROP_TOL = 1e-14

# A root is accepted when |p(root)| <= ROOT_TOL * max|coeff| * max(1,|root|)^deg.
ROOT_TOL = 1e-8

# Residual floor of a correct root evaluated by Horner: ~2*deg*eps*sum|c_k||z|^k.
# Residuals at or below this certify the root set even when the iteration's
# step criterion never fires (symmetric root configurations can limit-cycle
# at rounding level under simultaneous updates).
CERT_FACTOR = 256 * np.finfo(np.float64).eps


class UnivariatePoly:
    """Polynomial sum_k coeffs[k] z^k with tolerance-trimmed degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a nonempty 1-d sequence")
        mx = float(np.abs(c).max())
        if mx > 0.0:
            keep = np.flatnonzero(np.abs(c) > DROP_TOL * mx)
            c = c[: keep[-1] + 1].copy()
        else:
            c = np.zeros(1, dtype=np.complex128)
        self.coeffs = c

    @property
    def degree(self) -> int:
        """Trimmed degree; 0 covers both constants and the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.full_like(z, self.coeffs[-1])
        for k in range(len(self.coeffs) - 2, -1, -1):
            out = out * z + self.coeffs[k]
        return out

    def derivative(self) -> "UnivariatePoly":
        if self.degree == 0:
            return UnivariatePoly([0.0])
        return UnivariatePoly(self.coeffs[1:] * np.arange(1, len(self.coeffs)))

    def __repr__(self):
        return f"UnivariatePoly(degree={self.degree})"


@dataclass
class RootSet:
    """Roots with residual certificates.

    converged means every residual |p(root)| is below
    ROOT_TOL * max|coeff| * max(1,|root|)^degree, AND either the iteration
    reached its step tolerance or all residuals sit at the backward-error
    floor CERT_FACTOR * sum|c_k||root|^k.
    """

    roots: np.ndarray
    residuals: np.ndarray
    converged: bool
    iterations: int = 0

    def min_modulus(self) -> float:
        return float(np.abs(self.roots).min()) if self.roots.size else float("inf")


def _residual_ok(poly: UnivariatePoly, roots: np.ndarray, residuals: np.ndarray) -> bool:
    if roots.size == 0:
        return True
    scale = float(np.abs(poly.coeffs).max())
    bound = ROOT_TOL * scale * np.maximum(1.0, np.abs(roots)) ** poly.degree
    return bool(np.all(residuals <= bound))


def _residuals_at_floor(coeffs: np.ndarray, roots: np.ndarray, residuals: np.ndarray) -> np.ndarray:
    """Rows whose residuals are all within the Horner backward-error floor."""
    mags = np.broadcast_to(np.abs(coeffs[:, -1])[:, None], roots.shape).copy()
    t = np.abs(roots)
    for k in range(coeffs.shape[1] - 2, -1, -1):
        mags = mags * t + np.abs(coeffs[:, k])[:, None]
    return np.all(residuals <= CERT_FACTOR * mags, axis=1)


def poly_roots(poly: UnivariatePoly) -> RootSet:
    """All complex roots of a nonzero polynomial (none for constants)."""
    if poly.is_zero:
        raise ValueError("the zero polynomial has no well-defined root set")
    if poly.degree == 0:
        return RootSet(np.zeros(0, dtype=np.complex128), np.zeros(0), True, 0)
    roots, iters, conv = aberth_roots(poly.coeffs.reshape(1, -1))
    roots = roots[0]
    residuals = np.abs(poly(roots))
    certified = bool(
        _residuals_at_floor(poly.coeffs.reshape(1, -1), roots.reshape(1, -1), residuals.reshape(1, -1))[0]
    )
    ok = (bool(conv[0]) or certified) and _residual_ok(poly, roots, residuals)
    return RootSet(roots, residuals, ok, int(iters[0]))


def batched_roots(coeff_rows: np.ndarray) -> list[RootSet]:
    """Root sets for many polynomials given as rows of coefficients.

    Rows are trimmed individually, grouped by degree, and each group is sent
    through the kernel in one call. Zero rows get an empty, non-converged
    RootSet (callers decide how to report them).
    """
    coeff_rows = np.asarray(coeff_rows, dtype=np.complex128)
    n_rows = coeff_rows.shape[0]
    out: list[RootSet | None] = [None] * n_rows

    mx = np.abs(coeff_rows).max(axis=1)
    degrees = np.zeros(n_rows, dtype=np.int64)
    for r in range(n_rows):
        if mx[r] == 0.0:
            degrees[r] = -1  # identically zero
            continue
        keep = np.flatnonzero(np.abs(coeff_rows[r]) > DROP_TOL * mx[r])
        degrees[r] = keep[-1]

    empty = np.zeros(0, dtype=np.complex128)
    for r in np.flatnonzero(degrees == -1):
        out[r] = RootSet(empty, np.zeros(0), False, 0)
    for r in np.flatnonzero(degrees == 0):
        out[r] = RootSet(empty, np.zeros(0), True, 0)

    for d in np.unique(degrees[degrees > 0]):
        rows = np.flatnonzero(degrees == d)
        block = coeff_rows[rows, : d + 1]
        roots, iters, conv = aberth_roots(block)
        # Horner residuals for the whole block at once
        vals = np.broadcast_to(block[:, -1][:, None], roots.shape).copy()
        for k in range(d - 1, -1, -1):
            vals = vals * roots + block[:, k][:, None]
        residuals = np.abs(vals)
        scale = np.abs(block).max(axis=1)
        bound = ROOT_TOL * scale[:, None] * np.maximum(1.0, np.abs(roots)) ** int(d)
        ok = (conv | _residuals_at_floor(block, roots, residuals)) & np.all(residuals <= bound, axis=1)
        for pos, r in enumerate(rows):
            out[r] = RootSet(roots[pos], residuals[pos], bool(ok[pos]), int(iters[pos]))
    return out  # type: ignore[return-value]
