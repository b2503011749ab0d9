"""Zero-free multidisk analysis: falsification, exact criteria, scans.

A tensor psi belongs to LY(r) when its generating polynomial has no zeros on
the open multidisk {|z_a| < r_a}. Nothing here can certify membership by
search alone; `falsify_ly` either exhibits a verified zero (a witness) or
reports the effort spent. The check_* functions implement closed criteria
and certify exactly when their (non-strict) inequalities hold.

Falsification tolerance is scale-aware: a point z counts as a zero when
|f(z)| <= 1e-9 * sum_x |psi_x| * prod_a max(1, r_a), and a witness must lie
strictly inside the multidisk (every |z_a| <= r_a * (1 - 1e-12)).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .polys import UnivariatePoly, batched_roots
from .tensor import (
    MultiRadius,
    OperatorTensor,
    StateTensor,
    bit_weights,
    diag_scale,
    eval_gen_poly,
    eval_gen_poly_batch,
    parse_bits,
)

log = logging.getLogger("lytensor")

FALSIFIED = "Falsified"
CERTIFIED = "CertifiedExact"
NOT_FALSIFIED = "NotFalsified"

EQUATORIAL_MAX_INDICES = 16
INTERIOR_MARGIN = 1e-12
TOL_FACTOR = 1e-9


@dataclass
class Witness:
    """A verified zero strictly inside the scanned multidisk."""

    z: np.ndarray
    abs_f: float
    max_abs_z: float
    max_ratio: float
    strategy: str

    def to_json_dict(self) -> dict:
        return {
            "z": [[float(v.real), float(v.imag)] for v in self.z],
            "abs_f": self.abs_f,
            "max_abs_z": self.max_abs_z,
            "max_ratio": self.max_ratio,
            "strategy": self.strategy,
        }


@dataclass
class LYVerdict:
    kind: str
    radii: np.ndarray
    witness: Witness | None = None
    criterion: str | None = None
    effort: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def falsified(self) -> bool:
        return self.kind == FALSIFIED

    @property
    def certified(self) -> bool:
        return self.kind == CERTIFIED

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "radii": [float(r) for r in np.atleast_1d(self.radii)],
            "witness": self.witness.to_json_dict() if self.witness else None,
            "criterion": self.criterion,
            "effort": self.effort,
            "notes": self.notes,
            "data": {k: v for k, v in self.data.items()},
        }


def falsification_tolerance(psi: StateTensor, radii: MultiRadius) -> float:
    scale = float(np.abs(psi.amplitudes).sum())
    grow = float(np.prod(np.maximum(1.0, radii.values))) if psi.n_indices else 1.0
    return TOL_FACTOR * scale * grow


# ---------------------------------------------------------------------------
# equatorial polynomials and the sign-ray scan

def _wht(v: np.ndarray, n: int) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform: out[y] = sum_x v[x] (-1)^{x.y}."""
    out = v.copy()
    for k in range(n):
        out = out.reshape(-1, 2, 2**(n - 1 - k))
        top = out[:, 0, :] + out[:, 1, :]
        bot = out[:, 0, :] - out[:, 1, :]
        out = np.stack([top, bot], axis=1)
    return out.reshape(-1)


def weight_class_matrix(amps: np.ndarray, n: int) -> np.ndarray:
    """Rows y, columns j: sum over |x| = j of amps[x] * (-1)^{x.y}."""
    w = bit_weights(n)
    out = np.empty((2**n, n + 1), dtype=np.complex128)
    for j in range(n + 1):
        out[:, j] = _wht(np.where(w == j, amps, 0.0), n)
    return out


def equatorial_poly(psi: StateTensor, y) -> UnivariatePoly:
    """F_y(z) = 2^{-n/2} sum_x psi_x (-1)^{x.y} z^{|x|}.

    This is the generating polynomial restricted to the sign ray
    z_a = (-1)^{y_a} z, including the 2^{-n/2} postselection prefactor.
    """
    n = psi.n_indices
    mask = parse_bits(y, n)
    w = bit_weights(n)
    # (-1)^{x.y} = parity of popcount(x & mask), via the cached weight table
    par = w[np.bitwise_and(np.arange(2**n), mask)]
    signs = 1.0 - 2.0 * (par % 2)
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    np.add.at(coeffs, w, psi.amplitudes * signs)
    return UnivariatePoly(coeffs * 2.0 ** (-n / 2.0))


@dataclass
class EquatorialScan:
    """Root sets of every sign-ray polynomial of a (possibly scaled) tensor."""

    n: int
    root_sets: list
    skipped_zero: list
    skipped_const: list

    def min_modulus(self) -> tuple[float, int | None]:
        best, best_y = float("inf"), None
        for y, rs in enumerate(self.root_sets):
            if rs is None or rs.roots.size == 0:
                continue
            m = rs.min_modulus()
            if m < best:
                best, best_y = m, y
        return best, best_y


def equatorial_root_scan(psi: StateTensor, radii: MultiRadius | None = None) -> EquatorialScan:
    """Roots of f(t * w_y) over all 2^n sign rays w_y = (r_a * (-1)^{y_a}).

    Roots live in the t plane; with unit radii that is the z plane of the
    equatorial polynomials themselves. Identically zero rows and constant
    rows carry no root information and are reported in the skip lists.
    """
    n = psi.n_indices
    if n > EQUATORIAL_MAX_INDICES:
        raise ValueError(f"equatorial scan limited to {EQUATORIAL_MAX_INDICES} indices")
    amps = psi.amplitudes
    if radii is not None:
        amps = diag_scale(psi, radii.values).amplitudes
    coeff = weight_class_matrix(amps, n)
    sets = batched_roots(coeff)
    skipped_zero = [y for y, rs in enumerate(sets) if not rs.converged and rs.roots.size == 0]
    skipped_const = [
        y for y, rs in enumerate(sets) if rs.converged and rs.roots.size == 0
    ]
    for y in skipped_zero:
        sets[y] = None
        log.info("equatorial scan: sign pattern %s is identically zero, skipped", bin(y))
    bad = [y for y, rs in enumerate(sets) if rs is not None and rs.roots.size and not rs.converged]
    if bad:
        raise RuntimeError(f"root finding failed to converge for sign patterns {bad[:8]}")
    return EquatorialScan(n, sets, skipped_zero, skipped_const)


def min_equatorial_root_modulus(psi: StateTensor) -> tuple[float, int | None]:
    """Smallest |root| over all equatorial polynomials, with its sign pattern.

    Returns (inf, None) when no F_y has a finite root (e.g. |0...0>).
    """
    return equatorial_root_scan(psi).min_modulus()


# ---------------------------------------------------------------------------
# falsification

def _witness_from_ray(psi, radii, tol, t, direction, strategy):
    z = t * direction
    val = abs(eval_gen_poly(psi, z))
    if val > tol:
        return None
    ratios = np.abs(z) / radii.values
    if ratios.size and ratios.max() > 1.0 - INTERIOR_MARGIN:
        return None
    return Witness(
        z=z,
        abs_f=float(val),
        max_abs_z=float(np.abs(z).max()) if z.size else 0.0,
        max_ratio=float(ratios.max()) if ratios.size else 0.0,
        strategy=strategy,
    )


def _scan_ray_roots(psi, radii, tol, directions, strategy):
    """Roots of f restricted to rays z = t * direction; return best witness.

    directions has shape (R, n). Soundness does not rest on the root finder:
    every candidate is re-verified by direct evaluation against tol.
    """
    n = psi.n_indices
    w = bit_weights(n)
    masks = np.stack([(w == j).astype(np.float64) for j in range(n + 1)])
    best = None
    checked = 0
    for block_start in range(0, directions.shape[0], 64):
        dirs = directions[block_start : block_start + 64]
        scaled = np.ones((dirs.shape[0], 2**n), dtype=np.complex128)
        for k in range(n):
            bit = (np.arange(2**n) >> (n - 1 - k)) & 1
            scaled = scaled * np.where(bit == 1, dirs[:, k, None], 1.0)
        coeff = (scaled * psi.amplitudes[None, :]) @ masks.T
        sets = batched_roots(coeff)
        for row, rs in enumerate(sets):
            if rs is None or rs.roots.size == 0:
                continue
            inside = rs.roots[np.abs(rs.roots) <= 1.0 - INTERIOR_MARGIN]
            checked += inside.size
            for t in inside[np.argsort(np.abs(inside))]:
                wit = _witness_from_ray(psi, radii, tol, t, dirs[row], strategy)
                if wit is not None and (best is None or wit.max_ratio < best.max_ratio):
                    best = wit
                    break
    return best, checked


def falsify_ly(psi: StateTensor, r, budget: int = 10000, seed=None, rays: int | None = None) -> LYVerdict:
    """Search for a zero of f_psi strictly inside the multidisk of radius r.

    Three strategies run in order, stopping at the first verified witness:
    (1) the 2^n sign-pattern rays z = t(±r_1, ..., ±r_n), root-solved exactly
    (skipped for n > 16); (2) random diagonal rays z = t(r_a e^{i phi_a}),
    root-solved the same way; (3) uniform random points of the multidisk
    (area-uniform per coordinate). `budget` is the sample count of strategy 3
    and sizes strategy 2 as min(512, max(32, budget // 32)) rays unless
    `rays` overrides it. `seed` is required whenever a random strategy would
    run; draw order is rays first, then samples, so runs are reproducible.

    A NotFalsified verdict is not a membership certificate; it records the
    effort spent and the smallest |f| seen.
    """
    n = psi.n_indices
    radii = MultiRadius.for_tensor(r, n)
    tol = falsification_tolerance(psi, radii)
    effort: list = []
    notes: list = []

    if n == 0:
        if abs(psi.amplitudes[0]) <= tol:
            wit = Witness(np.zeros(0, dtype=complex), abs(psi.amplitudes[0]), 0.0, 0.0, "origin")
            return LYVerdict(FALSIFIED, radii.values, witness=wit, notes=["zero scalar"])
        return LYVerdict(NOT_FALSIFIED, radii.values, notes=["nonzero scalar"])

    # f(0) is one amplitude; test it first
    if abs(psi.amplitudes[0]) <= tol:
        wit = Witness(np.zeros(n, dtype=complex), float(abs(psi.amplitudes[0])), 0.0, 0.0, "origin")
        effort.append({"strategy": "origin", "count": 1})
        return LYVerdict(FALSIFIED, radii.values, witness=wit, effort=effort)

    if rays is None:
        rays = min(512, max(32, budget // 32)) if budget > 0 else 0
    if (budget > 0 or rays > 0) and seed is None:
        raise ValueError("seed is required when random strategies run")

    if n <= EQUATORIAL_MAX_INDICES:
        signs = np.empty((2**n, n))
        for k in range(n):
            signs[:, k] = 1.0 - 2.0 * ((np.arange(2**n) >> (n - 1 - k)) & 1)
        wit, checked = _scan_ray_roots(psi, radii, tol, signs * radii.values[None, :], "sign-rays")
        effort.append({"strategy": "sign-rays", "count": 2**n, "roots_inside": int(checked)})
        if wit is not None:
            return LYVerdict(FALSIFIED, radii.values, witness=wit, effort=effort)
    else:
        notes.append("sign-ray scan skipped (too many indices)")

    rng = np.random.default_rng(seed) if (rays > 0 or budget > 0) else None

    if rays > 0:
        phases = np.exp(2j * np.pi * rng.random((rays, n)))
        wit, checked = _scan_ray_roots(psi, radii, tol, phases * radii.values[None, :], "random-rays")
        effort.append({"strategy": "random-rays", "count": int(rays), "roots_inside": int(checked)})
        if wit is not None:
            return LYVerdict(FALSIFIED, radii.values, witness=wit, effort=effort)

    min_abs_f = float("inf")
    if budget > 0:
        remaining = budget
        while remaining > 0:
            block = min(remaining, 4096)
            remaining -= block
            u = np.minimum(rng.random((block, n)), 1.0 - 2e-12)
            ang = rng.random((block, n))
            z = radii.values[None, :] * np.sqrt(u) * np.exp(2j * np.pi * ang)
            vals = np.abs(eval_gen_poly_batch(psi, z))
            k = int(np.argmin(vals))
            min_abs_f = min(min_abs_f, float(vals[k]))
            if vals[k] <= tol:
                zk = z[k]
                ratios = np.abs(zk) / radii.values
                wit = Witness(zk, float(vals[k]), float(np.abs(zk).max()), float(ratios.max()), "polydisk-samples")
                effort.append({"strategy": "polydisk-samples", "count": budget - remaining})
                return LYVerdict(FALSIFIED, radii.values, witness=wit, effort=effort)
        effort.append({"strategy": "polydisk-samples", "count": budget, "min_abs_f": min_abs_f})

    return LYVerdict(NOT_FALSIFIED, radii.values, effort=effort, notes=notes)


# ---------------------------------------------------------------------------
# exact criteria

def check_single_qubit(psi: StateTensor) -> LYVerdict:
    """LY(1) for one index holds exactly when |psi_0| >= |psi_1|."""
    if psi.n_indices != 1:
        raise ValueError("single-qubit criterion needs exactly one index")
    a0, a1 = psi.amplitudes
    if a0 == 0 and a1 == 0:
        raise ValueError("zero tensor")
    radii = np.ones(1)
    if abs(a0) >= abs(a1):
        return LYVerdict(CERTIFIED, radii, criterion="single-qubit-modulus")
    root = -a0 / a1
    wit = Witness(np.array([root]), 0.0, float(abs(root)), float(abs(root)), "closed-form")
    return LYVerdict(FALSIFIED, radii, witness=wit, criterion="single-qubit-modulus")


def two_qubit_condition(psi: StateTensor) -> tuple[float, float]:
    """(lhs, rhs) of the two-index LY(1) inequality lhs <= rhs."""
    if psi.n_indices != 2:
        raise ValueError("two-qubit criterion needs exactly two indices")
    a00, a01, a10, a11 = psi.amplitudes
    lhs = abs(a10 * np.conj(a00) - a11 * np.conj(a01)) + abs(a11 * a00 - a10 * a01)
    rhs = abs(a00) ** 2 - abs(a01) ** 2
    return float(lhs), float(rhs)


def _two_qubit_zero_minmax(amps: np.ndarray, levels: int = 7):
    """Minimize max(|z1|, |z2|) over the zero set of a two-index tensor.

    The zero set is z1 = -(d + c z2)/(b + a z2) with (d, c, b, a) the
    amplitudes in index order 00, 01, 10, 11. Returns (m, z) with z the
    best zero found; (inf, None) when there are no zeros at all.
    """
    d, c, b, a = amps
    if a == 0 and b == 0:
        if c == 0:
            return float("inf"), None
        z2 = -d / c
        return float(abs(z2)), np.array([0.0, z2])

    def zero_points(z2):
        with np.errstate(divide="ignore", invalid="ignore"):
            z1 = -(d + c * z2) / (b + a * z2)
        m = np.maximum(np.abs(z1), np.abs(z2))
        m = np.where(np.isfinite(m), m, np.inf)
        return z1, m

    center, half = 0.0 + 0.0j, 1.6
    best_m, best_z = float("inf"), None
    for _ in range(levels):
        re = np.linspace(center.real - half, center.real + half, 48)
        im = np.linspace(center.imag - half, center.imag + half, 48)
        z2 = (re[None, :] + 1j * im[:, None]).reshape(-1)
        z1, m = zero_points(z2)
        k = int(np.argmin(m))
        if m[k] < best_m:
            best_m, best_z = float(m[k]), np.array([z1[k], z2[k]])
            center = z2[k]
        half = 3.0 * (2.0 * half / 47)
    return best_m, best_z


def check_two_qubit_ly1(psi: StateTensor) -> LYVerdict:
    """Exact LY(1) criterion for two indices; requires psi_00 != 0.

    Certified iff |psi10 psi00* - psi11 psi01*| + |psi11 psi00 - psi10 psi01|
    <= |psi00|^2 - |psi01|^2 (boundary equality certifies). On failure a
    witness is constructed from the zero curve; if the tightest zero sits on
    the boundary within numerical resolution the verdict stays NotFalsified
    and reports that modulus in data["boundary_modulus"].
    """
    if psi.n_indices != 2:
        raise ValueError("two-qubit criterion needs exactly two indices")
    if psi.amplitudes[0] == 0:
        raise ValueError("criterion requires psi_00 != 0")
    lhs, rhs = two_qubit_condition(psi)
    radii = np.ones(2)
    if lhs <= rhs:
        return LYVerdict(CERTIFIED, radii, criterion="two-qubit-ly1", data={"lhs": lhs, "rhs": rhs})
    m, z = _two_qubit_zero_minmax(psi.amplitudes)
    data = {"lhs": lhs, "rhs": rhs, "boundary_modulus": m}
    if z is not None and m <= 1.0 - INTERIOR_MARGIN:
        val = abs(eval_gen_poly(psi, z))
        tol = falsification_tolerance(psi, MultiRadius.for_tensor(1.0, 2))
        if val <= tol:
            wit = Witness(z, float(val), float(np.abs(z).max()), float(np.abs(z).max()), "zero-curve")
            return LYVerdict(FALSIFIED, radii, witness=wit, criterion="two-qubit-ly1", data=data)
    return LYVerdict(
        NOT_FALSIFIED,
        radii,
        criterion="two-qubit-ly1",
        notes=["criterion violated; tightest zero is numerically on the boundary"],
        data=data,
    )


def check_sf_sufficient(psi: StateTensor) -> LYVerdict:
    """Sufficient LY(1) criterion: flip symmetry plus a heavy 0...0 amplitude.

    Certifies when X^{(x)m} psi = sign * conj(psi) entrywise (sign in {+1,-1},
    relative tolerance 1e-10) and |psi_{0..0}| >= (1/4) sum_y |psi_y|.
    Non-satisfaction is NOT a refutation; the verdict stays NotFalsified.
    """
    amps = psi.amplitudes
    nrm = float(np.linalg.norm(amps))
    if nrm == 0:
        raise ValueError("zero tensor")
    flipped = amps[::-1]  # X on every index reverses the flat order
    conj = np.conj(amps)
    k = int(np.argmax(np.abs(amps)))
    sign = None
    for cand in (1.0, -1.0):
        if np.linalg.norm(flipped - cand * conj) <= 1e-10 * nrm:
            sign = cand
            break
    total = float(np.abs(amps).sum())
    # slack so the exact-equality boundary (which certifies) survives rounding
    heavy = abs(amps[0]) >= 0.25 * total - 1e-12 * total
    radii = np.ones(max(psi.n_indices, 1))
    data = {"sign": sign, "heavy_origin": bool(heavy)}
    if sign is not None and heavy:
        return LYVerdict(CERTIFIED, radii, criterion="sufficient-flip-symmetric", data=data)
    notes = []
    if sign is None:
        notes.append("flip symmetry X^m psi = +-conj(psi) fails")
    if not heavy:
        notes.append("|psi_0| < (1/4) sum |psi_y|")
    return LYVerdict(NOT_FALSIFIED, radii, criterion="sufficient-flip-symmetric", notes=notes, data=data)


def check_pauli_channel(probs) -> tuple[LYVerdict, np.ndarray]:
    """Exact LY(1) criterion for a one-qubit Pauli channel, with its Choi matrix.

    The channel rho -> sum_k p_k sigma_k rho sigma_k keeps LY(1) states in
    LY(1) exactly when min(p0, p3) >= max(p1, p2), with p = (p_I, p_X,
    p_Y, p_Z). Returns the verdict and the 4x4 Choi matrix in row order
    00, 01, 10, 11.
    """
    p = np.asarray(probs, dtype=np.float64)
    if p.shape != (4,) or np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-12:
        raise ValueError("need four nonneg probabilities summing to 1")
    p0, p1, p2, p3 = p
    choi = np.array(
        [
            [p0 + p3, 0.0, 0.0, p0 - p3],
            [0.0, p1 + p2, p1 - p2, 0.0],
            [0.0, p1 - p2, p1 + p2, 0.0],
            [p0 - p3, 0.0, 0.0, p0 + p3],
        ]
    )
    radii = np.ones(1)
    data = {"probs": p.tolist()}
    if min(p0, p3) >= max(p1, p2):
        return LYVerdict(CERTIFIED, radii, criterion="pauli-channel", data=data), choi
    return (
        LYVerdict(
            NOT_FALSIFIED,
            radii,
            criterion="pauli-channel",
            notes=["min(p0,p3) < max(p1,p2): channel can leave LY(1)"],
            data=data,
        ),
        choi,
    )


def apply_pauli_channel(op: OperatorTensor, probs, qubit: int) -> OperatorTensor:
    """rho -> sum_k p_k sigma_k rho sigma_k on one qubit of an operator."""
    p = np.asarray(probs, dtype=np.float64)
    n = op.n_qubits
    if not 0 <= qubit < n:
        raise ValueError("qubit out of range")
    paulis = [
        np.eye(2, dtype=complex),
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    ]
    rho = op.matrix.reshape((2,) * (2 * n))
    out = np.zeros_like(rho)
    for pk, sig in zip(p, paulis):
        if pk == 0:
            continue
        t = np.tensordot(sig, rho, axes=([1], [qubit]))
        t = np.moveaxis(t, 0, qubit)
        # ket side contracts sigma[b, y]: (sigma rho sigma)[x,y] sums sigma[b,y]
        t = np.tensordot(t, sig, axes=([n + qubit], [0]))
        t = np.moveaxis(t, -1, n + qubit)
        out = out + pk * t
    return OperatorTensor.from_matrix(out.reshape(2**n, 2**n))


def schur_projector(z) -> OperatorTensor:
    """P = |z><z| - X^{(x)n} |z*><z*| X^{(x)n} with |z> = (x)_a (|0> + z_a^* |1>).

    For z in the open unit multidisk the vectorized P lies in LY(1).
    """
    z = np.asarray(z, dtype=np.complex128)
    n = len(z)
    if np.any(np.abs(z) >= 1.0):
        raise ValueError("schur_projector needs every |z_a| < 1")
    ket = np.ones(2**n, dtype=np.complex128)
    flip = np.ones(2**n, dtype=np.complex128)
    idx = np.arange(2**n)
    for a in range(n):
        bit = (idx >> (n - 1 - a)) & 1
        ket *= np.where(bit == 1, np.conj(z[a]), 1.0)
        flip *= np.where(bit == 1, 1.0, z[a])  # X|z*> puts z_a on the 0 branch
    mat = np.outer(ket, ket.conj()) - np.outer(flip, flip.conj())
    return OperatorTensor.from_matrix(mat, hermitian=True)


def robustness_bound(n: int, r: float) -> float:
    """Perturbation norm below which LY(r) membership survives at radius (1+r)/2.

    bound = 2^{-n/2} (1 + rho^2)^{-n/2} exp(-n (r+1)/(r-1)), rho = (1+r)/2.
    Requires r > 1; at n = 0 the bound is 1.
    """
    if r <= 1:
        raise ValueError("the bound needs r > 1")
    if n == 0:
        return 1.0
    rho = (1.0 + r) / 2.0
    return float(2.0 ** (-n / 2.0) * (1.0 + rho * rho) ** (-n / 2.0) * np.exp(-n * (r + 1.0) / (r - 1.0)))
