"""Core tensors and the generating-polynomial view of them.

A state tensor psi on n binary indices is a vector of 2^n complex amplitudes.
Its generating polynomial is

    f_psi(z_1, ..., z_n) = sum_x psi_x * prod_{a in supp(x)} z_a,

one affine variable per index. Index a = 1..n of the math maps to bit
(n - a) of the flat amplitude index, i.e. index 1 is the MOST significant
bit: for n = 2 the amplitude order is |00>, |01>, |10>, |11>. Public APIs
take 0-based index positions k = 0..n-1, where position k is math index
k + 1.

Operators on k qubits are stored vectorized as state tensors on 2k indices
with the bra indices first and NO conjugation: the amplitude at flat index
(x, y) is <x|A|y>, so vec(A) is simply A.reshape(-1) in row-major order.

Everything here is dense; n_indices is capped at 28 (2^28 amplitudes).
"""
from __future__ import annotations

import json
from functools import lru_cache

import numpy as np

MAX_INDICES = 28

# Relative threshold below which a derived tensor is flagged as zero.
ZERO_REL_TOL = 1e-14


@lru_cache(maxsize=32)
def bit_weights(n: int) -> np.ndarray:
    """Popcount of every flat index 0..2^n-1 (read-only, cached)."""
    if n == 0:
        w = np.zeros(1, dtype=np.int64)
    else:
        idx = np.arange(2**n, dtype=np.uint32)
        w = np.zeros(2**n, dtype=np.int64)
        for b in range(n):
            w += (idx >> b) & 1
    w.flags.writeable = False
    return w


def parse_bits(y, n: int) -> int:
    """Flat index from an int or a length-n bit sequence (index 1 first)."""
    if isinstance(y, str):
        y = [int(ch) for ch in y]
    if isinstance(y, (int, np.integer)):
        mask = int(y)
    else:
        bits = list(y)
        if len(bits) != n:
            raise ValueError(f"expected {n} bits, got {len(bits)}")
        mask = 0
        for b in bits:
            if int(b) not in (0, 1):
                raise ValueError("bits must be 0 or 1")
            mask = (mask << 1) | int(b)
    if not 0 <= mask < 2 ** max(n, 1):
        raise ValueError("bit pattern out of range")
    return mask


class StateTensor:
    """Dense tensor of 2^n_indices complex amplitudes.

    is_zero marks outputs of operations (contractions, mostly) whose result
    is numerically zero relative to the operation's input scale; it is never
    inferred retroactively.
    """

    __slots__ = ("n_indices", "amplitudes", "is_zero")

    def __init__(self, n_indices: int, amplitudes, is_zero: bool = False):
        if not 0 <= n_indices <= MAX_INDICES:
            raise ValueError(f"n_indices must be in 0..{MAX_INDICES}, got {n_indices}")
        amps = np.asarray(amplitudes, dtype=np.complex128)
        if amps.shape != (2**n_indices,):
            raise ValueError(
                f"expected {2**n_indices} amplitudes for {n_indices} indices, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite (no NaN/Inf)")
        self.n_indices = int(n_indices)
        self.amplitudes = amps.copy()
        self.is_zero = bool(is_zero)

    @classmethod
    def scalar(cls, value) -> "StateTensor":
        return cls(0, [value])

    @classmethod
    def computational_basis(cls, n: int, x: int) -> "StateTensor":
        amps = np.zeros(2**n, dtype=np.complex128)
        amps[x] = 1.0
        return cls(n, amps)

    def copy(self) -> "StateTensor":
        return StateTensor(self.n_indices, self.amplitudes, self.is_zero)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateTensor":
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError("cannot normalize a zero tensor")
        return StateTensor(self.n_indices, self.amplitudes / nrm)

    def bit(self, x: int, position: int) -> int:
        """Bit of flat index x at 0-based index position."""
        return (x >> (self.n_indices - 1 - position)) & 1

    def __repr__(self):
        return f"StateTensor(n_indices={self.n_indices}, norm={self.norm():.6g})"

    # -- JSON interchange: {"n": n, "amplitudes": [[re, im], ...]} --

    def to_json_dict(self) -> dict:
        pairs = [[float(a.real), float(a.imag)] for a in self.amplitudes]
        return {"n": self.n_indices, "amplitudes": pairs}

    @classmethod
    def from_json_dict(cls, d: dict) -> "StateTensor":
        n = int(d["n"])
        amps = np.array([complex(re, im) for re, im in d["amplitudes"]])
        return cls(n, amps)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh)

    @classmethod
    def load(cls, path) -> "StateTensor":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


class MultiRadius:
    """Vector of positive per-index radii defining an open multidisk."""

    __slots__ = ("values",)

    def __init__(self, values):
        vals = np.asarray(values, dtype=np.float64)
        if vals.ndim == 0:
            vals = vals.reshape(1)
        if vals.ndim != 1:
            raise ValueError("radii must be a scalar or 1-d sequence")
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
            raise ValueError("radii must be finite and positive")
        self.values = vals.copy()

    @classmethod
    def for_tensor(cls, r, n_indices: int) -> "MultiRadius":
        """Coerce a scalar, sequence, or MultiRadius to length n_indices."""
        if isinstance(r, MultiRadius):
            vals = r.values
        else:
            vals = np.asarray(r, dtype=np.float64)
        if vals.ndim == 0:
            vals = np.full(max(n_indices, 1), float(vals))
        if n_indices == 0:
            # scalar tensors have no indices; keep a 1-vector for bookkeeping
            return cls(vals[:1]) if len(vals) else cls([1.0])
        if len(vals) != n_indices:
            raise ValueError(f"need {n_indices} radii, got {len(vals)}")
        return cls(vals)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def max(self) -> float:
        return float(self.values.max())

    def __repr__(self):
        return f"MultiRadius({self.values.tolist()})"


# ---------------------------------------------------------------------------
# operations on state tensors

def eval_gen_poly(psi: StateTensor, z) -> complex:
    """Evaluate f_psi at a point z (length n_indices)."""
    return complex(eval_gen_poly_batch(psi, np.asarray(z, dtype=np.complex128).reshape(1, -1))[0])


def eval_gen_poly_batch(psi: StateTensor, z: np.ndarray) -> np.ndarray:
    """Evaluate f_psi at a batch of points, shape (B, n_indices) -> (B,).

    Folds one index at a time: cost O(B * 2^n) instead of O(B * n * 2^n).
    """
    n = psi.n_indices
    z = np.asarray(z, dtype=np.complex128)
    if n == 0:
        if z.ndim != 2 or z.shape[1] != 0:
            z = z.reshape(-1, 0)
        return np.full(z.shape[0], psi.amplitudes[0])
    if z.ndim != 2 or z.shape[1] != n:
        raise ValueError(f"points must have shape (B, {n})")
    # index 1 (most significant) folds first
    acc = psi.amplitudes.reshape(2, -1)
    acc = acc[0][None, :] + z[:, 0, None] * acc[1][None, :]
    for k in range(1, n):
        acc = acc.reshape(z.shape[0], 2, -1)
        acc = acc[:, 0, :] + z[:, k, None] * acc[:, 1, :]
    return acc[:, 0]


def tensor_product(a: StateTensor, b: StateTensor) -> StateTensor:
    """Tensor product; a's indices come first (most significant)."""
    if a.n_indices + b.n_indices > MAX_INDICES:
        raise ValueError("tensor product exceeds the index cap")
    return StateTensor(a.n_indices + b.n_indices, np.kron(a.amplitudes, b.amplitudes))


def contract_pair(psi: StateTensor, i: int, j: int) -> StateTensor:
    """Sum over equal values of indices i and j (0-based positions).

    The output keeps the remaining indices in their original order and is
    flagged is_zero when its largest amplitude is below 1e-14 relative to
    the input's largest amplitude.
    """
    n = psi.n_indices
    if i == j or not (0 <= i < n) or not (0 <= j < n):
        raise ValueError(f"need two distinct index positions in 0..{n-1}")
    arr = psi.amplitudes.reshape((2,) * n)
    out = np.trace(arr, axis1=i, axis2=j).reshape(-1)
    scale = float(np.abs(psi.amplitudes).max()) if psi.amplitudes.size else 0.0
    zero = bool(np.abs(out).max() <= ZERO_REL_TOL * scale) if out.size else True
    return StateTensor(n - 2, out, is_zero=zero)


def diag_scale(psi: StateTensor, s) -> StateTensor:
    """Scale amplitude x by prod_{a in supp(x)} s_a; f_out(z) = f_psi(s*z)."""
    n = psi.n_indices
    s = np.asarray(s, dtype=np.float64)
    if s.ndim == 0:
        s = np.full(n, float(s))
    if s.shape != (n,):
        raise ValueError(f"need {n} scale factors")
    if not np.all(np.isfinite(s)) or np.any(s <= 0):
        raise ValueError("scale factors must be finite and positive")
    factor = np.ones(2**n, dtype=np.complex128)
    idx = np.arange(2**n)
    for k in range(n):
        mask = (idx >> (n - 1 - k)) & 1
        factor = factor * np.where(mask == 1, s[k], 1.0)
    return StateTensor(n, psi.amplitudes * factor)


def equatorial_postselect(psi: StateTensor, position: int, theta: float) -> StateTensor:
    """Project index `position` onto <theta| = (<0| + e^{-i theta}<1|)/sqrt2 and drop it."""
    n = psi.n_indices
    if not 0 <= position < n:
        raise ValueError(f"index position out of range 0..{n-1}")
    arr = np.moveaxis(psi.amplitudes.reshape((2,) * n), position, 0)
    out = (arr[0] + np.exp(-1j * theta) * arr[1]).reshape(-1) / np.sqrt(2.0)
    scale = float(np.abs(psi.amplitudes).max()) if psi.amplitudes.size else 0.0
    zero = bool(np.abs(out).max() <= ZERO_REL_TOL * scale) if out.size else True
    return StateTensor(n - 1, out, is_zero=zero)


def hadamard_all(psi: StateTensor) -> StateTensor:
    """Apply H on every index: the normalized Walsh-Hadamard transform."""
    n = psi.n_indices
    out = psi.amplitudes.copy()
    for k in range(n):
        out = out.reshape(-1, 2, 2**(n - 1 - k))
        top = out[:, 0, :] + out[:, 1, :]
        bot = out[:, 0, :] - out[:, 1, :]
        out = np.stack([top, bot], axis=1)
    return StateTensor(n, out.reshape(-1) / np.sqrt(2.0) ** n)


# ---------------------------------------------------------------------------
# vectorized operators

class OperatorTensor:
    """A k-qubit operator stored as a state tensor on 2k indices (bra first)."""

    __slots__ = ("n_qubits", "tensor", "hermitian")

    def __init__(self, n_qubits: int, tensor: StateTensor, hermitian: bool | None = None):
        if tensor.n_indices != 2 * n_qubits:
            raise ValueError("operator tensor must have 2 * n_qubits indices")
        self.n_qubits = int(n_qubits)
        self.tensor = tensor
        if hermitian:
            m = self.matrix
            if not np.allclose(m, m.conj().T, atol=1e-12 * max(1.0, np.abs(m).max())):
                raise ValueError("hermitian flag set but matrix is not Hermitian")
        self.hermitian = hermitian

    @classmethod
    def from_matrix(cls, m, hermitian: bool | None = None) -> "OperatorTensor":
        m = np.asarray(m, dtype=np.complex128)
        dim = m.shape[0]
        if m.shape != (dim, dim) or dim & (dim - 1):
            raise ValueError("matrix must be square with power-of-two dimension")
        k = dim.bit_length() - 1
        return cls(k, StateTensor(2 * k, m.reshape(-1)), hermitian=hermitian)

    @property
    def matrix(self) -> np.ndarray:
        d = 2**self.n_qubits
        return self.tensor.amplitudes.reshape(d, d)

    def __repr__(self):
        return f"OperatorTensor(n_qubits={self.n_qubits})"


def op_matmul(a: OperatorTensor, b: OperatorTensor) -> OperatorTensor:
    if a.n_qubits != b.n_qubits:
        raise ValueError("operator sizes differ")
    return OperatorTensor.from_matrix(a.matrix @ b.matrix)


def op_trace(a: OperatorTensor) -> complex:
    return complex(np.trace(a.matrix))


def apply_to_state(a: OperatorTensor, psi: StateTensor) -> StateTensor:
    if a.n_qubits != psi.n_indices:
        raise ValueError("operator and state sizes differ")
    return StateTensor(psi.n_indices, a.matrix @ psi.amplitudes)
