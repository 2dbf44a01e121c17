"""Exact propagation of the Lindblad master equation as a dense superoperator.

Vectorization is column-stacking: vec(X)[i + d*j] = X[i, j], so
vec(A X B) = (B^T kron A) vec(X).  The generator of

    drho/dt = -i[H, rho] + sum_k gamma_k (L_k rho L_k^dag - 1/2 {L_k^dag L_k, rho})

is then L = -i (1 kron H - H^T kron 1) + sum_k gamma_k D_k with
D_k = conj(L_k) kron L_k - 1/2 (1 kron L_k^dag L_k + (L_k^dag L_k)^T kron 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .operators import NoiseModel, Operator

# Dense superoperators above this Hilbert dimension are impractical
# (matrices beyond 16384^2); experiments cap out well below.
MAX_HILBERT_DIM = 128

TRACE_ATOL = 1e-12
HERMITICITY_ATOL = 1e-12
POSITIVITY_ATOL = 1e-10


def vec(mat: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(mat).reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    d = round(np.sqrt(v.size))
    return np.asarray(v).reshape((d, d), order="F")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite complex matrix.

    ``check=True`` (the default) enforces the invariants at construction:
    Hermitian within 1e-12, trace 1 within 1e-12, eigenvalues >= -1e-10.
    Channel outputs are built unchecked so that trace drift of approximate
    (e.g. truncated Kraus) channels stays observable.
    """

    entries: np.ndarray
    check: bool = True

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {arr.shape}")
        if self.check:
            if np.abs(arr - arr.conj().T).max() > HERMITICITY_ATOL:
                raise ValueError("density matrix is not Hermitian within 1e-12")
            if abs(np.trace(arr) - 1.0) > TRACE_ATOL:
                raise ValueError(f"density matrix trace {np.trace(arr)} is not 1 within 1e-12")
            if np.linalg.eigvalsh((arr + arr.conj().T) / 2).min() < -POSITIVITY_ATOL:
                raise ValueError("density matrix has eigenvalue below -1e-10")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))

    @classmethod
    def pure(cls, state: np.ndarray) -> "DensityMatrix":
        """Projector onto a (normalized) state vector."""
        psi = np.asarray(state, dtype=complex).reshape(-1)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityMatrix":
        return cls(np.eye(d) / d)


@dataclass(frozen=True, eq=False)
class SuperOperator:
    """Dense d^2 x d^2 matrix acting on column-stacked density matrices."""

    matrix: np.ndarray
    hilbert_dim: int

    def __post_init__(self) -> None:
        arr = np.array(self.matrix, dtype=complex)
        d2 = self.hilbert_dim ** 2
        if arr.shape != (d2, d2):
            raise ValueError(
                f"superoperator for d={self.hilbert_dim} must be {d2}x{d2}, got {arr.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @classmethod
    def identity(cls, d: int) -> "SuperOperator":
        return cls(np.eye(d * d), d)


def unitary_superoperator(u: Operator) -> SuperOperator:
    """Conjugation channel rho -> U rho U^dag."""
    return SuperOperator(np.kron(u.entries.conj(), u.entries), u.dim)


def dissipator(noise: NoiseModel) -> np.ndarray:
    """Dissipator part of the generator (rates included), as a d^2 x d^2 matrix."""
    d = noise.dim
    eye = np.eye(d)
    out = np.zeros((d * d, d * d), dtype=complex)
    for gamma, op in noise.terms:
        l = op.entries
        ldl = l.conj().T @ l
        out += gamma * (
            np.kron(l.conj(), l)
            - 0.5 * (np.kron(eye, ldl) + np.kron(ldl.T, eye))
        )
    return out


def liouvillian(h: Operator, noise: NoiseModel | None = None) -> SuperOperator:
    """Generator of the master equation for Hamiltonian ``h`` and a noise model.

    Raises if ``h`` is not Hermitian or dimensions do not match.
    """
    d = h.dim
    if d > MAX_HILBERT_DIM:
        raise ValueError(f"dimension ceiling exceeded: d={d} > {MAX_HILBERT_DIM}")
    if np.abs(h.entries - h.entries.conj().T).max() > HERMITICITY_ATOL:
        raise ValueError("Hamiltonian must be Hermitian within 1e-12")
    eye = np.eye(d)
    gen = -1j * (np.kron(eye, h.entries) - np.kron(h.entries.T, eye))
    if noise is not None and len(noise):
        if noise.dim != d:
            raise ValueError(f"noise dimension {noise.dim} != Hamiltonian dimension {d}")
        gen = gen + dissipator(noise)
    return SuperOperator(gen, d)


def propagate(gen: SuperOperator, t: float) -> SuperOperator:
    """Channel exp(L t) for a generator L and time t >= 0.

    Diagonal generators (e.g. pure dephasing with H = 0) are exponentiated
    entrywise; the general case uses scipy's scaling-and-squaring expm.
    """
    if t < 0:
        raise ValueError(f"propagation time must be non-negative, got {t}")
    m = gen.matrix
    diag = np.diag(m)
    if np.count_nonzero(m - np.diag(diag)) == 0:
        return SuperOperator(np.diag(np.exp(diag * t)), gen.hilbert_dim)
    return SuperOperator(expm(m * t), gen.hilbert_dim)


def rk4_propagate(gen: SuperOperator, t: float, step_bound: float = 0.01) -> SuperOperator:
    """Fixed-step RK4 integration of dS/dt = L S; cross-check oracle for propagate.

    The step h is chosen so that ||L|| h <= step_bound.
    """
    if t < 0:
        raise ValueError(f"propagation time must be non-negative, got {t}")
    m = gen.matrix
    norm = np.linalg.norm(m, ord=2)
    n_steps = max(1, int(np.ceil(norm * t / step_bound)))
    h = t / n_steps
    s = np.eye(m.shape[0], dtype=complex)
    for _ in range(n_steps):
        k1 = m @ s
        k2 = m @ (s + 0.5 * h * k1)
        k3 = m @ (s + 0.5 * h * k2)
        k4 = m @ (s + h * k3)
        s = s + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    return SuperOperator(s, gen.hilbert_dim)


def apply_channel(channel: SuperOperator, rho: DensityMatrix) -> DensityMatrix:
    """Apply a channel to a state.

    The result is Hermitized by (A + A^dag)/2 to absorb roundoff.  The trace
    is NOT renormalized: trace drift of approximate channels is a signal the
    tests rely on.
    """
    if channel.hilbert_dim != rho.dim:
        raise ValueError(
            f"channel dimension {channel.hilbert_dim} != state dimension {rho.dim}"
        )
    out = unvec(channel.matrix @ vec(rho.entries))
    out = (out + out.conj().T) / 2
    return DensityMatrix(out, check=False)


def choi_matrix(channel: SuperOperator) -> np.ndarray:
    """Choi matrix (id x channel applied to the unnormalized maximally
    entangled state); eigenvalues >= 0 iff the channel is completely positive.
    """
    d = channel.hilbert_dim
    s4 = channel.matrix.reshape(d, d, d, d)  # [b, a, d, c] for S[(ab),(cd)]
    return np.transpose(s4, (3, 1, 2, 0)).reshape(d * d, d * d)
