"""Fidelity metrics: state fidelity, average gate infidelity, Haar averages.

The average gate infidelity (AGI) of a channel E attempting a unitary U is
1 - F_bar with F_bar the gate fidelity averaged over Haar-random pure inputs.
Three routes are provided and cross-checked against each other:

* ``agi_kraus``  -- trace formula (d + sum_k |Tr E_k|^2) / (d (d+1)),
* ``agi_exact``  -- deterministic, via the process fidelity of the
  superoperator (the primary number used in all slope fits),
* ``agi_monte_carlo`` -- direct Haar-measure sampling (independent oracle).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lindblad import DensityMatrix, SuperOperator, unitary_superoperator
from .operators import Operator

UNITARITY_ATOL = 1e-10
PURITY_ATOL = 1e-10


@dataclass(eq=False)
class HaarSampler:
    """Reproducible sampler for the circular unitary ensemble in dimension d.

    Uses a splittable seed sequence, so independent child samplers for
    parallel tasks come from ``split`` without shared generator state.
    """

    dim: int
    seed: int
    _seq: np.random.SeedSequence = field(init=False, repr=False)
    _rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("invalid dimension: d must be >= 1")
        self._seq = (
            self.seed
            if isinstance(self.seed, np.random.SeedSequence)
            else np.random.SeedSequence(self.seed)
        )
        self._rng = np.random.Generator(np.random.PCG64(self._seq))

    def split(self, n: int) -> list["HaarSampler"]:
        return [HaarSampler(self.dim, child) for child in self._seq.spawn(n)]

    def unitaries(self, n: int) -> np.ndarray:
        """n Haar-distributed unitaries, shape (n, d, d).

        QR of a complex standard-Gaussian matrix with the R-diagonal phase
        correction (Mezzadri construction).
        """
        d = self.dim
        z = (self._rng.standard_normal((n, d, d)) + 1j * self._rng.standard_normal((n, d, d)))
        z /= np.sqrt(2)
        q, r = np.linalg.qr(z)
        diag = np.einsum("nii->ni", r)
        return q * (diag / np.abs(diag))[:, None, :]

    def unitary(self) -> np.ndarray:
        return self.unitaries(1)[0]

    def states(self, n: int) -> np.ndarray:
        """n Haar (Fubini-Study) random pure state vectors, shape (n, d).

        A normalized complex standard-Gaussian vector has exactly the
        distribution of the first column of a Haar unitary.
        """
        d = self.dim
        z = self._rng.standard_normal((n, d)) + 1j * self._rng.standard_normal((n, d))
        return z / np.linalg.norm(z, axis=1, keepdims=True)

    def state(self) -> np.ndarray:
        return self.states(1)[0]


def haar_unitary(sampler: HaarSampler) -> Operator:
    """One Haar-random unitary as an Operator."""
    return Operator(sampler.unitary())


def _check_state(rho: DensityMatrix, name: str) -> None:
    # loose sanity bounds: near-trace-preserving channel outputs must pass,
    # garbage must not
    arr = rho.entries
    if np.abs(arr - arr.conj().T).max() > 1e-10:
        raise ValueError(f"{name} is not Hermitian")
    if abs(np.trace(arr) - 1.0) > 1e-6:
        raise ValueError(f"{name} has trace {np.trace(arr):.8f}, expected 1")
    if np.linalg.eigvalsh(arr).min() < -1e-6:
        raise ValueError(f"{name} is not positive semidefinite")


def _psd_sqrt(mat: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(mat)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def state_fidelity(rho: DensityMatrix, target: DensityMatrix) -> float:
    """Fidelity of ``rho`` against ``target``.

    Pure targets (purity >= 1 - 1e-10) use the fast form Tr(rho target);
    mixed targets fall back to the Uhlmann formula
    [Tr sqrt(sqrt(rho) target sqrt(rho))]^2.
    """
    if rho.dim != target.dim:
        raise ValueError(f"dimension mismatch {rho.dim} != {target.dim}")
    _check_state(rho, "rho")
    _check_state(target, "target")
    if target.purity() >= 1 - PURITY_ATOL:
        return float(np.real(np.trace(rho.entries @ target.entries)))
    s = _psd_sqrt((rho.entries + rho.entries.conj().T) / 2)
    inner = _psd_sqrt(s @ target.entries @ s)
    return float(np.real(np.trace(inner)) ** 2)


def collapse_variance(target: DensityMatrix, collapse: Operator) -> float:
    """Variance of a collapse operator in a pure target state:
    <L^dag L> - <L^dag><L>.

    Multiplied by gamma*t this is the first-order infidelity of the target
    state under that collapse operator (a fluctuation-dissipation relation);
    the derivation needs rho*^2 = rho*, so mixed targets are rejected.
    """
    if target.dim != collapse.dim:
        raise ValueError(f"dimension mismatch {target.dim} != {collapse.dim}")
    if target.purity() < 1 - PURITY_ATOL:
        raise ValueError("target state must be pure (purity within 1e-10 of 1)")
    l = collapse.entries
    expect_ldl = np.real(np.trace(target.entries @ l.conj().T @ l))
    expect_l = np.trace(target.entries @ l)
    return float(expect_ldl - abs(expect_l) ** 2)


def haar_average_variance(collapse: Operator) -> float:
    """Closed-form Haar average of ``collapse_variance`` over pure states:

        Tr(L^dag L)/(d+1) - |Tr L|^2 / (d (d+1)),

    obtained from the degree-2 Weingarten integrals over U(d).
    """
    l = collapse.entries
    d = collapse.dim
    return float(
        np.real(np.trace(l.conj().T @ l)) / (d + 1)
        - abs(np.trace(l)) ** 2 / (d * (d + 1))
    )


def haar_variance_monte_carlo(
    collapse: Operator, n_samples: int, sampler: HaarSampler
) -> tuple[float, float]:
    """Monte Carlo estimate of the Haar-averaged collapse variance.

    Returns (mean, standard error of the mean); oracle for
    ``haar_average_variance``.
    """
    if sampler.dim != collapse.dim:
        raise ValueError("sampler dimension must match the operator")
    if n_samples < 2:
        raise ValueError("need at least 2 samples")
    psi = sampler.states(n_samples)  # (n, d)
    lpsi = psi @ collapse.entries.T  # row n holds L|psi_n>
    term1 = np.einsum("ni,ni->n", lpsi.conj(), lpsi).real
    term2 = np.abs(np.einsum("ni,ni->n", psi.conj(), lpsi)) ** 2
    samples = term1 - term2
    return float(samples.mean()), float(samples.std(ddof=1) / np.sqrt(n_samples))


def agi_kraus(kraus, d: int | None = None) -> float:
    """Average gate infidelity from Kraus traces:
    1 - (d + sum_k |Tr E_k|^2) / (d (d+1)).
    """
    if len(kraus.ops) == 0:
        raise ValueError("empty Kraus set")
    if d is None:
        d = kraus.hilbert_dim
    elif d != kraus.hilbert_dim:
        raise ValueError(f"dimension {d} != Kraus dimension {kraus.hilbert_dim}")
    total = sum(abs(op.trace()) ** 2 for op in kraus.ops)
    return float(1.0 - (d + total) / (d * (d + 1)))


def _require_unitary(gate: Operator) -> None:
    if not gate.is_unitary(UNITARITY_ATOL):
        raise ValueError("target gate must be unitary within 1e-10")


def process_fidelity(channel: SuperOperator, target_gate: Operator) -> float:
    """Entanglement/process fidelity Tr(S_U^dag S) / d^2 of a channel
    relative to a target unitary."""
    if channel.hilbert_dim != target_gate.dim:
        raise ValueError("channel and target dimensions differ")
    _require_unitary(target_gate)
    d = channel.hilbert_dim
    su = unitary_superoperator(target_gate).matrix
    return float(np.real(np.trace(su.conj().T @ channel.matrix)) / d**2)


def agi_exact(channel: SuperOperator, target_gate: Operator) -> float:
    """Deterministic AGI via the process fidelity, using
    F_bar = (d F_p + 1) / (d + 1)."""
    d = channel.hilbert_dim
    fp = process_fidelity(channel, target_gate)
    return float(1.0 - (d * fp + 1.0) / (d + 1.0))


def process_from_average(agi: float, dim: int) -> float:
    """Convert an average gate infidelity to a process infidelity:
    E_p = (D + 1) * AGI / D."""
    if dim < 1:
        raise ValueError("invalid dimension: D must be >= 1")
    if not 0 <= agi <= 1:
        raise ValueError(f"AGI must lie in [0, 1], got {agi}")
    return float((dim + 1) * agi / dim)


def agi_monte_carlo(
    channel: SuperOperator,
    target_gate: Operator,
    n_samples: int,
    sampler: HaarSampler,
    chunk: int = 20_000,
) -> tuple[float, float]:
    """Monte Carlo AGI over Haar-random pure inputs.

    Each sample is 1 - F(E[rho0], U rho0 U^dag) with rho0 drawn from the
    Fubini-Study measure; returns (mean, standard error of the mean).
    """
    if n_samples < 2:
        raise ValueError("need at least 2 samples")
    if sampler.dim != channel.hilbert_dim:
        raise ValueError("sampler dimension must match the channel")
    _require_unitary(target_gate)
    d = channel.hilbert_dim
    su = unitary_superoperator(target_gate).matrix
    samples = np.empty(n_samples)
    done = 0
    while done < n_samples:
        n = min(chunk, n_samples - done)
        psi = sampler.states(n)  # (n, d)
        # column-stacked projectors: vec|psi><psi|[i + d*j] = psi_i conj(psi_j)
        outer = psi[:, :, None] * psi.conj()[:, None, :]  # [n, i, j]
        vecs = outer.transpose(2, 1, 0).reshape(d * d, n)
        rho_t = channel.matrix @ vecs
        rho_star = su @ vecs
        fid = np.einsum("kn,kn->n", rho_star.conj(), rho_t).real
        samples[done : done + n] = 1.0 - fid
        done += n
    return float(samples.mean()), float(samples.std(ddof=1) / np.sqrt(n_samples))
