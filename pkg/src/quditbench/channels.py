"""First-order Kraus channels and the perturbative density-matrix expansion.

The truncated Kraus pair for a single collapse operator L at dimensionless
noise strength x = gamma*t is

    E_0 = 1 - (x/2) L^dag L,    E_1 = sqrt(x) L,

which reproduces the exact Lindblad channel up to O(x^2).  Completeness
fails at exactly (x^2/4) (L^dag L)^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lindblad import DensityMatrix, SuperOperator, dissipator, unvec, vec
from .operators import NoiseModel, Operator


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Kraus operators E_0 ... E_K of a channel rho -> sum_k E_k rho E_k^dag.

    For the first-order sets built here, sum_k E_k^dag E_k = 1 holds up to
    O((gamma t)^2); the max deviation is bounded by 3 (gamma t)^2 ||L^dag L||^2.
    """

    ops: tuple[Operator, ...]
    hilbert_dim: int

    def __post_init__(self) -> None:
        if not self.ops:
            raise ValueError("Kraus set must contain at least one operator")
        for op in self.ops:
            if op.dim != self.hilbert_dim:
                raise ValueError(
                    f"Kraus operator dimension {op.dim} != {self.hilbert_dim}"
                )

    def __len__(self) -> int:
        return len(self.ops)

    def apply(self, rho: DensityMatrix) -> DensityMatrix:
        if rho.dim != self.hilbert_dim:
            raise ValueError(f"state dimension {rho.dim} != {self.hilbert_dim}")
        out = np.zeros_like(rho.entries)
        for op in self.ops:
            out = out + op.entries @ rho.entries @ op.entries.conj().T
        out = (out + out.conj().T) / 2
        return DensityMatrix(out, check=False)

    def completeness_defect(self) -> np.ndarray:
        """sum_k E_k^dag E_k - 1."""
        acc = -np.eye(self.hilbert_dim, dtype=complex)
        for op in self.ops:
            acc = acc + op.entries.conj().T @ op.entries
        return acc

    def to_superoperator(self) -> SuperOperator:
        d = self.hilbert_dim
        mat = np.zeros((d * d, d * d), dtype=complex)
        for op in self.ops:
            mat += np.kron(op.entries.conj(), op.entries)
        return SuperOperator(mat, d)


def kraus_first_order(collapse: Operator, gamma_t: float) -> KrausSet:
    """First-order Kraus pair for one collapse operator at strength gamma_t."""
    if gamma_t < 0:
        raise ValueError(f"gamma_t must be non-negative, got {gamma_t}")
    d = collapse.dim
    if gamma_t == 0:
        return KrausSet((Operator(np.eye(d)),), d)
    l = collapse.entries
    e0 = np.eye(d) - (gamma_t / 2) * (l.conj().T @ l)
    e1 = np.sqrt(gamma_t) * l
    return KrausSet((Operator(e0), Operator(e1)), d)


def kraus_multi(noise: NoiseModel, t: float) -> KrausSet:
    """First-order Kraus set for several collapse terms over time t.

    Supports heterogeneous rates: E_0 = 1 - sum_k (gamma_k t / 2) L_k^dag L_k
    and E_k = sqrt(gamma_k t) L_k, one per noise term.
    """
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    d = noise.dim
    e0 = np.eye(d, dtype=complex)
    tail = []
    for gamma, op in noise.terms:
        l = op.entries
        e0 = e0 - (gamma * t / 2) * (l.conj().T @ l)
        if gamma * t > 0:
            tail.append(Operator(np.sqrt(gamma * t) * l))
    return KrausSet((Operator(e0), *tail), d)


def _commutator_superoperator(h: Operator) -> np.ndarray:
    eye = np.eye(h.dim)
    return np.kron(eye, h.entries) - np.kron(h.entries.T, eye)


def expansion_terms(
    h: Operator, noise: NoiseModel, order: int
) -> dict[tuple[int, int], np.ndarray]:
    """Superoperator coefficients Phi_lk of the series rho* + sum rho_lk gamma^l t^k.

    The recursion is closed: rho_lk depends on time only through the
    noiseless state rho*(t), whose derivative is -i[H, rho*], so every
    time derivative becomes a commutator substitution.  With A = [H, .]:

        Phi_11 = D
        Phi_l1 = 0                                   for l >= 2
        k Phi_1k = -i (A Phi_1(k-1) - Phi_1(k-1) A)  for k >= 2
        k Phi_lk = -i (A Phi_l(k-1) - Phi_l(k-1) A) + D Phi_(l-1)(k-1)

    For H = 0 this collapses to Phi_kk = D^k / k! (all mixed terms vanish).
    Returns {(l, k): matrix} for 1 <= l <= k <= order.
    """
    if order not in (1, 2, 3):
        raise ValueError(f"unsupported expansion order {order}; must be 1, 2 or 3")
    d = h.dim
    diss = dissipator(noise)
    comm = _commutator_superoperator(h)
    zero = np.zeros((d * d, d * d), dtype=complex)
    terms: dict[tuple[int, int], np.ndarray] = {(1, 1): diss}
    for k in range(2, order + 1):
        for l in range(1, k + 1):
            prev_t = terms.get((l, k - 1), zero)
            val = -1j * (comm @ prev_t - prev_t @ comm)
            if l >= 2:
                val = val + diss @ terms.get((l - 1, k - 1), zero)
            terms[(l, k)] = val / k
    return terms


def perturbative_expansion(
    rho_star: DensityMatrix,
    h: Operator,
    noise: NoiseModel,
    gamma: float,
    t: float,
    order: int,
) -> DensityMatrix:
    """Series approximation of the noisy state around the noiseless target.

    ``rho_star`` is the noiseless solution at time t; the master equation is
    drho/dt = -i[H, rho] + gamma * (dissipator of ``noise``), i.e. ``gamma``
    is the global expansion strength multiplying the (possibly weighted)
    noise terms.  All monomials gamma^l t^k with k <= order are retained.
    """
    if rho_star.dim != h.dim:
        raise ValueError(f"state dimension {rho_star.dim} != Hamiltonian dimension {h.dim}")
    terms = expansion_terms(h, noise, order)
    out = vec(rho_star.entries).astype(complex)
    base = vec(rho_star.entries)
    for (l, k), phi in terms.items():
        out = out + (gamma ** l) * (t ** k) * (phi @ base)
    mat = unvec(out)
    mat = (mat + mat.conj().T) / 2
    return DensityMatrix(mat, check=False)
