import numpy as np
import pytest

from quditbench import (
    DensityMatrix,
    NoiseModel,
    Operator,
    apply_channel,
    choi_matrix,
    liouvillian,
    propagate,
    rk4_propagate,
    spin_xy,
    spin_z,
    unitary_superoperator,
)
from quditbench.lindblad import SuperOperator, unvec, vec


def zero_h(d):
    return Operator(np.zeros((d, d)))


def dephasing_generator(d, gamma=1.0):
    return liouvillian(zero_h(d), NoiseModel.single(gamma, spin_z(d)))


def test_vec_roundtrip_column_stacking():
    m = np.arange(9).reshape(3, 3).astype(complex)
    v = vec(m)
    assert v[1] == m[1, 0]  # column-stacking: fast index runs down columns
    assert np.array_equal(unvec(v), m)
    a, b, x = (np.random.default_rng(i).standard_normal((3, 3)) for i in range(3))
    assert np.allclose(np.kron(b.T, a) @ vec(x), vec(a @ x @ b))


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(np.array([[0.6, 0.2], [0.1, 0.4]]))  # not Hermitian
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([0.6, 0.6]))  # trace != 1
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.5, -0.5]))  # negative eigenvalue
    rho = DensityMatrix.pure(np.array([1.0, 1.0]))
    assert abs(rho.purity() - 1.0) < 1e-12


def test_liouvillian_trivial():
    gen = liouvillian(zero_h(3), None)
    assert np.abs(gen.matrix).max() == 0.0


def test_liouvillian_validation():
    with pytest.raises(ValueError):
        liouvillian(Operator(np.array([[0, 1], [0, 0]])), None)
    with pytest.raises(ValueError):
        liouvillian(zero_h(2), NoiseModel.single(1.0, spin_z(3)))


def test_qubit_dephasing_rate():
    # off-diagonal decays at gamma/2, i.e. 1/T2 = gamma/2
    gamma, t = 0.8, 1.3
    ch = propagate(liouvillian(zero_h(2), NoiseModel.single(gamma, spin_z(2))), t)
    rho = DensityMatrix.pure(np.array([1.0, 1.0]))
    out = apply_channel(ch, rho)
    ratio = out.entries[0, 1] / rho.entries[0, 1]
    assert abs(ratio - np.exp(-gamma * t / 2)) < 1e-12


def test_qutrit_coherence_rate():
    # rate is (gamma/2)(m - m')^2; outermost coherence of d=3 decays at 2 gamma
    gamma, t = 0.5, 0.7
    ch = propagate(liouvillian(zero_h(3), NoiseModel.single(gamma, spin_z(3))), t)
    rho = DensityMatrix.pure(np.ones(3))
    out = apply_channel(ch, rho)
    ratio = out.entries[0, 2] / rho.entries[0, 2]
    assert abs(ratio - np.exp(-2 * gamma * t)) < 1e-12


def test_propagate_identity_and_errors():
    gen = dephasing_generator(3)
    assert np.allclose(propagate(gen, 0.0).matrix, np.eye(9))
    with pytest.raises(ValueError):
        propagate(gen, -0.1)


def test_propagate_dephasing_qubit():
    ch = propagate(dephasing_generator(2), 0.1)
    rho = DensityMatrix.pure(np.array([1.0, 1.0]))
    out = apply_channel(ch, rho)
    assert abs(abs(out.entries[0, 1] / rho.entries[0, 1]) - np.exp(-0.05)) < 1e-12


def test_propagate_matches_dissipator_series():
    # exp(D t)[rho] = sum_k (t D)^k [rho] / k! with H = 0
    d, gamma_t = 3, 1e-2
    noise = NoiseModel.single(1.0, spin_z(d))
    rho = DensityMatrix.pure(np.arange(1, d + 1).astype(float))
    exact = apply_channel(propagate(liouvillian(zero_h(d), noise), gamma_t), rho)

    def diss(mat):
        l = spin_z(d).entries
        ldl = l.conj().T @ l
        return l @ mat @ l.conj().T - 0.5 * (ldl @ mat + mat @ ldl)

    acc = rho.entries.copy()
    term = rho.entries.copy()
    for k in range(1, 12):
        term = diss(term) * gamma_t / k
        acc = acc + term
    assert np.abs(exact.entries - acc).max() < 1e-14


def test_semigroup_property():
    rng = np.random.default_rng(7)
    for d in (2, 3):
        h = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        h = Operator((h + h.conj().T) / 2, hermitian=True)
        l = Operator(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
        gen = liouvillian(h, NoiseModel.single(0.3, l))
        t1, t2 = 0.37, 0.22
        lhs = propagate(gen, t1 + t2).matrix
        rhs = propagate(gen, t1).matrix @ propagate(gen, t2).matrix
        assert np.linalg.norm(lhs - rhs, 2) < 1e-9


def test_noiseless_propagation_is_unitary_conjugation():
    rng = np.random.default_rng(3)
    d = 3
    h = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = Operator((h + h.conj().T) / 2, hermitian=True)
    t = 0.8
    from scipy.linalg import expm

    u = Operator(expm(-1j * h.entries * t))
    lhs = propagate(liouvillian(h, None), t).matrix
    assert np.abs(lhs - unitary_superoperator(u).matrix).max() < 1e-9


def test_trace_preservation_and_complete_positivity():
    rng = np.random.default_rng(11)
    d = 3
    l = Operator(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    gen = liouvillian(zero_h(d), NoiseModel.single(0.5, l))
    ch = propagate(gen, 0.9)
    for _ in range(5):
        z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        rho = DensityMatrix(z @ z.conj().T / np.trace(z @ z.conj().T))
        out = apply_channel(ch, rho)
        assert abs(out.trace() - 1.0) < 1e-9
    eigs = np.linalg.eigvalsh(choi_matrix(ch))
    assert eigs.min() > -1e-9


def test_choi_of_identity_channel():
    d = 3
    omega = np.eye(d).reshape(-1)  # |Omega> = sum_c |c,c| in the (c,a) layout
    choi = choi_matrix(SuperOperator.identity(d))
    assert np.abs(choi - np.outer(omega, omega)).max() < 1e-12


def test_rk4_cross_check():
    rng = np.random.default_rng(19)
    d = 3
    h = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = Operator((h + h.conj().T) / 2, hermitian=True)
    l = Operator(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    gen = liouvillian(h, NoiseModel.single(0.4, l))
    a = propagate(gen, 0.6).matrix
    b = rk4_propagate(gen, 0.6).matrix
    assert np.abs(a - b).max() < 1e-8


def test_apply_channel_basics():
    d = 3
    rho = DensityMatrix.pure(np.arange(1, d + 1).astype(float))
    assert np.abs(apply_channel(SuperOperator.identity(d), rho).entries - rho.entries).max() < 1e-15
    rng = np.random.default_rng(2)
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, _ = np.linalg.qr(z)
    u = Operator(q)
    out = apply_channel(unitary_superoperator(u), rho)
    assert np.abs(out.entries - q @ rho.entries @ q.conj().T).max() < 1e-12
    with pytest.raises(ValueError):
        apply_channel(SuperOperator.identity(2), rho)


def test_maximally_mixed_is_fixed_point_of_hermitian_dissipator():
    # L = J_x + J_y + J_z is Hermitian, so 1/d is a fixed point
    d = 4
    jx, jy = spin_xy(d)
    l = Operator(jx.entries + jy.entries + spin_z(d).entries, hermitian=True)
    ch = propagate(liouvillian(zero_h(d), NoiseModel.single(1.0, l)), 0.5)
    rho = DensityMatrix.maximally_mixed(d)
    out = apply_channel(ch, rho)
    assert np.abs(out.entries - rho.entries).max() < 1e-12


def test_first_order_agreement():
    # || rho(t) - (rho* - gamma t M) || = O((gamma t)^2)
    d = 4
    jz = spin_z(d)
    rho = DensityMatrix.pure(np.ones(d))
    gen = dephasing_generator(d)
    l = jz.entries
    ldl = l.conj().T @ l
    m = 0.5 * (ldl @ rho.entries + rho.entries @ ldl) - l @ rho.entries @ l.conj().T
    for gt in (1e-5, 1e-6):
        out = apply_channel(propagate(gen, gt), rho)
        residual = np.abs(out.entries - (rho.entries - gt * m)).max()
        assert residual < 10 * gt**2 * np.linalg.norm(l, 2) ** 4


def test_dimension_ceiling():
    with pytest.raises(ValueError):
        liouvillian(zero_h(129), None)
