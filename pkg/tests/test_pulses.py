import numpy as np
import pytest

from quditbench import (
    ControlBasis,
    HaarSampler,
    NoiseModel,
    Operator,
    PulseSchedule,
    agi_exact,
    gate_infidelity,
    grape_optimize,
    haar_unitary,
    identity,
    liouvillian,
    propagate,
    schedule_to_propagator,
    schedule_unitary,
    spin_z,
    unitary_superoperator,
)
from quditbench.pulses import infidelity_and_gradient


def test_ladder_basis_structure():
    for d in (2, 3, 5):
        basis = ControlBasis.ladder(d)
        assert basis.n_controls == 2 * (d - 1)
        for op in basis.controls:
            assert np.abs(op.entries - op.entries.conj().T).max() < 1e-15
            assert abs(np.trace(op.entries)) < 1e-15
    assert np.abs(ControlBasis.ladder(2).drift.entries).max() == 0.0


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(12)
    for d in (2, 3, 4):
        basis = ControlBasis.ladder(d)
        amps = rng.uniform(-2, 2, size=(8, basis.n_controls))
        target = HaarSampler(d, seed=d).unitary()
        dt = 0.125
        _, grad = infidelity_and_gradient(amps, basis, target, dt)
        eps = 1e-6
        fd = np.empty_like(grad)
        for j in range(amps.shape[0]):
            for k in range(amps.shape[1]):
                up, down = amps.copy(), amps.copy()
                up[j, k] += eps
                down[j, k] -= eps
                fp, _ = infidelity_and_gradient(up, basis, target, dt)
                fm, _ = infidelity_and_gradient(down, basis, target, dt)
                fd[j, k] = (fp - fm) / (2 * eps)
        rel = np.linalg.norm(grad - fd) / np.linalg.norm(fd)
        assert rel < 1e-6, (d, rel)


def test_grape_identity_gate():
    basis = ControlBasis.ladder(3)
    res = grape_optimize(identity(3), basis, n_slots=12, total_time=1.0, goal_infidelity=1e-12, seed=1)
    assert res.converged
    assert res.infidelity < 1e-10
    u = schedule_unitary(res.schedule, basis)
    assert gate_infidelity(u.entries, np.eye(3)) < 1e-10


def test_grape_x_gate():
    basis = ControlBasis.ladder(2)
    target = Operator(np.array([[0, 1], [1, 0]], dtype=complex))
    res = grape_optimize(target, basis, n_slots=10, total_time=1.0, goal_infidelity=1e-8, seed=2)
    assert res.converged and res.infidelity <= 1e-8


def test_grape_cue_gate_regression():
    # empirical convergence baseline: d=4 CUE gate, 64 slots, within 500 iters
    basis = ControlBasis.ladder(4)
    target = haar_unitary(HaarSampler(4, seed=42))
    res = grape_optimize(target, basis, n_slots=64, total_time=1.0, goal_infidelity=1e-6, seed=7, max_iters=500)
    assert res.converged
    assert res.infidelity <= 1e-6
    assert res.iterations <= 500


def test_grape_validation():
    basis = ControlBasis.ladder(2)
    with pytest.raises(ValueError):
        grape_optimize(identity(2), basis, n_slots=0, total_time=1.0)
    with pytest.raises(ValueError):
        grape_optimize(Operator(np.diag([1.0, 0.3])), basis, n_slots=4, total_time=1.0)
    with pytest.raises(ValueError):
        grape_optimize(identity(2), basis, n_slots=4, total_time=1.0, goal_infidelity=0.0)


def test_schedule_scoring_consistency():
    # the optimizer's own score is reproduced by the noiseless propagator
    d = 3
    basis = ControlBasis.ladder(d)
    target = haar_unitary(HaarSampler(d, seed=5))
    res = grape_optimize(target, basis, n_slots=24, total_time=1.0, goal_infidelity=1e-8, seed=3)
    u = schedule_unitary(res.schedule, basis)
    assert abs(gate_infidelity(u.entries, target.entries) - res.infidelity) < 1e-10
    super_noiseless = schedule_to_propagator(res.schedule, basis, None)
    assert np.abs(super_noiseless.matrix - unitary_superoperator(u).matrix).max() < 1e-10


def test_schedule_propagator_trivial_cases():
    d = 3
    basis = ControlBasis.ladder(d)
    zero = PulseSchedule(0.25, np.zeros((4, basis.n_controls)))
    assert np.abs(schedule_to_propagator(zero, basis, None).matrix - np.eye(d * d)).max() < 1e-14
    noise = NoiseModel.single(0.4, spin_z(d))
    with_noise = schedule_to_propagator(zero, basis, noise)
    reference = propagate(liouvillian(Operator(np.zeros((d, d))), noise), 1.0)
    assert np.abs(with_noise.matrix - reference.matrix).max() < 1e-12


def test_schedule_propagator_agi_sanity():
    # a synthesized gate under weak dephasing lands near the universal slope
    d = 2
    basis = ControlBasis.ladder(d)
    target = haar_unitary(HaarSampler(d, seed=8))
    res = grape_optimize(target, basis, n_slots=16, total_time=1.0, goal_infidelity=1e-8, seed=4)
    gt = 1e-4
    chan = schedule_to_propagator(res.schedule, basis, NoiseModel.single(gt, spin_z(d)))
    agi = agi_exact(chan, target)
    assert abs(agi - gt / 6) / (gt / 6) < 0.02


def test_schedule_text_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    sched = PulseSchedule(0.0625, rng.standard_normal((16, 4)))
    path = tmp_path / "schedule.txt"
    sched.save(path)
    loaded = PulseSchedule.load(path)
    assert loaded.slot_duration == sched.slot_duration
    assert np.array_equal(loaded.amplitudes, sched.amplitudes)
    assert loaded.total_time == sched.total_time


def test_schedule_validation():
    with pytest.raises(ValueError):
        PulseSchedule(0.0, np.zeros((4, 2)))
    with pytest.raises(ValueError):
        PulseSchedule(0.1, np.zeros(4))
