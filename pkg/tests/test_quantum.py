"""Bipartite states, local actions, no-signaling, and seeded samplers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from opcal import channels as ch
from opcal import core
from opcal import quantum as qm
from opcal.errors import DimensionMismatch


@pytest.mark.parametrize("d", [2, 3])
def test_max_entangled_marginals(d):
    phi = qm.max_entangled(d)
    assert phi.total == pytest.approx(1.0)
    for slot in (1, 2):
        assert_allclose(qm.local_state(phi, slot).matrix, np.eye(d) / d, atol=1e-12)
    # purity
    assert np.real(np.trace(phi.matrix @ phi.matrix)) == pytest.approx(1.0)


def test_product_state_local_action():
    rng = np.random.default_rng(2)
    a = qm.random_state(2, rng)
    b = qm.random_state(2, rng)
    joint = qm.product_state(a, b)
    t = qm.random_cp(2, rng)
    out = qm.apply_local(joint, t, 1)
    assert_allclose(out.matrix, np.kron(t(a.matrix), b.matrix), atol=1e-12)
    out2 = qm.apply_local(joint, t, 2)
    assert_allclose(out2.matrix, np.kron(a.matrix, t(b.matrix)), atol=1e-12)


def test_apply_local_dimension_check():
    phi = qm.max_entangled(2)
    with pytest.raises(DimensionMismatch):
        qm.apply_local(phi, qm.random_cp(3, 0), 1)


def test_condition_local_steering():
    # conditioning half of the singlet-type state steers the far part
    phi = qm.max_entangled(2)
    p0 = np.diag([1.0, 0.0]).astype(complex)
    p, cond = qm.condition_local(phi, qm.projector_map(core.quantum(2), p0), 1)
    assert p == pytest.approx(0.5, abs=1e-12)
    far = qm.local_state(cond, 2).matrix
    assert_allclose(far, p0, atol=1e-12)
    assert ch.trace_distance(far, qm.local_state(phi, 2).matrix) == pytest.approx(0.5)


@given(seed=st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_no_signaling_random(seed):
    rng = np.random.default_rng(seed)
    joint = qm.random_joint_state(2, rng)
    exp = qm.random_experiment(2, rng)
    assert qm.no_signaling_check(joint, exp)


def test_no_signaling_rejects_incomplete():
    phi = qm.max_entangled(2)
    p0 = np.diag([1.0, 0.0]).astype(complex)
    exp = core.Experiment((qm.projector_map(core.quantum(2), p0),))
    with pytest.raises(Exception):
        qm.no_signaling_check(phi, exp)


# ---------------------------------------------------------------------------
# samplers


@given(seed=st.integers(0, 2**32 - 1), d=st.integers(2, 3))
@settings(max_examples=30, deadline=None)
def test_sampled_states_physical(seed, d):
    w = qm.random_state(d, seed)
    ev = np.linalg.eigvalsh(w.matrix)
    assert ev[0] >= -1e-12
    assert np.real(np.trace(w.matrix)) == pytest.approx(1.0)


@given(seed=st.integers(0, 2**32 - 1), d=st.integers(2, 3))
@settings(max_examples=30, deadline=None)
def test_sampled_effects_physical(seed, d):
    e = qm.random_effect(d, seed)
    assert e.is_physical(1e-12)


@given(seed=st.integers(0, 2**32 - 1), d=st.integers(2, 3))
@settings(max_examples=30, deadline=None)
def test_sampled_maps_physical(seed, d):
    t = qm.random_cp(d, seed)
    assert qm.cp_check(t, 1e-9)
    tp = qm.random_cp(d, seed, trace_preserving=True)
    assert_allclose(tp.effect().matrix, np.eye(d), atol=1e-9)


def test_samplers_deterministic():
    a = qm.random_cp(2, 123).choi
    b = qm.random_cp(2, 123).choi
    assert_allclose(a, b)


def test_random_unitary_is_unitary():
    u = qm.random_unitary(3, 5)
    assert_allclose(u @ u.conj().T, np.eye(3), atol=1e-12)


def test_random_experiment_complete():
    exp = qm.random_experiment(2, 11)
    exp.check_complete()
    assert all(b.is_physical() for b in exp.branches)


# ---------------------------------------------------------------------------
# classical backend


def test_classical_map_action():
    m = np.array([[0.5, 1.0], [0.5, 0.0]])
    t = qm.classical_map(m)
    w = qm.classical_state([1.0, 0.0])
    out = core.act(t, w)
    assert_allclose(np.real(np.diag(out.matrix)), [0.5, 0.5], atol=1e-12)
    assert t.is_physical()


def test_classical_sampler_valid():
    rng = np.random.default_rng(8)
    for _ in range(10):
        w = qm.random_classical_state(3, rng)
        assert np.real(np.trace(w.matrix)) == pytest.approx(1.0)
        t = qm.random_classical_map(3, rng)
        assert t.is_physical()
