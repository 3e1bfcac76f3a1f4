"""Faithful bipartite states, the bilinear form, and the involution."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from opcal import core, faithful
from opcal import quantum as qm
from opcal.errors import DegenerateSplit, NotFaithful

SY = np.array([[0, -1j], [1j, 0]])


def _product_phi(d):
    mixed = np.eye(d) / d
    return qm.product_state(
        core.State(core.quantum(d), mixed), core.State(core.quantum(d), mixed)
    )


@pytest.mark.parametrize("d", [2, 3])
def test_max_entangled_is_faithful(d, phi2, phi3):
    phi = phi2 if d == 2 else phi3
    assert faithful.is_symmetric(phi)
    assert faithful.is_dynamically_faithful(phi)
    assert faithful.is_preparationally_faithful(phi)


@pytest.mark.parametrize("d", [2, 3])
def test_product_state_not_faithful(d):
    phi = _product_phi(d)
    assert faithful.is_symmetric(phi)
    assert not faithful.is_dynamically_faithful(phi)
    assert not faithful.is_preparationally_faithful(phi)


def test_bilinear_form_maxent_oracle(phi2):
    # Phi(A, B) = Tr[E_A E_B^T] / d on the canonical state
    rng = np.random.default_rng(3)
    th = core.quantum(2)
    for _ in range(10):
        a = qm.random_generalized_effect(2, rng)
        b = qm.random_generalized_effect(2, rng)
        got = faithful.bilinear_form(phi2, a, b)
        want = float(np.real(np.trace(a.matrix @ b.matrix.T))) / 2.0
        assert got == pytest.approx(want, abs=1e-12)


@given(seed=st.integers(0, 2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_bilinear_form_symmetric(seed):
    phi = qm.max_entangled(2)
    rng = np.random.default_rng(seed)
    a = qm.random_generalized_effect(2, rng)
    b = qm.random_generalized_effect(2, rng)
    assert faithful.bilinear_form(phi, a, b) == pytest.approx(
        faithful.bilinear_form(phi, b, a), abs=1e-12
    )


# ---------------------------------------------------------------------------
# preparation witness


def test_prepare_witness_pure_oracle(phi2):
    # steering the canonical state to |0><0| succeeds with p = 1/2
    target = core.State(core.quantum(2), np.diag([1.0, 0.0]).astype(complex))
    witness, p = faithful.prepare_witness(phi2, target)
    assert p == pytest.approx(0.5, abs=1e-12)
    assert witness.is_physical(1e-9)
    prob, cond = qm.condition_local(phi2, witness, 1)
    assert prob == pytest.approx(p, abs=1e-12)
    assert_allclose(qm.local_state(cond, 2).matrix, target.matrix, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3])
def test_prepare_witness_random_targets(d, phi2, phi3, rng):
    phi = phi2 if d == 2 else phi3
    for _ in range(10):
        target = qm.random_state(d, rng)
        witness, p = faithful.prepare_witness(phi, target)
        assert 0 < p <= 1 + 1e-12
        prob, cond = qm.condition_local(phi, witness, 1)
        assert prob == pytest.approx(p, abs=1e-9)
        assert_allclose(qm.local_state(cond, 2).matrix, target.matrix, atol=1e-9)


def test_prepare_witness_unfaithful_raises():
    target = qm.random_state(2, 0)
    with pytest.raises(NotFaithful):
        faithful.prepare_witness(_product_phi(2), target)


# ---------------------------------------------------------------------------
# spectral split and involution


def test_spectral_split_qubit_oracle(phi2):
    split = faithful.spectral_split(phi2)
    assert split.signature == (3, 1)
    # the negative principal axis is the antisymmetric Pauli direction
    basis = core.quantum(2).basis()
    idx = [i for i, b in enumerate(basis) if np.allclose(b, SY / np.sqrt(2))]
    assert len(idx) == 1
    e = np.zeros(4)
    e[idx[0]] = 1.0
    assert_allclose(split.p_minus, np.outer(e, e), atol=1e-12)
    # Gram eigenvalues are +-1/d
    assert_allclose(np.sort(np.linalg.eigvalsh(split.gram)), [-0.5, 0.5, 0.5, 0.5])


@pytest.mark.parametrize("d", [2, 3])
def test_abs_gram_floor(d, phi2, phi3):
    split = faithful.spectral_split(phi2 if d == 2 else phi3)
    low = np.linalg.eigvalsh(split.gram_abs)[0]
    assert low == pytest.approx(1.0 / d, abs=1e-12)


@pytest.mark.parametrize("d", [2, 3])
def test_involution_is_transpose_for_maxent(d, phi2, phi3, rng):
    split = faithful.spectral_split(phi2 if d == 2 else phi3)
    s = split.sigma_matrix
    assert_allclose(s @ s, np.eye(d * d), atol=1e-12)
    for _ in range(10):
        e = qm.random_generalized_effect(d, rng)
        assert_allclose(faithful.sigma(split, e).matrix, e.matrix.T, atol=1e-12)


def test_sigma_preserves_physical_cone(phi2, rng):
    split = faithful.spectral_split(phi2)
    for _ in range(10):
        e = qm.random_effect(2, rng)
        assert faithful.sigma(split, e).is_physical(1e-12)
        w = qm.random_state(2, rng)
        out = faithful.state_sigma(split, w)
        assert np.linalg.eigvalsh(out.matrix)[0] >= -1e-12


def test_abs_form_oracle(phi2, rng):
    split = faithful.spectral_split(phi2)
    for _ in range(10):
        e = qm.random_generalized_effect(2, rng)
        want = float(np.real(np.trace(e.matrix @ e.matrix))) / 2.0
        assert faithful.abs_form(split, e, e) == pytest.approx(want, abs=1e-12)
        assert faithful.abs_form(split, e, e) > 0 or np.allclose(e.matrix, 0)


def test_spectral_split_rejects_unfaithful():
    with pytest.raises((DegenerateSplit, NotFaithful)):
        faithful.spectral_split(_product_phi(2))


def test_conjugate_transformation_involutive(rng):
    t = qm.random_cp(2, rng)
    back = faithful.conjugate_transformation(faithful.conjugate_transformation(t))
    assert_allclose(back.choi, t.choi, atol=1e-14)
    # conjugation preserves composition
    s = qm.random_cp(2, rng)
    lhs = faithful.conjugate_transformation(core.compose(t, s)).choi
    rhs = core.compose(
        faithful.conjugate_transformation(t), faithful.conjugate_transformation(s)
    ).choi
    assert_allclose(lhs, rhs, atol=1e-13)


def test_state_involution_consistency(phi2, rng):
    # omega^sigma(A) = omega(sigma(A)) for physical inputs
    split = faithful.spectral_split(phi2)
    for _ in range(10):
        w = qm.random_state(2, rng)
        e = qm.random_effect(2, rng)
        lhs = core.pair(faithful.state_sigma(split, w), e)
        rhs = core.pair(w, faithful.sigma(split, e))
        assert lhs == pytest.approx(rhs, abs=1e-12)
