"""Informational completeness, discriminability, and the dimension
identities relating affine, informational and effect-space dimensions.

Ranks are decided by singular values with a relative cutoff of
1e-10 * sigma_max, so the decisions are scale-free.
"""

from dataclasses import dataclass, field

import numpy as np

from . import channels as ch
from .basis import hermitian_basis
from .core import (
    Effect,
    Observable,
    Theory,
    classical,
    pair,
    quantum,
    spanning_states,
)
from .errors import DimensionMismatch, NotIC
from .quantum import classical_effect, classical_state, projective_experiment

RANK_RCOND = 1e-10


def _rank(rows):
    m = np.asarray(rows)
    if m.size == 0:
        return 0
    sv = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(sv > RANK_RCOND * sv[0]))


def _coord_rows(effects):
    return np.array([e.coords for e in effects])


def ic_rank(obs):
    """Dimension of the span of the observable's effects."""
    return _rank(_coord_rows(obs.effects))


def is_informationally_complete(obs):
    return ic_rank(obs) == obs.theory.effect_dim


def is_minimal_ic(obs):
    """Informationally complete with linearly independent effects."""
    return is_informationally_complete(obs) and len(obs) == obs.theory.effect_dim


def ic_expand(effect, obs, tol=1e-9):
    """Coefficients c_i with effect = sum_i c_i l_i (unique for minimal
    IC observables, minimum-norm otherwise)."""
    if not is_informationally_complete(obs):
        raise NotIC("observable does not span the effect space")
    rows = _coord_rows(obs.effects)
    c, *_ = np.linalg.lstsq(rows.T, effect.coords, rcond=None)
    resid = np.linalg.norm(rows.T @ c - effect.coords)
    if resid > tol:
        raise NotIC(f"expansion residual {resid} above {tol}")
    return c


def is_predictable(e, tol=1e-9):
    """Occurs with certainty on some state and never on another."""
    if e.theory.backend == "classical":
        v = np.real(np.diag(e.matrix))
        return bool(abs(np.max(v) - 1.0) <= tol and abs(np.min(v)) <= tol)
    ev = np.linalg.eigvalsh(e.matrix)
    return bool(abs(ev[-1] - 1.0) <= tol and abs(ev[0]) <= tol)


def is_resolved(e, tol=1e-9):
    """Predictable with a single pure state of certain occurrence."""
    if not is_predictable(e, tol):
        return False
    if e.theory.backend == "classical":
        v = np.real(np.diag(e.matrix))
        return bool(np.sum(np.abs(v - 1.0) <= tol) == 1)
    ev = np.linalg.eigvalsh(e.matrix)
    return bool(np.sum(np.abs(ev - 1.0) <= tol) == 1)


# ---------------------------------------------------------------------------
# reference observables


def sic_povm_qubit():
    """Tetrahedron POVM: four subnormalized projectors along the
    tetrahedral Bloch directions; minimal informationally complete."""
    th = quantum(2)
    dirs = np.array(
        [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float
    ) / np.sqrt(3)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    effs = [
        Effect(th, (np.eye(2) + n[0] * sx + n[1] * sy + n[2] * sz) / 4.0)
        for n in dirs
    ]
    return Observable(tuple(effs))


def pauli_povm_qubit():
    """Six-outcome observable from the +-x, +-y, +-z projectors, each
    weighted by 1/3; informationally complete but not minimal."""
    th = quantum(2)
    vs = [
        np.array([1, 1]) / np.sqrt(2),
        np.array([1, -1]) / np.sqrt(2),
        np.array([1, 1j]) / np.sqrt(2),
        np.array([1, -1j]) / np.sqrt(2),
        np.array([1, 0]),
        np.array([0, 1]),
    ]
    effs = [Effect(th, np.outer(v, np.conj(v)) / 3.0) for v in vs]
    return Observable(tuple(effs))


def minimal_ic_povm(d, eps=None):
    """A minimal informationally complete observable at any dimension:
    d^2 - 1 effects (I + eps B_a) / d^2 over the traceless basis, plus
    the completing effect."""
    th = quantum(d)
    basis = hermitian_basis(d)
    n = d * d
    if eps is None:
        # keep both (I + eps B_a)/n and the completing effect positive
        total = np.sum(basis[1:], axis=0)
        eps = min(1.0 / (2.0 * d), 0.9 / float(np.linalg.norm(total, 2)))
    effs = []
    rest = np.zeros((d, d), dtype=complex)
    for a in range(1, n):
        m = (np.eye(d) + eps * basis[a]) / n
        effs.append(Effect(th, m))
        rest += m
    effs.insert(0, Effect(th, np.eye(d) - rest))
    return Observable(tuple(effs))


def classical_observable(d):
    return Observable(tuple(classical_effect(np.eye(d)[i]) for i in range(d)))


# ---------------------------------------------------------------------------
# informational dimension


def discrimination_witness(theory):
    """Maximal perfectly discriminable family: states, a predictable
    and resolved discriminating observable, and the delta pairing
    matrix, plus the trace certificate that one more state is
    impossible (each discriminating effect needs unit norm so unit
    trace at least, and the traces must sum to the trace of the unit
    effect)."""
    d = theory.d
    if theory.backend == "classical":
        states = [classical_state(np.eye(d)[i]) for i in range(d)]
        obs = classical_observable(d)
    else:
        states = [
            spanning_states(theory)[i] for i in range(d)
        ]  # computational basis projectors come first
        obs = projective_experiment(theory).observable()
    gram = np.array([[pair(w, l) for l in obs.effects] for w in states])
    cert = {
        "pairing_residual": float(np.max(np.abs(gram - np.eye(d)))),
        "effect_trace_sum": float(
            np.real(sum(np.trace(l.matrix) for l in obs.effects))
        ),
        "min_effect_trace": float(
            min(np.real(np.trace(l.matrix)) for l in obs.effects)
        ),
        "upper_bound": d,
    }
    return states, obs, cert


def informational_dimension(theory, tol=1e-9):
    """Maximal cardinality of a perfectly discriminable set of states,
    verified constructively by the witness above."""
    states, obs, cert = discrimination_witness(theory)
    if cert["pairing_residual"] > tol:
        raise AssertionError("discrimination witness failed the delta check")
    assert all(is_predictable(l) and is_resolved(l) for l in obs.effects)
    return len(states)


def affine_state_dimension(theory):
    """Affine dimension of the state set, measured as the rank of the
    differences of a spanning family."""
    states = spanning_states(theory)
    rows = [w.coords - states[0].coords for w in states[1:]]
    return _rank(rows)


def effect_space_dimension(theory):
    """Linear dimension of the generalized-effect space, measured from
    the span of the physical effects (basis elements shifted into the
    cone)."""
    basis = theory.basis()
    rows = [e.reshape(-1) for e in basis]
    mats = np.array([np.concatenate([r.real, r.imag]) for r in rows])
    return _rank(mats)


def transformation_affine_dimension(d):
    """Affine dimension of the convex set of physical transformations
    on the quantum backend, from a deterministic spanning family of
    Choi matrices (contraction maps with rank-one Choi, plus the zero
    map)."""
    th = quantum(d * d)  # reuse single-system spanning vectors on C^{d^2}
    chois = [np.zeros((d * d, d * d), dtype=complex)]
    for w in spanning_states(th):
        chois.append(w.matrix)  # rank-one PSD with unit trace: K^dag K <= I
    basis = hermitian_basis(d * d)
    rows = [
        np.einsum("aij,ji->a", basis, c - chois[0]).real for c in chois[1:]
    ]
    return _rank(rows)


# ---------------------------------------------------------------------------
# composite-system checks


def check_local_observability(d1, d2, local_obs1=None, local_obs2=None):
    """Pairwise products of local minimal IC observables span the
    bipartite effect space (rank (d1 d2)^2)."""
    obs1 = local_obs1 or minimal_ic_povm(d1)
    obs2 = local_obs2 or minimal_ic_povm(d2)
    th12 = quantum(d1 * d2)
    prods = [
        Effect(th12, np.kron(e1.matrix, e2.matrix))
        for e1 in obs1.effects
        for e2 in obs2.effects
    ]
    rank = _rank(_coord_rows(prods))
    return rank == (d1 * d2) ** 2, rank


def _weyl(d, m, n):
    x = np.roll(np.eye(d), 1, axis=0).astype(complex)
    omega = np.exp(2j * np.pi / d)
    z = np.diag(omega ** np.arange(d))
    return np.linalg.matrix_power(x, m) @ np.linalg.matrix_power(z, n)


def generic_ancilla_state(d):
    """Full-rank ancilla preparation with nonzero overlap on every
    displacement direction, so the induced marginal observable is
    informationally complete.  (The maximally mixed ancilla would
    induce the trivial observable.)"""
    m = np.eye(d, dtype=complex)
    for k, (a, b) in enumerate(
        (a, b) for a in range(d) for b in range(d) if (a, b) != (0, 0)
    ):
        w = _weyl(d, a, b)
        # both Hermitian combinations, so the overlap with w itself is
        # nonzero even when w + w^dag vanishes (e.g. anti-Hermitian w)
        m = m + (0.2 / (k + 2.0)) * (w + w.conj().T)
        m = m + (0.1 / (k + 3.0)) * 1j * (w - w.conj().T)
    ev = np.linalg.eigvalsh(m)
    m = m + (abs(min(ev[0], 0.0)) + 0.05) * np.eye(d)
    return m / np.trace(m)


def bell_basis_observable(d):
    """Discriminating observable on system + ancilla: the d^2 rank-one
    projectors onto (I x U_mn)|Omega>."""
    th = quantum(d * d)
    v0 = np.zeros(d * d, dtype=complex)
    for i in range(d):
        v0[i * d + i] = 1.0 / np.sqrt(d)
    effs = []
    for m in range(d):
        for n in range(d):
            u = np.kron(np.eye(d), _weyl(d, m, n))
            v = u @ v0
            effs.append(Effect(th, np.outer(v, v.conj())))
    return Observable(tuple(effs))


def check_bell_ic(d, ancilla=None):
    """A joint discriminating observable plus an ancilla preparation
    induces a minimal IC observable on the system; also checks the
    dimension count adm(S) = idim(S x S) - 1."""
    if ancilla is None:
        ancilla = generic_ancilla_state(d)
    ancilla = np.asarray(ancilla, dtype=complex)
    if ancilla.shape != (d, d):
        raise DimensionMismatch("ancilla must match the system dimension")
    joint = bell_basis_observable(d)
    th = quantum(d)
    margs = []
    for e in joint.effects:
        m = ch.partial_trace(np.kron(np.eye(d), ancilla) @ e.matrix, (d, d), 0)
        margs.append(Effect(th, m))
    induced = Observable(tuple(margs))
    minimal = is_minimal_ic(induced)
    adm = affine_state_dimension(th)
    idim2 = informational_dimension(quantum(d * d))
    return minimal and adm == idim2 - 1


# ---------------------------------------------------------------------------
# the identity table


@dataclass
class DimReport:
    """Measured dimensions and the per-identity comparisons."""

    backend: str
    d1: int
    d2: int
    adm_s: int
    idim_s: int
    dim_pr: int
    adm_s12: int
    idim_s12: int
    adm_t: int
    rows: list = field(default_factory=list)

    def passes(self, name):
        for row_name, lhs, rhs, ok in self.rows:
            if row_name == name:
                return ok
        raise KeyError(name)

    def all_pass(self):
        return all(ok for _, _, _, ok in self.rows)


def dim_identities(d1, d2=None, backend="quantum"):
    """Measure every dimension entering the identity table and compare
    both sides exactly (integer equality)."""
    d2 = d2 or d1
    th1 = Theory(backend, d1)
    th2 = Theory(backend, d2)
    adm1 = affine_state_dimension(th1)
    adm2 = affine_state_dimension(th2)
    idim1 = informational_dimension(th1)
    dim_pr = effect_space_dimension(th1)
    th12 = Theory(backend, d1 * d2)
    adm12 = affine_state_dimension(th12)
    idim12 = informational_dimension(th12)
    thsq = Theory(backend, d1 * d1)
    admsq = affine_state_dimension(thsq)
    idimsq = informational_dimension(thsq)
    if backend == "quantum":
        adm_t = transformation_affine_dimension(d1)
    else:
        adm_t = d1 * d1  # classical instruments: substochastic matrices
    rows = [
        ("D2", dim_pr, adm1 + 1),
        ("D3", adm12, adm1 * adm2 + adm1 + adm2),
        ("D4", adm1, idimsq - 1),
        ("D34", admsq, idimsq**2 - 1),
        ("D34'", adm1, idim1**2 - 1),
        ("tensor", idimsq, idim1**2),
        ("T", adm_t, admsq + 1),
        ("P", dim_pr, idim1**2),
    ]
    report = DimReport(
        backend=backend,
        d1=d1,
        d2=d2,
        adm_s=adm1,
        idim_s=idim1,
        dim_pr=dim_pr,
        adm_s12=adm12,
        idim_s12=idim12,
        adm_t=adm_t,
    )
    report.rows = [(n, int(l), int(r), l == r) for n, l, r in rows]
    return report
