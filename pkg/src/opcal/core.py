"""Backend-agnostic calculus of states, effects and transformations.

A :class:`Theory` fixes the backend ("quantum" at Hilbert dimension d,
or "classical" as its diagonal restriction) and with it the real linear
space of generalized effects.  States are normalized nonnegative
functionals on effects, transformations act on states by Bayes
conditioning, and three supremum norms (effect, weight, transformation)
give the spaces their Banach structure.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import channels as ch
from .basis import diagonal_basis, hermitian_basis, to_coords
from .errors import (
    BackendMismatch,
    CompletenessError,
    NotCoexistent,
    ZeroProbability,
)

PROB_TOL = 1e-9
EIG_CUTOFF = 1e-12


@dataclass(frozen=True)
class Theory:
    """A finite-dimensional backend: quantum at dimension d, or the
    classical (diagonal) restriction with d outcomes."""

    backend: str
    d: int

    def __post_init__(self):
        if self.backend not in ("quantum", "classical"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.d < 1:
            raise ValueError("dimension must be >= 1")

    @property
    def effect_dim(self):
        """Dimension of the generalized-effect space."""
        return self.d * self.d if self.backend == "quantum" else self.d

    def basis(self):
        if self.backend == "quantum":
            return hermitian_basis(self.d)
        return diagonal_basis(self.d)


def quantum(d):
    return Theory("quantum", d)


def classical(d):
    return Theory("classical", d)


def _check_same(a, b):
    if a.theory != b.theory:
        raise BackendMismatch(f"{a.theory} vs {b.theory}")


@dataclass(frozen=True)
class Effect:
    """An informational equivalence class of transformations, stored as
    a Hermitian matrix.  Physical effects satisfy 0 <= E <= I."""

    theory: Theory
    matrix: np.ndarray
    generalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=complex))

    @property
    def coords(self):
        return to_coords(self.matrix, self.theory.basis())

    def is_physical(self, tol=PROB_TOL):
        ev = np.linalg.eigvalsh(self.matrix)
        return bool(ev[0] >= -tol and ev[-1] <= 1.0 + tol)


@dataclass(frozen=True)
class Weight:
    """Unnormalized state: a nonnegative bounded functional on effects,
    stored as a PSD matrix (generalized weights may be indefinite)."""

    theory: Theory
    matrix: np.ndarray
    generalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=complex))

    @property
    def total(self):
        """Pairing with the unit effect."""
        return float(np.real(np.trace(self.matrix)))

    @property
    def coords(self):
        return to_coords(self.matrix, self.theory.basis())

    def normalize(self, tol=PROB_TOL):
        t = self.total
        if t <= tol:
            raise ZeroProbability(f"total weight {t} below cutoff {tol}")
        return State(self.theory, self.matrix / t)


@dataclass(frozen=True)
class State(Weight):
    """Normalized weight: the unit effect occurs with probability one."""

    def __post_init__(self):
        super().__post_init__()
        if abs(np.trace(self.matrix) - 1.0) > 1e-9:
            raise ValueError("state must have unit total weight")


@dataclass(frozen=True)
class Transformation:
    """A linear map on states/effects, encoded by its Choi matrix.

    Physical transformations are completely positive and
    trace-nonincreasing; generalized ones only Hermiticity-preserving
    (Hermitian Choi).
    """

    theory: Theory
    choi: np.ndarray
    generalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "choi", np.asarray(self.choi, dtype=complex))

    @property
    def super(self):
        return ch.choi_to_super(self.choi)

    def effect(self):
        """The informational equivalence class: dual of the unit effect."""
        return Effect(self.theory, ch.effect_of_choi(self.choi), self.generalized)

    def __call__(self, matrix):
        """Schrodinger action on a (density) matrix."""
        return ch.apply_super(self.super, np.asarray(matrix, dtype=complex))

    def is_physical(self, tol=PROB_TOL):
        if not ch.is_psd(self.choi, tol):
            return False
        ev = np.linalg.eigvalsh(ch.effect_of_choi(self.choi))
        return bool(ev[-1] <= 1.0 + tol)


def identity(theory):
    return Transformation(theory, ch.identity_choi(theory.d))


def zero_map(theory):
    d = theory.d
    return Transformation(theory, np.zeros((d * d, d * d), dtype=complex))


def from_kraus(theory, kraus, generalized=False):
    return Transformation(theory, ch.kraus_to_choi_matrix(kraus), generalized)


@dataclass(frozen=True)
class Experiment:
    """An ordered set of transformation branches {A_j} whose
    probabilities sum to one on every state."""

    branches: tuple

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))

    def deterministic_sum(self):
        t = self.branches[0]
        total = sum(b.choi for b in self.branches)
        return Transformation(t.theory, total)

    def check_complete(self, tol=PROB_TOL):
        s = self.deterministic_sum().effect()
        d = s.theory.d
        if np.max(np.abs(s.matrix - np.eye(d))) > tol:
            raise CompletenessError("branch probabilities do not sum to one")

    def observable(self):
        return Observable(tuple(b.effect() for b in self.branches))


@dataclass(frozen=True)
class Observable:
    """A complete set of effects summing to the unit effect."""

    effects: tuple

    def __post_init__(self):
        object.__setattr__(self, "effects", tuple(self.effects))
        total = sum(e.matrix for e in self.effects)
        d = self.effects[0].theory.d
        if np.max(np.abs(total - np.eye(d))) > 1e-7:
            raise ValueError("effects do not satisfy the completeness relation")

    @property
    def theory(self):
        return self.effects[0].theory

    def __len__(self):
        return len(self.effects)


# ---------------------------------------------------------------------------
# pairing, conditioning, composition


def pair(state, effect):
    """Probability of the effect in the given state (unclamped for
    generalized inputs)."""
    _check_same(state, effect)
    p = float(np.real(np.trace(state.matrix @ effect.matrix)))
    if not (state.generalized or effect.generalized):
        p = min(max(p, 0.0), 1.0) if -PROB_TOL <= p <= 1.0 + PROB_TOL else p
    return p


def act(t, state):
    """Linear action of a transformation on a state; the result is the
    unnormalized conditioned weight."""
    _check_same(t, state)
    out = t(state.matrix)
    return Weight(t.theory, out, t.generalized or state.generalized)


def condition(state, t, tol=PROB_TOL):
    """Bayes conditioning: (probability, conditional state)."""
    w = act(t, state)
    p = w.total
    if p <= tol:
        raise ZeroProbability(f"outcome probability {p} below cutoff {tol}")
    return p, w.normalize(tol)


def evolve_effect(e, t):
    """Heisenberg-picture chaining: the effect of B compose A for
    effect B and transformation A."""
    _check_same(e, t)
    out = ch.apply_super(ch.dual_super(t.super), e.matrix)
    return Effect(e.theory, out, e.generalized or t.generalized)


def compose(a, b):
    """a after b (apply b first)."""
    _check_same(a, b)
    s = a.super @ b.super
    return Transformation(a.theory, ch.super_to_choi(s), a.generalized or b.generalized)


def scale(lam, a):
    """Rescaled transformation: same dynamics, probability times lam."""
    if not a.generalized and not 0.0 <= lam <= 1.0:
        raise ValueError("physical scaling requires 0 <= lam <= 1")
    return Transformation(a.theory, lam * a.choi, a.generalized)


def coexistent(a, b, tol=PROB_TOL):
    """Two physical transformations can occur in one experiment iff
    their sum is a contraction."""
    _check_same(a, b)
    s = Transformation(a.theory, a.choi + b.choi)
    return trans_norm(s) <= 1.0 + tol


def add(a, b, check=True):
    """Coarse-grained transformation "a or b" for coexistent branches."""
    _check_same(a, b)
    generalized = a.generalized or b.generalized
    if check and not generalized and not coexistent(a, b):
        raise NotCoexistent("branches would exceed unit probability")
    return Transformation(a.theory, a.choi + b.choi, generalized)


# ---------------------------------------------------------------------------
# norms


def effect_norm(e):
    """Supremum of |omega(E)| over states: largest |eigenvalue| for the
    quantum backend, largest |entry| for the classical one."""
    if e.theory.backend == "classical":
        return float(np.max(np.abs(np.real(np.diag(e.matrix)))))
    return float(np.max(np.abs(np.linalg.eigvalsh(e.matrix))))


def weight_norm(w):
    """Supremum of |w(E)| over the unit ball of generalized effects.

    Quantum: the ball is {E Hermitian, ||E||_inf <= 1}, so the norm is
    the trace norm.  Classical: the ball is the hypercube |e_i| <= 1,
    so the norm is the l1 norm of the outcome vector (the polytope dual
    is exact here; no linear program is needed).
    """
    if w.theory.backend == "classical":
        return float(np.sum(np.abs(np.real(np.diag(w.matrix)))))
    return float(np.sum(np.abs(np.linalg.eigvalsh(w.matrix))))


def _sub_stochastic(t):
    """Classical action matrix M[i, j] = weight of outcome i given vertex j."""
    d = t.theory.d
    cols = []
    for j in range(d):
        ej = np.zeros((d, d))
        ej[j, j] = 1.0
        cols.append(np.real(np.diag(t(ej))))
    return np.array(cols).T


def trans_norm(t, restarts=16, iters=200, tol=1e-13, seed=7):
    """Operator norm sup over unit-ball effects B of ||B after t||.

    Quantum backend: the supremum equals the induced trace-norm over
    pure inputs, sup_psi ||t(psi)||_1.  For CP maps this is exactly the
    top eigenvalue of the dual unit effect; otherwise it is evaluated by
    alternating maximization over (pure state, unit-ball effect) pairs
    from seeded restarts plus structured starting points, reported when
    the refinements agree (a certified lower bound).
    """
    if t.theory.backend == "classical":
        m = _sub_stochastic(t)
        return float(np.max(np.sum(np.abs(m), axis=0))) if m.size else 0.0
    d = t.theory.d
    if np.max(np.abs(t.choi)) == 0.0:
        return 0.0
    dual_unit = ch.effect_of_choi(t.choi)
    if ch.is_psd(t.choi, 1e-10):
        return float(np.linalg.eigvalsh(dual_unit)[-1])

    sup = t.super
    dual = ch.dual_super(sup)

    def polish(psi):
        val = -np.inf
        for _ in range(iters):
            rho = np.outer(psi, psi.conj())
            out = ch.apply_super(sup, rho)
            w, v = np.linalg.eigh((out + out.conj().T) / 2.0)
            b = (v * np.sign(w)) @ v.conj().T  # optimal unit-ball effect
            dual_b = ch.apply_super(dual, b)
            ww, vv = np.linalg.eigh((dual_b + dual_b.conj().T) / 2.0)
            psi = vv[:, -1]
            new = float(ww[-1])
            if new <= val + tol:
                return max(new, val)
            val = new
        return val

    rng = np.random.default_rng(seed)
    starts = [np.eye(d)[i].astype(complex) for i in range(d)]
    w, v = np.linalg.eigh(dual_unit)
    starts += [v[:, 0], v[:, -1]]
    for _ in range(restarts):
        g = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        starts.append(g / np.linalg.norm(g))
    return max(polish(psi) for psi in starts)


# ---------------------------------------------------------------------------
# equivalences


@lru_cache(maxsize=None)
def spanning_states(theory):
    """A fixed informationally complete family of states; equality of
    pairings on it decides equality on all states.

    Quantum: the d^2 pure states |i>, (|i>+|j>)/sqrt2, (|i>+i|j>)/sqrt2.
    Classical: the d vertices of the simplex.
    """
    d = theory.d
    if theory.backend == "classical":
        out = []
        for i in range(d):
            m = np.zeros((d, d), dtype=complex)
            m[i, i] = 1.0
            out.append(State(theory, m))
        return tuple(out)
    vecs = [np.eye(d)[i].astype(complex) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            vecs.append((np.eye(d)[i] + np.eye(d)[j]) / np.sqrt(2))
            vecs.append((np.eye(d)[i] + 1j * np.eye(d)[j]) / np.sqrt(2))
    return tuple(State(theory, np.outer(v, v.conj())) for v in vecs)


def informational_equiv(a, b, tol=PROB_TOL):
    """Equal occurrence probability in every state."""
    _check_same(a, b)
    ea, eb = a.effect(), b.effect()
    return all(abs(pair(w, ea) - pair(w, eb)) <= tol for w in spanning_states(a.theory))


def dynamical_equiv(a, b, tol=PROB_TOL):
    """Equal conditional states wherever both probabilities are nonzero."""
    _check_same(a, b)
    for w in spanning_states(a.theory):
        pa, pb = act(a, w).total, act(b, w).total
        if pa > tol and pb > tol:
            ra = a(w.matrix) / pa
            rb = b(w.matrix) / pb
            if np.max(np.abs(ra - rb)) > tol:
                return False
    return True
