"""Faithfulness of bipartite states and the bilinear-form machinery.

A symmetric joint state Phi defines a real symmetric bilinear form on
generalized effects.  Diagonalizing its Gram matrix in the canonical
Hermitian basis splits the effect space into positive and negative
principal axes; the sign flip of the negative axes is the involution
used downstream as complex conjugation, and the absolute value of the
form is the strictly positive scalar product.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import channels as ch
from .basis import hermitian_basis, to_coords
from .core import Effect, State, Transformation, quantum
from .errors import ConeViolation, DegenerateSplit, NotFaithful
from .quantum import (
    BipartiteState,
    apply_local,
    kraus_to_choi,
    local_state,
    max_entangled,
)

ZERO_CUTOFF = 1e-12
RANK_RCOND = 1e-10


def is_symmetric(phi, tol=1e-12):
    """Phi(A, B) = Phi(B, A): invariance under swapping the subsystems."""
    s = ch.swap_matrix(phi.d)
    return bool(np.max(np.abs(s @ phi.matrix @ s - phi.matrix)) <= tol)


def bilinear_form(phi, a, b):
    """Joint pairing Phi(A, B) with effect A on slot 1 and B on slot 2."""
    m = np.kron(a.matrix, b.matrix)
    return float(np.real(np.trace(phi.matrix @ m)))


@lru_cache(maxsize=8)
def _choi_basis(d):
    """Hermitian basis of the d^2 x d^2 Choi space (generalized
    transformations as a real d^4-dimensional space)."""
    return hermitian_basis(d * d)


def local_action_matrix(phi, slot=1):
    """Matrix of the real-linear map A -> (A, I) Phi from generalized
    transformations (Choi coordinates) to generalized joint weights
    (canonical-basis coordinates)."""
    d = phi.d
    cb = _choi_basis(d)
    jb = hermitian_basis(d * d)
    cols = []
    for h in cb:
        t = Transformation(quantum(d), h, generalized=True)
        out = ch.apply_local_super(t.super, phi.matrix, slot, d)
        cols.append(to_coords(out, jb))
    return np.array(cols).T


def _matrix_rank(m):
    sv = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(sv > RANK_RCOND * sv[0])) if sv[0] > 0 else 0


def is_dynamically_faithful(phi):
    """The local action A -> (A, I) Phi has trivial kernel on
    generalized transformations (full rank d^4)."""
    return _matrix_rank(local_action_matrix(phi)) == phi.d**4


def is_preparationally_faithful(phi):
    """Every joint state is reachable as a local generalized
    transformation acting on Phi with nonzero probability: the local
    action map is surjective onto the joint weight space."""
    m = local_action_matrix(phi)
    return _matrix_rank(m) == phi.d**4


def _is_max_entangled(phi, tol=1e-12):
    return bool(np.max(np.abs(phi.matrix - max_entangled(phi.d).matrix)) <= tol)


def prepare_witness(phi, target, tol=1e-9):
    """Local transformation on slot 1 whose conditioned local state on
    slot 2 is the target, with its success probability.

    For the maximally entangled state the witness is the pure map
    rho -> X rho X^dag with X = sqrt(d p) (target^T)^(1/2) and the
    largest physical probability p = 1 / (d lambda_max(target)).  For
    other faithful states a generalized witness is found by solving the
    local-action linear system; the residual is certified.
    """
    d = phi.d
    rho = target.matrix
    if _is_max_entangled(phi):
        lmax = float(np.linalg.eigvalsh(rho)[-1])
        p = 1.0 / (d * lmax)
        x = np.sqrt(d * p) * ch.herm_sqrt(rho.T)
        return kraus_to_choi(quantum(d), [x]), p
    # generic path: match the slot-2 marginal of the conditioned weight
    cb = _choi_basis(d)
    cols = []
    for h in cb:
        t = Transformation(quantum(d), h, generalized=True)
        out = apply_local(phi, t, 1).matrix
        marg = ch.partial_trace(out, (d, d), 1)
        cols.append(to_coords(marg, hermitian_basis(d)))
    m = np.array(cols).T
    target_coords = to_coords(rho, hermitian_basis(d))
    x, *_ = np.linalg.lstsq(m, target_coords, rcond=None)
    resid = float(np.linalg.norm(m @ x - target_coords))
    if resid > tol:
        raise NotFaithful(f"no local witness at residual {resid}")
    choi = np.einsum("a,aij->ij", x, cb)
    t = Transformation(quantum(d), choi, generalized=True)
    prob = apply_local(phi, t, 1).total
    if prob <= tol:
        raise NotFaithful("witness occurs with vanishing probability")
    if ch.is_psd(choi, 1e-10):
        # rescale to a physical (trace-nonincreasing) transformation
        lam = 1.0 / float(np.linalg.eigvalsh(ch.effect_of_choi(choi))[-1])
        lam = min(lam, 1.0)
        return Transformation(quantum(d), lam * choi), lam * prob
    return t, prob


# ---------------------------------------------------------------------------
# spectral split


@dataclass(frozen=True)
class SpectralSplit:
    """Sign decomposition of the bilinear form in the canonical basis."""

    d: int
    p_plus: np.ndarray
    p_minus: np.ndarray
    signature: tuple
    gram: np.ndarray
    gram_abs: np.ndarray

    @property
    def sigma_matrix(self):
        return self.p_plus - self.p_minus


def spectral_split(phi, cutoff=ZERO_CUTOFF):
    """Diagonalize the Gram matrix of the bilinear form; eigenvalues at
    the zero cutoff raise rather than being assigned a sign (strict
    positivity failing means the input is not faithful)."""
    if not is_symmetric(phi):
        raise NotFaithful("spectral split needs a symmetric joint state")
    d = phi.d
    basis = hermitian_basis(d)
    th = quantum(d)
    effs = [Effect(th, b, generalized=True) for b in basis]
    n = d * d
    gram = np.array(
        [[bilinear_form(phi, effs[i], effs[j]) for j in range(n)] for i in range(n)]
    )
    gram = (gram + gram.T) / 2.0
    w, v = np.linalg.eigh(gram)
    if np.min(np.abs(w)) <= cutoff:
        raise DegenerateSplit(
            f"bilinear-form eigenvalue {np.min(np.abs(w))} at the zero cutoff"
        )
    pos = v[:, w > 0]
    neg = v[:, w < 0]
    p_plus = pos @ pos.T
    p_minus = neg @ neg.T
    gram_abs = (v * np.abs(w)) @ v.T
    return SpectralSplit(
        d=d,
        p_plus=p_plus,
        p_minus=p_minus,
        signature=(int(pos.shape[1]), int(neg.shape[1])),
        gram=gram,
        gram_abs=(gram_abs + gram_abs.T) / 2.0,
    )


def abs_form(split, a, b):
    """|Phi|(A, B), the strictly positive scalar product on effects."""
    ca = to_coords(a.matrix, hermitian_basis(split.d))
    cb = to_coords(b.matrix, hermitian_basis(split.d))
    return float(ca @ split.gram_abs @ cb)


def sigma(split, e, tol=1e-9):
    """Involution on effects: sign flip of the negative principal axes
    (matrix transposition for the maximally entangled split).  Raises
    if a physical input is mapped outside the physical cone."""
    basis = hermitian_basis(split.d)
    coords = split.sigma_matrix @ to_coords(e.matrix, basis)
    out = np.einsum("a,aij->ij", coords, basis)
    result = Effect(e.theory, out, e.generalized)
    if not e.generalized and e.is_physical(tol) and not result.is_physical(tol):
        raise ConeViolation("involution left the physical effect cone")
    return result


def state_sigma(split, omega, tol=1e-9):
    """Involution on states, omega^sigma(A) = omega(sigma(A))."""
    basis = hermitian_basis(split.d)
    coords = split.sigma_matrix @ to_coords(omega.matrix, basis)
    out = np.einsum("a,aij->ij", coords, basis)
    if ch.min_eig(out) < -tol:
        raise ConeViolation("involution left the state cone")
    return State(omega.theory, out / np.real(np.trace(out)))


def conjugate_transformation(t):
    """Extension of the involution to transformations: entrywise Choi
    conjugation (composition-preserving, squares to the identity)."""
    return Transformation(t.theory, ch.conjugate_choi(t.choi), t.generalized)
