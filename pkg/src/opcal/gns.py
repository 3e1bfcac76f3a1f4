"""Operational transpose, conjugate, adjoint, scalar product, and the
GNS representation built on a symmetric faithful bipartite state.

The transposed transformation A' is the unique generalized map on the
second subsystem reproducing the local action of A on the first over
the faithful state; the adjoint composes it with the involution.  The
scalar product between generalized effects turns the effect space into
a complex Hilbert space on which left composition acts as a matrix
algebra satisfying the C*-identity.
"""

from dataclasses import dataclass

import numpy as np

from . import channels as ch
from .basis import hermitian_basis, to_coords
from .core import Effect, Transformation, compose, pair, quantum
from .errors import NotFaithful
from .faithful import (
    SpectralSplit,
    _choi_basis,
    conjugate_transformation,
    is_symmetric,
    local_action_matrix,
    prepare_witness,
    spectral_split,
)
from .quantum import BipartiteState, local_state

TRANSPOSE_RESID = 1e-10


def _choi_coords(t):
    d = t.theory.d
    return to_coords(t.choi, _choi_basis(d))


def _from_choi_coords(d, coords, generalized=True):
    choi = np.einsum("a,aij->ij", np.asarray(coords, dtype=float), _choi_basis(d))
    return Transformation(quantum(d), choi, generalized)


class TransposeSolver:
    """Solves (A, I) Phi = (I, A') Phi; uniqueness requires the state
    to be dynamically faithful, and every solve certifies its residual
    instead of silently accepting a rank-deficient system."""

    def __init__(self, phi):
        self.phi = phi
        self.d = phi.d
        self.l1 = local_action_matrix(phi, slot=1)
        self.l2 = local_action_matrix(phi, slot=2)
        self._pinv2 = np.linalg.pinv(self.l2, rcond=1e-12)

    def transpose(self, t, tol=TRANSPOSE_RESID):
        rhs = self.l1 @ _choi_coords(t)
        x = self._pinv2 @ rhs
        resid = float(np.linalg.norm(self.l2 @ x - rhs))
        scale = max(float(np.linalg.norm(rhs)), 1.0)
        if resid > tol * scale:
            raise NotFaithful(
                f"transpose system residual {resid} (state not faithful)"
            )
        return _from_choi_coords(self.d, x, generalized=True)


def transpose_map(phi, t, tol=TRANSPOSE_RESID):
    return TransposeSolver(phi).transpose(t, tol)


def conjugate_map(t):
    """Complex conjugation: Choi conjugation in the computational
    basis; an exact involution that preserves composition."""
    return conjugate_transformation(t)


def adjoint_map(phi, t, solver=None):
    """A-dagger = conjugate of the transpose; for quantum Kraus {K} on
    the maximally entangled state this is the Heisenberg dual {K^dag}."""
    solver = solver or TransposeSolver(phi)
    return conjugate_map(solver.transpose(t))


def jordan_lift(e):
    """Canonical generalized transformation with a given effect:
    rho -> (E rho + rho E) / 2.  Linear in E, Hermiticity-preserving,
    and its action on the identity also equals E."""
    d = e.theory.d
    eye = np.eye(d)
    sup = 0.5 * (np.kron(e.matrix, eye) + np.kron(eye, e.matrix.conj()))
    return Transformation(e.theory, ch.super_to_choi(sup), generalized=True)


def _inner_with_adjoint(phi, adj, t):
    """Phi|_2(adj after t) for a precomputed adjoint of the left entry."""
    a = compose(adj, t)
    rho2 = local_state(phi, 2)
    return pair(rho2, Effect(rho2.theory, a.effect().matrix, generalized=True))


def _inner_tt(phi, solver, t1, t2):
    """Scalar product between transformations: Phi|_2(t1^dag after t2)."""
    return _inner_with_adjoint(phi, adjoint_map(phi, t1, solver), t2)


@dataclass(frozen=True)
class GnsSpace:
    """The effect Hilbert space carried by a faithful state: spectral
    split, transpose solver, the Gram matrix of the scalar product in
    the canonical Hermitian basis, and the pairing matrix taking Choi
    coordinates of a transformation to its pairings with the lifted
    basis (the scalar product is linear in its right entry, so all
    downstream vectors come from one matrix-vector product)."""

    phi: BipartiteState
    split: SpectralSplit
    solver: TransposeSolver
    gram: np.ndarray
    pairing: np.ndarray
    lifts: tuple

    @property
    def d(self):
        return self.phi.d

    @property
    def dim(self):
        return self.d * self.d


def gns_space(phi):
    """Build the GNS data; requires a symmetric faithful state with a
    strictly positive scalar product (positive definite Gram)."""
    if not is_symmetric(phi):
        raise NotFaithful("GNS construction needs a symmetric joint state")
    split = spectral_split(phi)
    solver = TransposeSolver(phi)
    d = phi.d
    basis = hermitian_basis(d)
    th = quantum(d)
    lifts = tuple(jordan_lift(Effect(th, b, generalized=True)) for b in basis)
    cb = _choi_basis(d)
    pairing = np.empty((d * d, d**4))
    for k, lift in enumerate(lifts):
        adj = adjoint_map(phi, lift, solver)
        pairing[k] = [
            _inner_with_adjoint(phi, adj, Transformation(th, c, generalized=True))
            for c in cb
        ]
    lift_coords = np.array([_choi_coords(l) for l in lifts])
    gram = pairing @ lift_coords.T
    gram = (gram + gram.T) / 2.0
    if np.linalg.eigvalsh(gram)[0] <= 1e-12:
        raise NotFaithful("scalar product is not strictly positive")
    return GnsSpace(
        phi=phi, split=split, solver=solver, gram=gram, pairing=pairing, lifts=lifts
    )


def scalar_product(space, b, a):
    """<B|A> between generalized effects; sesquilinear (conjugation on
    the left entry) on complex coordinate combinations."""
    basis = hermitian_basis(space.d)
    cb = np.einsum("aij,ji->a", basis, b.matrix)
    ca = np.einsum("aij,ji->a", basis, a.matrix)
    return complex(np.conj(cb) @ space.gram @ ca)


def effect_coords(space, e):
    """Coordinates of an effect's GNS vector in the canonical basis."""
    return to_coords(e.matrix, hermitian_basis(space.d))


def transformation_coords(space, t):
    """GNS-vector coordinates of a transformation, from its pairings
    with the canonical lifted basis (two transformations share a vector
    iff their difference has zero norm)."""
    return np.linalg.solve(space.gram, space.pairing @ _choi_coords(t))


def gns_rep(space, t):
    """Matrix of left composition pi(A)|B> = |A after B| in canonical
    coordinates; a homomorphism with pi(identity) = identity."""
    cols = np.array(
        [space.pairing @ _choi_coords(compose(t, lift)) for lift in space.lifts]
    ).T
    return np.linalg.solve(space.gram, cols)


def gns_norm(space, t):
    """Operator norm of the GNS matrix (the C*-algebra norm; distinct
    from the Banach transformation norm of the statistical calculus)."""
    return float(np.linalg.svd(gns_rep(space, t), compute_uv=False)[0])


def cstar_check(space, t):
    """(||A-dagger after A||, ||A||^2) in the GNS norm; the C*-identity
    asserts they coincide."""
    adj = adjoint_map(space.phi, t, space.solver)
    lhs = gns_norm(space, compose(adj, t))
    rhs = gns_norm(space, t) ** 2
    return lhs, rhs


# ---------------------------------------------------------------------------
# Born rule


def state_rep(space, omega):
    """GNS vector representing a state: the adjoint of its preparation
    witness, normalized by the witness probability.

    The transpose alone represents the involution-twisted state; the
    adjoint (conjugate of the transpose) makes the pairing reproduce
    the statistics exactly, consistently with the involution insertion
    in the transformation representation below.
    """
    witness, p = prepare_witness(space.phi, omega)
    adj = adjoint_map(space.phi, witness, space.solver)
    return transformation_coords(space, adj) / p


def born_pair(space, omega, a):
    """Probability of effect a in state omega, computed purely from the
    scalar-product representation."""
    vec_a = transformation_coords(space, space.solver.transpose(jordan_lift(a)))
    vec_w = state_rep(space, omega)
    return float(np.real(np.conj(vec_a) @ space.gram @ vec_w))


def born_triple(space, omega, b, t):
    """omega(B after A) via <B'| pi(A^sigma) |pi(omega)>."""
    vec_b = transformation_coords(space, space.solver.transpose(jordan_lift(b)))
    op = gns_rep(space, conjugate_map(t))
    vec_w = state_rep(space, omega)
    return float(np.real(np.conj(vec_b) @ space.gram @ (op @ vec_w)))
