"""Low-level encodings of linear maps on matrix space.

Conventions (row-major / C-order vec throughout):

* ``vec(X) = X.reshape(-1)`` so ``vec(A X B) = (A kron B^T) vec(X)``.
* superoperator ``S``: ``vec(T(X)) = S @ vec(X)``; for Kraus operators
  {K} one has ``S = sum_k K kron conj(K)``.
* Choi matrix ``C[(i,a),(j,b)] = T(|i><j|)_{ab}`` (input index first);
  for Kraus {K}: ``C = sum_k vec(K^T) vec(K^T)^dag``.  The map is
  completely positive iff C is positive semidefinite, and the dual of
  the unit effect is ``T^*(I) = Tr_out C``.
"""

import numpy as np


def vec(matrix):
    return np.asarray(matrix).reshape(-1)


def unvec(vector, d=None):
    v = np.asarray(vector)
    if d is None:
        d = round(np.sqrt(v.size))
    return v.reshape(d, d)


def kraus_to_choi_matrix(kraus):
    ks = [np.asarray(k, dtype=complex) for k in kraus]
    d = ks[0].shape[0]
    c = np.zeros((d * d, d * d), dtype=complex)
    for k in ks:
        w = vec(k.T)
        c += np.outer(w, w.conj())
    return c


def kraus_to_super(kraus):
    ks = [np.asarray(k, dtype=complex) for k in kraus]
    d = ks[0].shape[0]
    s = np.zeros((d * d, d * d), dtype=complex)
    for k in ks:
        s += np.kron(k, k.conj())
    return s


def choi_to_super(choi):
    d = round(np.sqrt(choi.shape[0]))
    return choi.reshape(d, d, d, d).transpose(1, 3, 0, 2).reshape(d * d, d * d)


def super_to_choi(sup):
    d = round(np.sqrt(sup.shape[0]))
    return sup.reshape(d, d, d, d).transpose(2, 0, 3, 1).reshape(d * d, d * d)


def apply_super(sup, matrix):
    d = matrix.shape[0]
    return (sup @ vec(matrix)).reshape(d, d)


def dual_super(sup):
    """Heisenberg dual: Tr[E T(X)] = Tr[T^*(E) X] for Hermitian E, X."""
    return sup.conj().T


def effect_of_choi(choi):
    """T^*(I) = sum K^dag K, the dual of the unit effect.

    The raw output-trace of C is the transpose (input indices label the
    bra side), so it is transposed back: Tr[effect_of_choi(C) @ rho]
    equals the trace of the map applied to rho.
    """
    d = round(np.sqrt(choi.shape[0]))
    return np.trace(choi.reshape(d, d, d, d), axis1=1, axis2=3).T


def conjugate_choi(choi):
    """Entrywise complex conjugation in the computational basis;
    sends Kraus {K} to {conj(K)}."""
    return choi.conj()


def identity_choi(d):
    return kraus_to_choi_matrix([np.eye(d)])


def is_hermitian(m, tol=1e-12):
    return np.max(np.abs(m - m.conj().T)) <= tol


def min_eig(m):
    return float(np.linalg.eigvalsh((m + m.conj().T) / 2.0)[0])


def is_psd(m, tol=1e-12):
    return min_eig(m) >= -tol


def partial_trace(matrix, dims, keep):
    """Partial trace of a matrix on a tensor product of subsystems.

    dims: tuple of subsystem dimensions; keep: index of the subsystem
    that survives.
    """
    d1, d2 = dims
    t = np.asarray(matrix).reshape(d1, d2, d1, d2)
    if keep == 0:
        return np.trace(t, axis1=1, axis2=3)
    return np.trace(t, axis1=0, axis2=2)


def swap_matrix(d):
    """Unitary swapping the two factors of C^d tensor C^d."""
    s = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            s[j * d + i, i * d + j] = 1.0
    return s


def apply_local_super(sup, joint, slot, d):
    """Apply a single-system superoperator to one slot of a joint
    d^2 x d^2 matrix (the other slot untouched)."""
    t = np.asarray(joint).reshape(d, d, d, d)  # [i1, i2, j1, j2]
    s4 = sup.reshape(d, d, d, d)  # [a, b, i, j]
    if slot == 1:
        out = np.einsum("abij,ixjy->axby", s4, t)
    elif slot == 2:
        out = np.einsum("abij,xiyj->xayb", s4, t)
    else:
        raise ValueError("slot must be 1 or 2")
    return out.reshape(d * d, d * d)


def trace_distance(a, b):
    ev = np.linalg.eigvalsh(np.asarray(a) - np.asarray(b))
    return 0.5 * float(np.sum(np.abs(ev)))


def herm_sqrt(m):
    """Square root of a PSD Hermitian matrix (eigenvalues clipped at 0)."""
    w, v = np.linalg.eigh(np.asarray(m))
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T
