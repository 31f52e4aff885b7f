"""Dense complex-matrix helpers and the commutator/anticommutator superoperators."""

import numpy as np

HERMITIAN_TOL = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
# excited state first: sigma_z |e> = +|e>
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def as_matrix(a):
    """Return ``a`` as a square complex ndarray, raising ValueError otherwise."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    return m


def _pair(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def commutator(a, b):
    """[A, B] = AB - BA."""
    a, b = _pair(a, b)
    return a @ b - b @ a


def anticommutator(a, b):
    """{A, B} = AB + BA."""
    a, b = _pair(a, b)
    return a @ b + b @ a


def kron(a, b):
    return np.kron(as_matrix(a), as_matrix(b))


def dag(a):
    return np.conj(a).T


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = as_matrix(m)
    return bool(np.max(np.abs(m - dag(m))) <= tol)


def hermitian_eigenvalues(m, tol=HERMITIAN_TOL):
    """Real eigenvalues of a Hermitian matrix, largest first.

    Raises
    ------
    ValueError
        If ``m`` deviates from Hermiticity by more than ``tol`` elementwise.
    """
    m = as_matrix(m)
    if not is_hermitian(m, tol):
        raise ValueError("matrix is not Hermitian within tolerance")
    herm = 0.5 * (m + dag(m))
    return np.linalg.eigvalsh(herm)[::-1]


def partial_trace_second(m, dim_a, dim_b):
    """Trace out the second factor of a ``dim_a * dim_b`` bipartite operator."""
    m = as_matrix(m)
    if dim_a < 1 or dim_b < 1 or m.shape[0] != dim_a * dim_b:
        raise ValueError(
            f"cannot factor dimension {m.shape[0]} as {dim_a} x {dim_b}")
    return np.einsum("ikjk->ij", m.reshape(dim_a, dim_b, dim_a, dim_b))
