"""Dense complex linear algebra for small operator matrices.

Matrices are plain ``numpy`` complex arrays. Every predicate takes an explicit
absolute tolerance (default 1e-12).
"""

import numpy as np

MAX_DIM = 256
TOL = 1e-12


def as_matrix(a):
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _square(a):
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix is not square: {m.shape}")
    return m


def adjoint(a):
    return as_matrix(a).conj().T


def max_abs(a):
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def is_hermitian(a, tol=TOL):
    m = _square(a)
    return max_abs(m - m.conj().T) <= tol


def is_antihermitian(a, tol=TOL):
    m = _square(a)
    return max_abs(m + m.conj().T) <= tol


def is_unitary(a, tol=TOL):
    m = _square(a)
    return max_abs(m.conj().T @ m - np.eye(m.shape[0])) <= tol


def commutator(a, b):
    a, b = _square(a), _square(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def kron(a, b):
    a, b = as_matrix(a), as_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if max(rows, cols) > MAX_DIM:
        raise ValueError(f"Kronecker product dimension {rows}x{cols} exceeds cap {MAX_DIM}")
    return np.kron(a, b)


def _taylor_degree(norm):
    """Smallest m with norm**(m+1) / (m+1)! * e below double precision."""
    eps = np.finfo(float).eps / 2
    term, m = 1.0, 0
    while True:
        m += 1
        term *= norm / m
        if term * norm / (m + 1) * np.e <= eps:
            return m


def expm(a):
    """Matrix exponential by scaling and squaring with a Taylor series.

    The argument is scaled by 2**-s so that its 1-norm is at most 1, the
    series is truncated at the degree whose remainder bound drops below
    double precision and evaluated by Horner's rule, and the result is
    squared s times.
    """
    m = _square(a)
    n = m.shape[0]
    if n > MAX_DIM:
        raise ValueError(f"dimension {n} exceeds cap {MAX_DIM}")
    norm = np.linalg.norm(m, 1)
    s = 0
    if norm > 1.0:
        s = int(np.ceil(np.log2(norm)))
    x = m / (2.0 ** s)
    eye = np.eye(n, dtype=complex)
    result = eye
    for k in range(_taylor_degree(norm / 2.0 ** s), 0, -1):
        result = eye + (x @ result) / k
    for _ in range(s):
        result = result @ result
    return result
