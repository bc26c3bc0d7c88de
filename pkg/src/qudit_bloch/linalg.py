"""Dense complex-matrix kernel.

Matrices are plain ``numpy`` complex arrays. Nothing here mutates its inputs.
The Hermitian eigensolver is a cyclic complex Jacobi iteration so the package
carries its own spectrum computation for the positivity checks.
"""

from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-9
MAX_SWEEPS = 100


class ConvergenceError(ArithmeticError):
    """Raised when the Jacobi iteration does not reach the requested tolerance."""


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a finite 2-D complex array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def _require_square(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")


def kron(a, b) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``Tr(a^dagger b)``."""
    a = as_matrix(a)
    b = as_matrix(b)
    _require_square(a)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    # Tr(a^dagger b) = sum_ij conj(a_ij) b_ij
    return complex(np.vdot(a, b))


def hs_norm(a) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    a = as_matrix(a)
    _require_square(a)
    return float(np.sqrt(max(hs_inner(a, a).real, 0.0)))


def hermiticity_defect(a) -> float:
    """Largest entry of ``|a - a^dagger|``."""
    a = as_matrix(a)
    _require_square(a)
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    return hermiticity_defect(a) <= tol


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def hermitian_eigenvalues(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix in ascending order.

    Cyclic Jacobi: each rotation first removes the phase of the pivot
    ``a[p, q]`` with a diagonal unitary, then annihilates the now-real pivot
    with a plane rotation. Sweeps repeat until the off-diagonal Frobenius
    norm is at most ``tol``.

    Raises
    ------
    ValueError
        If ``a`` is not Hermitian within ``tol``.
    ConvergenceError
        If ``MAX_SWEEPS`` sweeps do not suffice.
    """
    a = as_matrix(a)
    _require_square(a)
    if hermiticity_defect(a) > tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    w = 0.5 * (a + a.conj().T)
    n = w.shape[0]

    for _ in range(MAX_SWEEPS):
        if _off_diagonal_norm(w) <= tol:
            return np.sort(np.diag(w).real)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                app = w[p, p].real
                aqq = w[q, q].real
                theta = (aqq - app) / (2.0 * r)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array(
                    [[c, s], [-s * np.conj(phase), c * np.conj(phase)]],
                    dtype=np.complex128,
                )
                idx = [p, q]
                w[:, idx] = w[:, idx] @ g
                w[idx, :] = g.conj().T @ w[idx, :]
                w[p, q] = w[q, p] = 0.0
    if _off_diagonal_norm(w) <= tol:
        return np.sort(np.diag(w).real)
    raise ConvergenceError(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")


def min_eigenvalue(a, tol: float = DEFAULT_TOL) -> float:
    return float(hermitian_eigenvalues(a, tol)[0])


def is_positive_semidefinite(a, tol: float = DEFAULT_TOL) -> bool:
    """True iff the smallest eigenvalue of the Hermitian matrix is ``>= -tol``."""
    return min_eigenvalue(a, tol) >= -tol


def partial_transpose(a, d: int) -> np.ndarray:
    """Transpose the second factor of a ``d^2 x d^2`` bipartite operator."""
    a = as_matrix(a)
    if a.shape != (d * d, d * d):
        raise ValueError(f"expected a {d * d}x{d * d} matrix, got {a.shape}")
    t = a.reshape(d, d, d, d)
    return t.transpose(0, 3, 2, 1).reshape(d * d, d * d)
