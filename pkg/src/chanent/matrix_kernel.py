"""Dense complex matrix helpers: Kronecker products, partial traces and a
cyclic Jacobi eigensolver for Hermitian matrices.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The tensor
product ``H ⊗ H`` is ordered with the first factor major, so the basis vector
``φ_k ⊗ φ_i`` sits at index ``k * n + i``.

Traces are unnormalized throughout: ``trace(I_n) == n``.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from chanent.errors import ContractViolation, DimensionError

HERM_TOL = 1e-9
EIG_TOL = 1e-9
PSD_TOL = 1e-9

JACOBI_THRESHOLD = 1e-12
JACOBI_MAX_SWEEPS = 100


class Spectrum(NamedTuple):
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(a, *, square: bool = True) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex array.

    Raises:
        DimensionError: if ``a`` is not 2-D, or not square when ``square`` is set.
        ContractViolation: if any entry is NaN or infinite.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.size == 0:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ContractViolation("matrix has non-finite entries")
    return m


def matrix_unit(n: int, i: int, j: int) -> np.ndarray:
    """The matrix unit ``e_ij`` of ``M_n`` (zero-based indices)."""
    e = np.zeros((n, n), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def kron(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b``; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def _factor_dim(m: np.ndarray, n: int) -> None:
    if n < 1 or m.shape != (n * n, n * n):
        raise DimensionError(f"expected a {n * n}x{n * n} matrix, got {m.shape}")


def partial_trace_second(m, n: int) -> np.ndarray:
    """Trace out the second tensor factor of an ``n² × n²`` matrix.

    On product operators ``partial_trace_second(kron(x, y), n) == trace(y) * x``.
    """
    m = as_matrix(m)
    _factor_dim(m, n)
    return np.einsum("kili->kl", m.reshape(n, n, n, n))


def partial_trace_first(m, n: int) -> np.ndarray:
    """Trace out the first tensor factor of an ``n² × n²`` matrix."""
    m = as_matrix(m)
    _factor_dim(m, n)
    return np.einsum("kikj->ij", m.reshape(n, n, n, n))


def hermiticity_defect(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T)))


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    r = abs(apq)
    phase = apq / r
    app = a[p, p].real
    aqq = a[q, q].real
    theta = (aqq - app) / (2.0 * r)
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # First rotate the phase of a[p, q] away, then a real Givens rotation.
    g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ g
    a[idx, :] = g.conj().T @ a[idx, :]
    v[:, idx] = v[:, idx] @ g
    a[p, q] = a[q, p] = 0.0
    a[p, p] = app - t * r
    a[q, q] = aqq + t * r


def hermitian_eig(a, *, herm_tol: float = HERM_TOL) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    The input is symmetrized as ``(a + a*) / 2`` after the Hermiticity check.
    Eigenvalues come back in descending order; ties keep the order produced
    by the sweeps, which is deterministic for identical input.

    Raises:
        ContractViolation: if ``a`` deviates from Hermitian by more than
            ``herm_tol`` in max norm, or the sweeps fail to converge.
    """
    a = as_matrix(a)
    defect = hermiticity_defect(a)
    if defect > herm_tol:
        raise ContractViolation(f"matrix is not Hermitian (max defect {defect:.3g})")
    n = a.shape[0]
    work = 0.5 * (a + a.conj().T)
    vecs = np.eye(n, dtype=np.complex128)
    scale = max(1.0, float(np.max(np.abs(work))))
    off = np.ones((n, n), dtype=bool)
    np.fill_diagonal(off, False)

    for _ in range(JACOBI_MAX_SWEEPS):
        if n == 1 or np.max(np.abs(work[off])) <= JACOBI_THRESHOLD * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(work[p, q]) > 1e-300:
                    _jacobi_rotate(work, vecs, p, q)
    else:
        if np.max(np.abs(work[off])) > JACOBI_THRESHOLD * scale:
            raise ContractViolation("Jacobi sweeps did not converge")

    vals = work.diagonal().real.copy()
    order = np.argsort(-vals, kind="stable")
    return Spectrum(vals[order], vecs[:, order])


def eigvalsh(a, *, herm_tol: float = HERM_TOL) -> np.ndarray:
    """Descending eigenvalues of a Hermitian matrix."""
    return hermitian_eig(a, herm_tol=herm_tol).eigenvalues


def is_psd(a, tol: float = PSD_TOL) -> bool:
    """True iff the smallest eigenvalue of Hermitian ``a`` is at least ``-tol``."""
    return bool(eigvalsh(a)[-1] >= -tol)
