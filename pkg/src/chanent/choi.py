"""The representative operator of a ucp map and its defining properties.

For a map ``T`` on ``M_n`` the matrix elements are

    p[i, j, k, l] = (T(e_ij) φ_k, φ_l) = T(e_ij)[l, k]

(inner product linear in the first slot). The representative operator is the
``n² × n²`` matrix ``ρ_T = Σ_ij T(e_ij) ⊗ e_ij``, i.e.
``ρ_T[(k, i), (l, j)] = p[i, j, l, k]``. It is positive exactly when ``T`` is
completely positive, and ``partial_trace_second(ρ_T) = T(I)``.

The map is recovered as ``T(x) = tr_2(ρ_T (I ⊗ xᵀ))``. The transpose on the
second factor is what makes a positive ``ρ_T`` and the reconstruction formula
compatible: without it the identity map would need the (indefinite) swap.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from chanent import matrix_kernel as mk
from chanent.channels import Channel, kraus_from_choi, vec, vec_index
from chanent.errors import ValidationError

PARTIAL_TRACE_TOL = 1e-10
PROPERTY_C_TOL = 1e-10
HERMITIAN_TOL = 1e-10
EXTREMAL_TOL = 1e-8
QUADRATIC_SAMPLES = 20


def matrix_elements(t: Channel) -> np.ndarray:
    """All ``n⁴`` values ``p[i, j, k, l] = T(e_ij)[l, k]`` as a 4-index array."""
    n = t.dim
    p = np.empty((n, n, n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            p[i, j] = t.apply(mk.matrix_unit(n, i, j)).T
    return p


def operator_from_elements(p: np.ndarray) -> np.ndarray:
    """Assemble ``ρ[(k, i), (l, j)] = p[i, j, l, k]``."""
    n = p.shape[0]
    return np.transpose(p, (3, 0, 2, 1)).reshape(n * n, n * n)


@dataclass(frozen=True)
class RepresentativeOperator:
    """``ρ_T`` together with the checks of its defining invariants.

    ``positive`` and ``normalized`` record whether ``ρ_T`` is PSD and whether
    its second partial trace is the identity; construction never raises on a
    map that fails them, so the failure can be reported.
    """

    dim: int
    matrix: np.ndarray
    spectrum: np.ndarray
    positive: bool
    normalized: bool

    @property
    def valid(self) -> bool:
        return self.positive and self.normalized

    @property
    def min_eigenvalue(self) -> float:
        return float(self.spectrum[-1])

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def state(self) -> np.ndarray:
        """Unit-trace density matrix ``ρ_T / n`` of the associated state."""
        return self.matrix / self.dim


def representative_operator(t: Channel, tol: float = mk.PSD_TOL) -> RepresentativeOperator:
    """Build ``ρ_T`` from the matrix elements of ``t`` and check its invariants."""
    n = t.dim
    rho = operator_from_elements(matrix_elements(t))
    spectrum = mk.eigvalsh(rho)
    pt = mk.partial_trace_second(rho, n)
    normalized = bool(np.max(np.abs(pt - np.eye(n))) < PARTIAL_TRACE_TOL)
    rho.setflags(write=False)
    return RepresentativeOperator(n, rho, spectrum, bool(spectrum[-1] >= -tol), normalized)


def reconstruct(rho: RepresentativeOperator | np.ndarray, n: int | None = None) -> Channel:
    """Recover the channel ``x ↦ tr_2(ρ (I ⊗ xᵀ))`` as a superoperator.

    Raises:
        ValidationError: if the second partial trace of ``ρ`` is not the identity.
    """
    if isinstance(rho, RepresentativeOperator):
        n, m = rho.dim, rho.matrix
    else:
        m = mk.as_matrix(rho)
        n = int(round(np.sqrt(m.shape[0]))) if n is None else n
    if np.max(np.abs(mk.partial_trace_second(m, n) - np.eye(n))) >= PARTIAL_TRACE_TOL:
        raise ValidationError("representative operator must have partial trace equal to I")
    eye = np.eye(n, dtype=np.complex128)
    s = np.zeros((n * n, n * n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            x = mk.matrix_unit(n, i, j)
            tx = mk.partial_trace_second(m @ np.kron(eye, x.T), n)
            s[:, vec_index(i, j, n)] = vec(tx)
    return Channel(n, "superop", s)


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of the three matrix-element properties.

    ``B`` is the Hermitian relation ``p[i,j,k,l] == conj(p[j,i,l,k])``;
    ``B_literal`` is the same relation without the conjugate and is only
    evaluated (otherwise ``None``) when every matrix element is real.
    """

    A: bool
    B: bool
    C: bool
    B_literal: bool | None
    min_eigenvalue: float
    min_quadratic_form: float
    c_deviation: float
    hermitian_deviation: float

    def all(self) -> bool:
        return self.A and self.B and self.C

    def as_dict(self) -> dict:
        return {
            "A": self.A,
            "B": self.B,
            "C": self.C,
            "B_literal": self.B_literal,
            "min_eigenvalue": self.min_eigenvalue,
            "min_quadratic_form": self.min_quadratic_form,
            "C_deviation": self.c_deviation,
            "B_deviation": self.hermitian_deviation,
        }


def quadratic_form(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> complex:
    """``Σ a_i conj(a_j) b_k conj(b_l) p[i, j, k, l]``."""
    return complex(np.einsum("i,j,k,l,ijkl->", a, a.conj(), b, b.conj(), p))


def verify_properties(
    t: Channel,
    tol: float = mk.PSD_TOL,
    samples: int = QUADRATIC_SAMPLES,
    seed: int = 0,
) -> PropertyReport:
    n = t.dim
    p = matrix_elements(t)
    rho = representative_operator(t, tol)

    rng = np.random.default_rng(seed)
    forms = []
    for _ in range(samples):
        a = rng.normal(size=n) + 1j * rng.normal(size=n)
        b = rng.normal(size=n) + 1j * rng.normal(size=n)
        forms.append(quadratic_form(p, a, b))
    forms = np.array(forms)
    quad_ok = bool(np.all(forms.real >= -tol) and np.all(np.abs(forms.imag) <= tol * 10 + 1e-9))
    min_form = float(forms.real.min()) if samples else 0.0

    swapped = np.transpose(p, (1, 0, 3, 2))
    herm_dev = float(np.max(np.abs(p - swapped.conj())))
    b_literal = None
    if np.max(np.abs(p.imag)) <= HERMITIAN_TOL:
        b_literal = bool(np.max(np.abs(p - swapped)) <= HERMITIAN_TOL)

    c_dev = float(np.max(np.abs(np.einsum("iikl->kl", p) - np.eye(n))))
    return PropertyReport(
        A=rho.positive and quad_ok,
        B=herm_dev <= HERMITIAN_TOL,
        C=c_dev < PROPERTY_C_TOL,
        B_literal=b_literal,
        min_eigenvalue=rho.min_eigenvalue,
        min_quadratic_form=min_form,
        c_deviation=c_dev,
        hermitian_deviation=herm_dev,
    )


def is_extremal_choi(t: Channel, tol: float = EXTREMAL_TOL) -> bool:
    """Choi's extremality test for a unital CP map.

    With Kraus operators ``A_m`` taken from the eigendecomposition of ``ρ_T``
    (eigenvalues above ``tol``), the map is extremal iff the products
    ``A_i* A_j`` are linearly independent. Independence is decided from the
    eigenvalues of their Gram matrix.
    """
    ops = kraus_from_choi(representative_operator(t).matrix, t.dim, tol)
    r = len(ops)
    if r * r > t.dim * t.dim:
        return False
    prods = np.array([(a.conj().T @ b).ravel() for a in ops for b in ops])
    gram = prods.conj() @ prods.T
    return bool(mk.eigvalsh(gram)[-1] > tol)
