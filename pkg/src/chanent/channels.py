"""Linear maps on ``M_n`` in the Heisenberg picture.

A :class:`Channel` stores one of four interchangeable forms:

``superop``
    ``n² × n²`` matrix acting on column-stacked matrices,
    ``vec(T(x)) = S @ vec(x)`` with ``vec(x) = x.reshape(-1, order="F")``.
``kraus``
    operators ``A_i`` with ``T(x) = Σ A_i* x A_i``; unital iff ``Σ A_i* A_i = I``.
``stochastic``
    a row-stochastic ``S`` acting on the diagonal subalgebra,
    ``T(x)_ii = Σ_j S_ij x_jj``; off-diagonal entries are sent to zero.
``state``
    a density operator ``θ`` with ``T(x) = tr(θ x) I``.

Construction validates shapes and the form-specific data (row sums, density
operators) but not unitality or complete positivity, so that e.g. the
transpose map can be built and then rejected by :func:`check_completely_positive`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from chanent import matrix_kernel as mk
from chanent.errors import DimensionError, ValidationError

UNITAL_TOL = 1e-10
STOCHASTIC_TOL = 1e-12
DENSITY_TOL = 1e-10
KRAUS_CUTOFF = 1e-10

KINDS = ("superop", "kraus", "stochastic", "state")


def vec(x: np.ndarray) -> np.ndarray:
    return np.asarray(x).reshape(-1, order="F")


def unvec(v: np.ndarray, n: int) -> np.ndarray:
    return np.asarray(v).reshape((n, n), order="F")


@dataclass(frozen=True)
class DensityOperator:
    """A state ``φ(x) = tr(θ x)`` given by its density matrix ``θ``."""

    matrix: np.ndarray
    tol: float = field(default=DENSITY_TOL, repr=False, compare=False)

    def __post_init__(self):
        try:
            m = mk.as_matrix(self.matrix)
        except ValueError as exc:
            raise ValidationError(f"invalid density operator: {exc}") from exc
        if mk.hermiticity_defect(m) > self.tol:
            raise ValidationError("density operator is not Hermitian")
        m = 0.5 * (m + m.conj().T)
        tr = np.trace(m).real
        if abs(tr - 1.0) > self.tol:
            raise ValidationError(f"density operator has trace {tr!r}, expected 1")
        if mk.eigvalsh(m)[-1] < -self.tol:
            raise ValidationError("density operator is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def pure(cls, psi) -> DensityOperator:
        psi = np.asarray(psi, dtype=np.complex128).ravel()
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, n: int) -> DensityOperator:
        return cls(np.eye(n, dtype=np.complex128) / n)

    def expectation(self, x) -> complex:
        return complex(np.trace(self.matrix @ x))


@dataclass(frozen=True)
class Channel:
    """A linear map on ``n × n`` matrices in one of the stored forms."""

    dim: int
    kind: str
    data: object = field(repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown channel kind {self.kind!r}")
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise DimensionError(f"dimension must be a positive integer, got {self.dim!r}")
        n = int(self.dim)
        object.__setattr__(self, "dim", n)
        data = self.data
        if self.kind == "superop":
            data = mk.as_matrix(data)
            if data.shape != (n * n, n * n):
                raise DimensionError(f"superoperator must be {n * n}x{n * n}, got {data.shape}")
            data.setflags(write=False)
        elif self.kind == "kraus":
            ops = tuple(mk.as_matrix(a) for a in data)
            if not ops:
                raise ValidationError("Kraus family is empty")
            for a in ops:
                if a.shape != (n, n):
                    raise DimensionError(f"Kraus operator must be {n}x{n}, got {a.shape}")
                a.setflags(write=False)
            data = ops
        elif self.kind == "stochastic":
            data = _validate_stochastic(data)
            if data.shape != (n, n):
                raise DimensionError(f"stochastic matrix must be {n}x{n}, got {data.shape}")
        else:
            if not isinstance(data, DensityOperator):
                data = DensityOperator(data)
            if data.dim != n:
                raise DimensionError(f"state has dimension {data.dim}, channel has {n}")
        object.__setattr__(self, "data", data)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_superop(cls, s) -> Channel:
        s = mk.as_matrix(s)
        n = int(round(np.sqrt(s.shape[0])))
        return cls(n, "superop", s)

    @classmethod
    def from_kraus(cls, ops: Sequence) -> Channel:
        ops = [mk.as_matrix(a) for a in ops]
        if not ops:
            raise ValidationError("Kraus family is empty")
        return cls(ops[0].shape[0], "kraus", ops)

    @classmethod
    def identity(cls, n: int) -> Channel:
        return cls(n, "kraus", [np.eye(n, dtype=np.complex128)])

    @classmethod
    def transpose(cls, n: int) -> Channel:
        """The transpose map ``x ↦ xᵀ``: unital and positive, but not CP for ``n ≥ 2``."""
        perm = np.zeros((n * n, n * n))
        for i in range(n):
            for j in range(n):
                perm[vec_index(j, i, n), vec_index(i, j, n)] = 1.0
        return cls(n, "superop", perm)

    # -- evaluation -------------------------------------------------------

    def apply(self, x) -> np.ndarray:
        """Evaluate ``T(x)``."""
        x = mk.as_matrix(x)
        n = self.dim
        if x.shape != (n, n):
            raise DimensionError(f"expected a {n}x{n} argument, got {x.shape}")
        if self.kind == "superop":
            return unvec(self.data @ vec(x), n)
        if self.kind == "kraus":
            return sum(a.conj().T @ x @ a for a in self.data)
        if self.kind == "stochastic":
            return np.diag(self.data @ np.diag(x)).astype(np.complex128)
        return self.data.expectation(x) * np.eye(n, dtype=np.complex128)

    __call__ = apply

    def choi(self) -> np.ndarray:
        """``Σ_ij T(e_ij) ⊗ e_ij`` in the first-factor-major ordering."""
        n = self.dim
        c = np.zeros((n * n, n * n), dtype=np.complex128)
        for i in range(n):
            for j in range(n):
                c += np.kron(self.apply(mk.matrix_unit(n, i, j)), mk.matrix_unit(n, i, j))
        return c

    # -- conversions ------------------------------------------------------

    def to_superop(self) -> Channel:
        if self.kind == "superop":
            return self
        n = self.dim
        s = np.zeros((n * n, n * n), dtype=np.complex128)
        for i in range(n):
            for j in range(n):
                s[:, vec_index(i, j, n)] = vec(self.apply(mk.matrix_unit(n, i, j)))
        return Channel(n, "superop", s)

    def to_kraus(self, cutoff: float = KRAUS_CUTOFF) -> Channel:
        """Kraus form read off the eigendecomposition of :meth:`choi`.

        Raises:
            ValidationError: if the map is not completely positive.
        """
        if self.kind == "kraus":
            return self
        ops = kraus_from_choi(self.choi(), self.dim, cutoff)
        return Channel(self.dim, "kraus", ops)

    def as_stochastic(self, tol: float = UNITAL_TOL) -> np.ndarray | None:
        """The stochastic matrix of a classical channel, or ``None``.

        A map counts as classical when it sends every ``e_jj`` to a diagonal
        matrix and annihilates every off-diagonal matrix unit.
        """
        if self.kind == "stochastic":
            return self.data
        n = self.dim
        s = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                y = self.apply(mk.matrix_unit(n, i, j))
                if i == j:
                    d = np.diag(y)
                    if np.max(np.abs(y - np.diag(d))) > tol or np.max(np.abs(d.imag)) > tol:
                        return None
                    s[:, j] = d.real
                elif np.max(np.abs(y)) > tol:
                    return None
        try:
            return _validate_stochastic(np.clip(s, 0.0, 1.0), tol=max(tol, STOCHASTIC_TOL))
        except ValidationError:
            return None


def vec_index(i: int, j: int, n: int) -> int:
    """Position of entry ``(i, j)`` in the column-stacked vector."""
    return j * n + i


def kraus_from_choi(c: np.ndarray, n: int, cutoff: float = KRAUS_CUTOFF) -> list[np.ndarray]:
    """Kraus operators ``A_m`` (with ``T(x) = Σ A_m* x A_m``) from ``C = Σ T(e_ij) ⊗ e_ij``.

    Each eigenpair ``(λ, u)`` of ``C`` above ``cutoff`` gives ``A_m* = √λ · U``
    where ``U[k, i] = u[k * n + i]``.

    Raises:
        ValidationError: if ``C`` has an eigenvalue below ``-cutoff``.
    """
    eig = mk.hermitian_eig(c)
    if eig.eigenvalues[-1] < -max(cutoff, mk.PSD_TOL):
        raise ValidationError("map is not completely positive; no Kraus form exists")
    ops = []
    for lam, u in zip(eig.eigenvalues, eig.eigenvectors.T):
        if lam > cutoff:
            ops.append((np.sqrt(lam) * u.reshape(n, n)).conj().T)
    return ops


def _validate_stochastic(s, tol: float = STOCHASTIC_TOL) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.size == 0:
        raise ValidationError(f"stochastic matrix must be square, got shape {s.shape}")
    if not np.all(np.isfinite(s)):
        raise ValidationError("stochastic matrix has non-finite entries")
    if np.any(s < 0.0) or np.any(s > 1.0):
        raise ValidationError("stochastic matrix entries must lie in [0, 1]")
    rows = s.sum(axis=1)
    if np.max(np.abs(rows - 1.0)) > tol:
        raise ValidationError(f"stochastic matrix rows must sum to 1, got {rows.tolist()}")
    s = s.copy()
    s.setflags(write=False)
    return s


def classical_embed(s) -> Channel:
    """Embed a row-stochastic matrix as a channel on the diagonal subalgebra.

    Raises:
        ValidationError: if ``s`` is not row-stochastic.
    """
    s = _validate_stochastic(s)
    return Channel(s.shape[0], "stochastic", s)


def state_channel(phi) -> Channel:
    """``T_φ(x) = φ(x) I`` for a state ``φ``."""
    if not isinstance(phi, DensityOperator):
        phi = DensityOperator(phi)
    return Channel(phi.dim, "state", phi)


def apply(t: Channel, x) -> np.ndarray:
    return t.apply(x)


def check_unital(t: Channel, tol: float = UNITAL_TOL) -> bool:
    """True iff ``‖T(I) − I‖_max < tol``."""
    eye = np.eye(t.dim, dtype=np.complex128)
    return bool(np.max(np.abs(t.apply(eye) - eye)) < tol)


def check_completely_positive(t: Channel, tol: float = mk.PSD_TOL) -> bool:
    """True iff the Choi-type operator of ``t`` is positive semidefinite within ``tol``."""
    return mk.is_psd(t.choi(), tol)


def is_ucp(t: Channel, tol: float = mk.PSD_TOL) -> bool:
    return check_unital(t) and check_completely_positive(t, tol)


def convex_combination(weights: Sequence[float], channels: Sequence[Channel]) -> Channel:
    """``Σ w_k T_k`` as a superoperator channel."""
    if len(weights) != len(channels) or not channels:
        raise ValidationError("weights and channels must be non-empty and of equal length")
    n = channels[0].dim
    if any(c.dim != n for c in channels):
        raise DimensionError("channels have different dimensions")
    s = sum(w * c.to_superop().data for w, c in zip(weights, channels))
    return Channel(n, "superop", s)


def random_unital_kraus(n: int, rank: int, rng: np.random.Generator) -> Channel:
    """A random unital CP map from ``rank`` Gaussian Kraus operators.

    The family ``B_m`` is completed to unitality by ``A_m = B_m G^{-1/2}``
    with ``G = Σ B_m* B_m``.
    """
    bs = [rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)) for _ in range(rank)]
    g = sum(b.conj().T @ b for b in bs)
    eig = mk.hermitian_eig(g)
    g_inv_sqrt = (eig.eigenvectors / np.sqrt(eig.eigenvalues)) @ eig.eigenvectors.conj().T
    return Channel(n, "kraus", [b @ g_inv_sqrt for b in bs])


def random_density(n: int, rng: np.random.Generator, rank: int | None = None) -> DensityOperator:
    """A random density operator ``X X* / tr(X X*)`` with ``X`` of shape ``n × rank``."""
    k = n if rank is None else rank
    x = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    m = x @ x.conj().T
    return DensityOperator(m / np.trace(m).real)


def random_stochastic(n: int, rng: np.random.Generator) -> np.ndarray:
    """Rows drawn from a symmetric Dirichlet(1, ..., 1)."""
    s = rng.dirichlet(np.ones(n), size=n)
    # Renormalize so rows sum to 1 to machine precision.
    return s / s.sum(axis=1, keepdims=True)
