"""Channel entropy of classical channels by exact concave minimization.

A row-stochastic ``S`` is a mixture ``Σ λ_f D_f`` of deterministic maps
``f: {0..n-1} → {0..n-1}`` (``D_f[i, f(i)] = 1``). The admissible weights form
the polytope

    { λ ≥ 0 : Σ_{f : f(i) = j} λ_f = S[i, j] for all i, j },

and the channel entropy is the least mixing entropy ``-Σ λ ln λ`` over it.
The objective is concave, so the minimum sits at a vertex. Vertices are
basic feasible solutions of the equality system; the system depends only on
``n``, so every basis is found once per ``n`` and cached, and a new ``S`` costs
one batched matrix product.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from chanent import matrix_kernel as mk
from chanent.channels import (
    Channel,
    DensityOperator,
    _validate_stochastic,
    classical_embed,
    state_channel,
)
from chanent.entropy import choi_entropy, mixing_entropy
from chanent.errors import CapacityError, ContractViolation, ValidationError

MAX_ENUMERATE_DIM = 5
MAX_POLYTOPE_DIM = 4
MAX_SOLVER_DIM = 3

WEIGHT_CUTOFF = 1e-12
FEASIBILITY_TOL = 1e-12
TIE_TOL = 1e-12
GAP_TOL = 1e-9
CLOSED_FORM_TOL = 1e-10


@dataclass(frozen=True, order=True)
class DeterministicMap:
    """A function table; ``assignment[i]`` is the image of basis state ``i``."""

    assignment: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.assignment)

    def matrix(self) -> np.ndarray:
        n = self.dim
        m = np.zeros((n, n))
        m[np.arange(n), self.assignment] = 1.0
        return m

    def channel(self) -> Channel:
        return classical_embed(self.matrix())

    def label(self) -> str:
        n = self.dim
        a = self.assignment
        if a == tuple(range(n)):
            return "identity"
        if len(set(a)) == 1:
            return f"all->{a[0] + 1}"
        if n == 2 and a == (1, 0):
            return "swap"
        return "(" + ",".join(str(j + 1) for j in a) + ")"


@dataclass(frozen=True)
class ExtremalDecomposition:
    components: tuple[DeterministicMap, ...]
    weights: tuple[float, ...]

    def matrix(self) -> np.ndarray:
        return sum(w * f.matrix() for w, f in zip(self.weights, self.components))

    def entropy(self) -> float:
        return mixing_entropy(self.weights)

    def as_list(self) -> list:
        return [
            {"assignment": [j + 1 for j in f.assignment], "label": f.label(), "weight": w}
            for f, w in zip(self.components, self.weights)
        ]


@dataclass(frozen=True)
class EntropyReport:
    """Channel entropy ``H(T)``, ``d(ρ_T)`` and their gap, with the optimal mixture."""

    h_channel: float
    d_choi: float
    witness: ExtremalDecomposition

    @property
    def gap(self) -> float:
        return self.d_choi - self.h_channel

    @property
    def holds(self) -> bool:
        return self.gap >= -GAP_TOL

    def as_dict(self, scale: float = 1.0) -> dict:
        return {
            "H": self.h_channel / scale,
            "d": self.d_choi / scale,
            "gap": self.gap / scale,
            "witness": self.witness.as_list(),
        }


def enumerate_deterministic(n: int) -> list[DeterministicMap]:
    """All ``n**n`` deterministic maps, in lexicographic order of their tables.

    Raises:
        CapacityError: for ``n > 5``.
    """
    if n < 1:
        raise ValidationError("dimension must be positive")
    if n > MAX_ENUMERATE_DIM:
        raise CapacityError(f"n**n enumeration limited to n <= {MAX_ENUMERATE_DIM}")
    return [DeterministicMap(a) for a in itertools.product(range(n), repeat=n)]


@dataclass(frozen=True)
class DecompositionPolytope:
    """``{λ ≥ 0 : A λ = b}`` with one row per ``(i, j)`` and one column per map."""

    stochastic: np.ndarray
    maps: tuple[DeterministicMap, ...]
    equality: np.ndarray
    rhs: np.ndarray

    @property
    def dim(self) -> int:
        return self.stochastic.shape[0]

    def is_feasible(self, weights, tol: float = 1e-10) -> bool:
        w = np.asarray(weights, dtype=float)
        return bool(w.min() >= -tol and np.max(np.abs(self.equality @ w - self.rhs)) <= tol)

    def swap_interval(self) -> tuple[float, float]:
        """Range ``[d_min, d_max]`` of the swap weight (``n == 2`` only)."""
        self._require_two()
        (p, _), (q, _) = self.stochastic
        return max(0.0, q - p), min(q, 1.0 - p)

    def family(self, d) -> np.ndarray:
        """Weights of the one-parameter family at swap weight ``d`` (``n == 2`` only).

        Columns follow :attr:`maps`: all->1, identity, swap, all->2.
        """
        self._require_two()
        (p, _), (q, _) = self.stochastic
        d = np.asarray(d, dtype=float)
        return np.stack([q - d, p - q + d, d, 1.0 - p - d], axis=-1)

    def _require_two(self):
        if self.dim != 2:
            raise CapacityError("the one-parameter family exists only for n == 2")


def _constraint_matrix(maps, n: int) -> np.ndarray:
    a = np.zeros((n * n, len(maps)))
    for col, f in enumerate(maps):
        for i, j in enumerate(f.assignment):
            a[i * n + j, col] = 1.0
    return a


def decomposition_polytope(s) -> DecompositionPolytope:
    """Constraint system over mixtures of deterministic maps reproducing ``s``.

    Raises:
        ValidationError: if ``s`` is not row-stochastic.
        CapacityError: for ``n > 4``.
    """
    s = _validate_stochastic(s)
    n = s.shape[0]
    if n > MAX_POLYTOPE_DIM:
        raise CapacityError(f"decomposition polytope limited to n <= {MAX_POLYTOPE_DIM}")
    maps = tuple(enumerate_deterministic(n))
    return DecompositionPolytope(s, maps, _constraint_matrix(maps, n), s.ravel().copy())


@dataclass(frozen=True)
class _BasisTable:
    rows: np.ndarray  # independent constraint rows
    bases: np.ndarray  # (K, r) column indices
    inverses: np.ndarray  # (K * r, r), stacked inverses of the basis matrices


@lru_cache(maxsize=None)
def _basis_table(n: int) -> _BasisTable:
    maps = enumerate_deterministic(n)
    a = _constraint_matrix(maps, n)
    rows: list[int] = []
    for r in range(a.shape[0]):
        if np.linalg.matrix_rank(a[rows + [r]]) > len(rows):
            rows.append(r)
    a = a[rows]
    r = len(rows)
    combos = np.array(list(itertools.combinations(range(a.shape[1]), r)), dtype=np.int16)
    bases = []
    for chunk in np.array_split(combos, max(1, len(combos) // 50_000)):
        # Integer matrices: nonsingular iff |det| >= 1.
        det = np.linalg.det(np.transpose(a[:, chunk], (1, 0, 2)))
        bases.append(chunk[np.abs(det) > 0.5])
    bases = np.concatenate(bases)
    inv = np.linalg.inv(np.transpose(a[:, bases], (1, 0, 2)))
    return _BasisTable(np.array(rows), bases, inv.reshape(-1, r))


def basic_feasible_solutions(s) -> tuple[np.ndarray, np.ndarray]:
    """All basic feasible solutions of the decomposition system of ``s``.

    Returns:
        ``(bases, values)``: basis column indices ``(K, r)`` and the basic
        variable values ``(K, r)``, restricted to bases whose solution is
        non-negative. Distinct bases may share a vertex when ``s`` is degenerate.
    """
    s = _validate_stochastic(s)
    n = s.shape[0]
    if n > MAX_SOLVER_DIM:
        raise CapacityError(f"exact channel entropy limited to n <= {MAX_SOLVER_DIM}")
    table = _basis_table(n)
    b = s.ravel()[table.rows]
    r = len(table.rows)
    x = (table.inverses @ b).reshape(-1, r)
    feasible = np.all(x >= -FEASIBILITY_TOL, axis=1)
    return table.bases[feasible], np.clip(x[feasible], 0.0, None)


def _entropies(x: np.ndarray) -> np.ndarray:
    safe = np.where(x >= WEIGHT_CUTOFF, x, 1.0)
    return -np.sum(np.where(x >= WEIGHT_CUTOFF, x * np.log(safe), 0.0), axis=1)


def _witness(maps, cols, weights) -> ExtremalDecomposition:
    keep = [(int(c), float(w)) for c, w in zip(cols, weights) if w >= WEIGHT_CUTOFF]
    keep.sort()
    total = sum(w for _, w in keep)
    return ExtremalDecomposition(
        tuple(maps[c] for c, _ in keep), tuple(w / total for _, w in keep)
    )


def minimal_decomposition(s) -> ExtremalDecomposition:
    """The vertex of least mixing entropy.

    Ties within ``1e-12`` go to the lexicographically smallest support.
    """
    s = _validate_stochastic(s)
    n = s.shape[0]
    maps = enumerate_deterministic(n)
    bases, values = basic_feasible_solutions(s)
    if len(bases) == 0:
        raise ContractViolation("decomposition system infeasible for a stochastic matrix")
    h = _entropies(values)
    candidates = np.flatnonzero(h <= h.min() + TIE_TOL)
    # Degenerate inputs reach one vertex through many bases. A vertex is fixed
    # by its support, so collapse candidates on a support bitmask.
    cb, cv = bases[candidates], values[candidates]
    masks = np.sum(np.left_shift(np.int64(1), cb.astype(np.int64)) * (cv >= WEIGHT_CUTOFF), axis=1)
    _, first = np.unique(masks, return_index=True)

    def support(k):
        return tuple(sorted(int(c) for c, w in zip(cb[k], cv[k]) if w >= WEIGHT_CUTOFF))

    k = min(first, key=support)
    return _witness(maps, cb[k], cv[k])


def family_entropy(poly: DecompositionPolytope, d) -> np.ndarray:
    """Mixing entropy along the ``n == 2`` family at swap weight(s) ``d``."""
    w = np.clip(poly.family(d), 0.0, None)
    return _entropies(np.atleast_2d(w))


def closed_form_2x2(s) -> float:
    """``n == 2`` channel entropy as the smaller endpoint value of the family."""
    poly = decomposition_polytope(s)
    lo, hi = poly.swap_interval()
    return float(family_entropy(poly, np.array([lo, hi])).min())


def channel_entropy_classical(s) -> EntropyReport:
    """Exact channel entropy of the classical channel with stochastic matrix ``s``.

    Raises:
        CapacityError: for ``n > 3``.
        ContractViolation: if for ``n == 2`` the vertex search disagrees with
            the interval endpoints (never expected).
    """
    s = _validate_stochastic(s)
    witness = minimal_decomposition(s)
    h = witness.entropy()
    if s.shape[0] == 2:
        h_cf = closed_form_2x2(s)
        if abs(h - h_cf) > CLOSED_FORM_TOL:
            raise ContractViolation(f"vertex search {h!r} disagrees with closed form {h_cf!r}")
    return EntropyReport(h, choi_entropy(classical_embed(s)), witness)


def verify_inequality(s) -> EntropyReport:
    """Channel entropy next to ``d(ρ_T)`` for a classical channel; see ``report.holds``."""
    return channel_entropy_classical(s)


def binary_entropy(p: float) -> float:
    return mixing_entropy([p, 1.0 - p])


def F(x, p: float, q: float):
    """``-(p-x) ln(p-x) - (q-x) ln(q-x) - 2x ln x``, the family entropy when ``p + q = 1``.

    ``x`` is the common weight of the two constant maps.
    """
    x = np.asarray(x, dtype=float)

    def xlogx(y):
        return np.where(y > 0, y * np.log(np.where(y > 0, y, 1.0)), 0.0)

    return -xlogx(p - x) - xlogx(q - x) - 2.0 * xlogx(x)


def minimize_F_closed_form(p: float, q: float) -> float:
    """Minimum of :func:`F` over ``[0, min(p, q)]`` for ``p + q = 1``.

    ``F`` is concave with its only critical point at ``x = pq`` (a maximum),
    so the minimum is the smaller endpoint value, ``-p ln p - q ln q``.

    Raises:
        ContractViolation: if ``p + q`` differs from 1 by more than ``1e-12``.
    """
    if abs(p + q - 1.0) > 1e-12:
        raise ContractViolation(f"closed form needs p + q = 1, got {p + q!r}")
    if q > p:
        p, q = q, p
    candidates = [float(F(0.0, p, q)), float(F(q, p, q))]
    return min(candidates)


def state_channel_decomposition(phi: DensityOperator) -> tuple[np.ndarray, list[Channel]]:
    """Spectral mixture ``T_φ = Σ λ_n T_{ψ_n}`` over pure eigenstates ``ψ_n``."""
    if not isinstance(phi, DensityOperator):
        phi = DensityOperator(phi)
    eig = mk.hermitian_eig(phi.matrix)
    weights, channels = [], []
    for lam, v in zip(eig.eigenvalues, eig.eigenvectors.T):
        if lam >= WEIGHT_CUTOFF:
            weights.append(lam)
            channels.append(state_channel(DensityOperator.pure(v)))
    return np.array(weights), channels


def state_channel_entropy_upper(phi: DensityOperator) -> float:
    """Mixing entropy of the spectral mixture, an upper bound on ``H(T_φ)``."""
    weights, _ = state_channel_decomposition(phi)
    return mixing_entropy(weights)
