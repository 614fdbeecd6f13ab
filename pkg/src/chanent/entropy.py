"""Spectral entropies in natural-log units."""
from __future__ import annotations

import numpy as np

from chanent import matrix_kernel as mk
from chanent.channels import Channel, DensityOperator
from chanent.choi import representative_operator
from chanent.errors import ContractViolation

ZERO_CUTOFF = 1e-12
NEGATIVE_SLACK = 1e-9


def mixing_entropy(weights) -> float:
    """``-Σ w ln w`` with ``0 ln 0 = 0``; weights below the cutoff count as zero."""
    w = np.asarray(weights, dtype=float)
    w = w[w >= ZERO_CUTOFF]
    return float(0.0 - np.sum(w * np.log(w)))


def spectral_entropy(eigenvalues) -> float:
    """``-Σ λ ln λ`` over a spectrum.

    Raises:
        ContractViolation: if an eigenvalue is below ``-1e-9``.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.size and lam.min() < -NEGATIVE_SLACK:
        raise ContractViolation(f"negative eigenvalue {lam.min():.3g} in entropy argument")
    return mixing_entropy(lam)


def eigen_entropy(a) -> float:
    """``-Σ λ ln λ`` over the eigenvalues of a Hermitian PSD matrix (no normalization)."""
    return spectral_entropy(mk.eigvalsh(a))


def ohya_entropy(phi: DensityOperator) -> float:
    """Entropy of a state.

    At finite dimension the spectral decomposition of the density matrix has
    the least mixing entropy among all its discrete decompositions (its weight
    vector majorizes theirs), so the infimum is the von Neumann entropy.
    """
    if not isinstance(phi, DensityOperator):
        phi = DensityOperator(phi)
    return eigen_entropy(phi.matrix)


def choi_entropy(t: Channel, normalize: bool = False) -> float:
    """``d(ρ_T) = -Σ λ ln λ`` over the spectrum of the representative operator.

    By default the spectrum of ``ρ_T`` itself is used (trace ``n``); with
    ``normalize=True`` the unit-trace state ``ρ_T / n`` is used instead, which
    gives ``d(ρ_T) / n + ln n``.
    """
    rho = representative_operator(t)
    lam = rho.spectrum / t.dim if normalize else rho.spectrum
    return spectral_entropy(lam)


def to_bits(nats: float) -> float:
    return nats / np.log(2.0)
