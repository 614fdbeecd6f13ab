import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chanent.channels import (
    Channel,
    DensityOperator,
    classical_embed,
    random_density,
    state_channel,
)
from chanent.decomposition import enumerate_deterministic
from chanent.entropy import choi_entropy, eigen_entropy, ohya_entropy, to_bits
from chanent.errors import ContractViolation

from conftest import random_unitary, xlogx_sum

seeds = st.integers(0, 2**32 - 1)


def test_pure_state_zero():
    assert eigen_entropy(np.diag([1.0, 0.0])) == 0.0


def test_half_example_spectrum():
    assert eigen_entropy(np.diag([0.5] * 4)) == pytest.approx(2 * np.log(2), abs=1e-12)
    assert eigen_entropy(np.diag([0.5] * 4)) == pytest.approx(1.386294, abs=1e-6)


def test_binary_spectrum():
    assert eigen_entropy(np.diag([0.3, 0.7])) == pytest.approx(xlogx_sum(0.3, 0.7), abs=1e-12)
    assert eigen_entropy(np.diag([0.3, 0.7])) == pytest.approx(0.610864, abs=1e-6)


def test_small_negative_eigenvalue_tolerated():
    assert eigen_entropy(np.diag([1.0, -1e-10])) == 0.0
    with pytest.raises(ContractViolation):
        eigen_entropy(np.diag([1.0, -1e-6]))


def test_ohya_values():
    assert ohya_entropy(DensityOperator.pure([1, 1j])) == pytest.approx(0.0, abs=1e-12)
    for n in (2, 3, 4):
        assert ohya_entropy(DensityOperator.maximally_mixed(n)) == pytest.approx(np.log(n), abs=1e-12)
    assert ohya_entropy(DensityOperator(np.diag([0.1, 0.9]))) == pytest.approx(0.325083, abs=1e-6)


def test_choi_entropy_example():
    t = classical_embed([[0.5, 0.5], [0.5, 0.5]])
    assert choi_entropy(t) == pytest.approx(2 * np.log(2), abs=1e-12)
    p, q = 0.7, 0.3
    t = classical_embed([[p, 1 - p], [q, 1 - q]])
    assert choi_entropy(t) == pytest.approx(xlogx_sum(p, 1 - p, q, 1 - q), abs=1e-12)
    assert choi_entropy(t) == pytest.approx(1.221729, abs=1e-6)


def test_choi_entropy_deterministic_zero():
    for f in enumerate_deterministic(3):
        assert choi_entropy(f.channel()) == 0.0


def test_choi_entropy_unnormalized_spectrum(rng):
    # spectrum {2, 0, 0, 0}: eigenvalues above 1 make the value negative
    assert choi_entropy(Channel.identity(2)) == pytest.approx(-2 * np.log(2), abs=1e-12)
    # ρ_T = I ⊗ θᵀ repeats the spectrum of θ n times
    phi = random_density(3, rng)
    assert choi_entropy(state_channel(phi)) == pytest.approx(3 * ohya_entropy(phi), abs=1e-10)


def test_normalized_variant():
    p, q = 0.7, 0.2
    t = classical_embed([[p, 1 - p], [q, 1 - q]])
    d = choi_entropy(t)
    assert choi_entropy(t, normalize=True) == pytest.approx(d / 2 + np.log(2), abs=1e-12)
    assert abs(choi_entropy(t, normalize=True) - (d + np.log(2))) > 0.1


def test_bits():
    assert to_bits(np.log(2)) == pytest.approx(1.0)


@settings(max_examples=40)
@given(seeds)
def test_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    a = random_density(n, rng).matrix
    u = random_unitary(n, rng)
    assert abs(eigen_entropy(u @ a @ u.conj().T) - eigen_entropy(a)) < 1e-10


@settings(max_examples=40)
@given(seeds, st.floats(0, 1))
def test_concavity(seed, alpha):
    rng = np.random.default_rng(seed)
    a = random_density(3, rng).matrix
    b = random_density(3, rng).matrix
    mix = eigen_entropy(alpha * a + (1 - alpha) * b)
    assert mix >= alpha * eigen_entropy(a) + (1 - alpha) * eigen_entropy(b) - 1e-10


@settings(max_examples=40)
@given(seeds)
def test_ohya_range(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    h = ohya_entropy(random_density(n, rng, rank=int(rng.integers(1, n + 1))))
    assert -1e-12 <= h <= np.log(n) + 1e-12
