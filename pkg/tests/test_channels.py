import numpy as np
import pytest

from chanent.channels import (
    Channel,
    DensityOperator,
    check_completely_positive,
    check_unital,
    classical_embed,
    convex_combination,
    random_density,
    random_stochastic,
    random_unital_kraus,
    state_channel,
)
from chanent.choi import representative_operator
from chanent.errors import DimensionError, ValidationError
from chanent.matrix_kernel import eigvalsh, matrix_unit

from conftest import max_unit_deviation

E11 = matrix_unit(2, 0, 0)
E22 = matrix_unit(2, 1, 1)


def test_identity_superop_apply(rng):
    x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    ident = Channel.identity(3).to_superop()
    assert np.allclose(ident.apply(x), x)


def test_classical_apply_first_column():
    p, q = 0.3, 0.6
    t = classical_embed([[p, 1 - p], [q, 1 - q]])
    assert np.allclose(t.apply(E11), p * E11 + q * E22)


def test_classical_kills_off_diagonal():
    t = classical_embed([[0.2, 0.8], [0.9, 0.1]])
    assert np.array_equal(t.apply(matrix_unit(2, 0, 1)), np.zeros((2, 2)))


def test_state_channel_apply(rng):
    phi = random_density(3, rng)
    t = state_channel(phi)
    x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert np.allclose(t.apply(x), np.trace(phi.matrix @ x) * np.eye(3))


def test_state_channel_values():
    t = state_channel(np.diag([0.3, 0.7]))
    assert np.allclose(t.apply(E11), 0.3 * np.eye(2))
    mixed = state_channel(DensityOperator.maximally_mixed(2))
    x = np.array([[1.0, 2.0], [3.0, 5.0]])
    assert np.allclose(mixed.apply(x), 3.0 * np.eye(2))


def test_apply_dimension_mismatch():
    with pytest.raises(DimensionError):
        Channel.identity(2).apply(np.eye(3))


def test_check_unital():
    assert check_unital(Channel.identity(2))
    assert not check_unital(Channel(2, "kraus", [E11]))


def test_random_stochastic_unital(rng):
    for n in (2, 3, 4):
        for _ in range(10):
            assert check_unital(classical_embed(random_stochastic(n, rng)))


def test_check_completely_positive(rng):
    assert check_completely_positive(Channel.identity(2))
    transpose = Channel.transpose(2)
    assert check_unital(transpose)
    assert not check_completely_positive(transpose)
    assert eigvalsh(transpose.choi())[-1] < -0.5
    for _ in range(10):
        assert check_completely_positive(classical_embed(random_stochastic(3, rng)))


def test_cp_quadratic_form_sampling(rng):
    """Sum b_i* T(a_i* a_j) b_j is PSD for random collections (n <= 3)."""
    for n in (2, 3):
        t = random_unital_kraus(n, 2, rng)
        for _ in range(20):
            k = 3
            a = rng.normal(size=(k, n, n)) + 1j * rng.normal(size=(k, n, n))
            b = rng.normal(size=(k, n, n)) + 1j * rng.normal(size=(k, n, n))
            total = sum(
                b[i].conj().T @ t.apply(a[i].conj().T @ a[j]) @ b[j] for i in range(k) for j in range(k)
            )
            assert eigvalsh(total)[-1] >= -1e-9


def test_classical_embed_validation():
    with pytest.raises(ValidationError):
        classical_embed([[0.5, 0.6], [0.5, 0.5]])
    with pytest.raises(ValidationError):
        classical_embed([[1.5, -0.5], [0.5, 0.5]])


def test_classical_embed_extreme_points():
    t1 = classical_embed(np.eye(2))
    x = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert np.allclose(t1.apply(x), np.diag([1.0, 4.0]))
    t2 = classical_embed([[1, 0], [1, 0]])
    assert np.allclose(t2.apply(x), np.eye(2))


def test_density_validation():
    with pytest.raises(ValidationError):
        DensityOperator(np.diag([0.5, 0.6]))
    with pytest.raises(ValidationError):
        DensityOperator(np.diag([1.5, -0.5]))
    with pytest.raises(ValidationError):
        DensityOperator([[0.5, 0.1], [0.2, 0.5]])


def test_form_agreement(rng):
    for s in (random_stochastic(2, rng), random_stochastic(3, rng)):
        t = classical_embed(s)
        sup = t.to_superop()
        kraus = sup.to_kraus()
        assert max_unit_deviation(t, sup) < 1e-10
        assert max_unit_deviation(t, kraus) < 1e-10
        assert np.max(np.abs(kraus.as_stochastic() - s)) < 1e-10
    for t in (random_unital_kraus(2, 3, rng), state_channel(random_density(3, rng))):
        assert max_unit_deviation(t, t.to_superop().to_kraus()) < 1e-10


def test_kraus_family_is_unital(rng):
    t = random_unital_kraus(3, 2, rng)
    assert np.allclose(sum(a.conj().T @ a for a in t.data), np.eye(3), atol=1e-10)


def test_convex_combination_preserves_ucp(rng):
    for _ in range(10):
        a = random_unital_kraus(2, 2, rng)
        b = state_channel(random_density(2, rng))
        w = rng.uniform()
        mix = convex_combination([w, 1 - w], [a, b])
        assert check_unital(mix)
        assert check_completely_positive(mix)


def test_state_channel_is_ucp(rng):
    for n in (2, 3, 4):
        t = state_channel(random_density(n, rng))
        assert check_unital(t)
        assert check_completely_positive(t)
        assert representative_operator(t).valid


def test_channels_are_immutable():
    t = classical_embed([[0.5, 0.5], [0.2, 0.8]])
    with pytest.raises(ValueError):
        t.data[0, 0] = 1.0
