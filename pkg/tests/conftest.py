import re

import numpy as np
import pytest

from chanent.matrix_kernel import matrix_unit


def max_unit_deviation(a, b):
    """Max-norm distance between two channels over all matrix units."""
    n = a.dim
    return max(
        float(np.max(np.abs(a.apply(matrix_unit(n, i, j)) - b.apply(matrix_unit(n, i, j)))))
        for i in range(n)
        for j in range(n)
    )


def random_hermitian(n, rng):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return x + x.conj().T


def random_unitary(n, rng):
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def xlogx_sum(*ws):
    return -sum(w * np.log(w) for w in ws if w > 0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the terminal summary prints them all.

    A test that raises before recording still gets a FAIL line, keyed by the
    number in its name (``test_criterion_<k>_...``).
    """
    lines = request.config.stash.setdefault(ACCEPTANCE, [])
    seen = []

    def record(number, title, ok, detail):
        seen.append(number)
        lines.append((number, f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})"))
        assert ok, detail

    yield record
    if not seen:
        number = int(re.search(r"criterion_(\d+)", request.node.name).group(1))
        lines.append((number, f"criterion {number} FAIL: raised before completing"))


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
