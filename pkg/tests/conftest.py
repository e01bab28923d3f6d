import numpy as np
import pytest

from opineq.harness import random_orthogonal


def random_spd(rng, n, lo=0.5, hi=4.0):
    d = rng.uniform(lo, hi, size=n)
    Q = random_orthogonal(rng, n)
    return (Q * d) @ Q.T


def random_sym(rng, n):
    X = rng.standard_normal((n, n))
    return 0.5 * (X + X.T)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def diag_pair():
    return np.diag([1.0, 3.0]), np.diag([2.0, 2.0])


# acceptance verdict lines, repeated in the terminal summary so they show up
# without -s
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
