import numpy as np
import pytest

from fracspec.hadamard import check_hadamard
from fracspec.ifs import AffineIFS

REMARK18_R = ((2, 0), (1, 2))
REMARK18_B = ((0, 0), (1, 0), (0, 3), (1, 3))
REMARK18_L = ((0, 0), (1, 0), (0, 1), (1, 1))


@pytest.fixture
def quarter():
    return AffineIFS(4, [0, 2])


@pytest.fixture
def cantor3():
    return AffineIFS(3, [0, 2])


@pytest.fixture
def remark18():
    return AffineIFS(REMARK18_R, REMARK18_B)


@pytest.fixture
def quarter_pair(quarter):
    return check_hadamard(quarter, [0, 1])


@pytest.fixture
def remark18_pair(remark18):
    return check_hadamard(remark18, REMARK18_L)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def lacunary(base, depth):
    """{sum l_k base^k : l_k in {0,1}, k < depth}, by direct enumeration."""
    out = [0]
    for k in range(depth):
        out = out + [x + base ** k for x in out]
    return sorted(out)


def cos_product(base, shift, x, terms=200):
    """|mu_hat| for R=base, B={0,shift}: prod |cos(pi shift x / base^j)|."""
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    for j in range(1, terms + 1):
        out = out * np.abs(np.cos(np.pi * shift * x / base ** j))
    return out


ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
