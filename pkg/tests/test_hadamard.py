import math
from fractions import Fraction as F

import numpy as np
import pytest

from conftest import REMARK18_B, cos_product, lacunary
from fracspec.errors import DegenerateDigits, SizeMismatch
from fracspec.exact import Lattice
from fracspec.hadamard import (check_hadamard, dual_lattice, h_function, hadamard_matrix,
                               incongruent_mod_dual, orthogonality_deviation, transfer_one)
from fracspec.ifs import AffineIFS, MuHatEvaluator, NuHatEvaluator


def test_check_hadamard_examples(quarter_pair, cantor3, remark18_pair):
    assert quarter_pair.unitarity_deviation < 1e-15 and quarter_pair.accepted
    H = hadamard_matrix(quarter_pair.ifs, quarter_pair.L)
    assert np.allclose(H, np.array([[1, 1], [1, -1]]) / math.sqrt(2), atol=1e-15)
    bad = check_hadamard(cantor3, [0, 1])
    assert bad.unitarity_deviation == pytest.approx(0.5, abs=1e-12)
    assert not bad.accepted
    assert remark18_pair.unitarity_deviation < 1e-15 and remark18_pair.accepted
    with pytest.raises(SizeMismatch):
        check_hadamard(cantor3, [0, 1, 2])


def test_dual_lattice_examples():
    assert dual_lattice([0, 2], 1) == Lattice([(F(1, 2),)])
    assert dual_lattice(REMARK18_B, 2) == Lattice([(1, 0), (0, F(1, 3))])
    assert dual_lattice([0, 2, 3], 1) == Lattice([(1,)])
    with pytest.raises(DegenerateDigits):
        dual_lattice([(0, 0), (1, 0)], 2)


def test_dual_lattice_definition_bruteforce():
    # every lattice point in a box has integer pairing with B, and conversely on a grid
    lat = dual_lattice(REMARK18_B, 2)
    grid = [(F(a, 6), F(b, 6)) for a in range(-12, 13) for b in range(-12, 13)]
    for g in grid:
        pairs_integer = all((g[0] * b[0] + g[1] * b[1]).denominator == 1 for b in REMARK18_B)
        assert (g in lat) == pairs_integer


def test_lattice_contains_integers_and_incongruence(quarter_pair, remark18_pair):
    for pair in (quarter_pair, remark18_pair):
        lat = dual_lattice(pair.ifs.B, pair.ifs.dim)
        assert lat.contains_integers()
        assert incongruent_mod_dual(pair, lat)


def test_transfer_one_examples(quarter_pair, cantor3, rng):
    assert transfer_one(cantor3, [0, 1], 0.0) == pytest.approx(1.25, abs=1e-14)
    assert transfer_one(cantor3, [0], 0.0) == pytest.approx(1.0, abs=1e-15)
    x = rng.uniform(-20, 20, 100)
    assert np.max(np.abs(transfer_one(quarter_pair.ifs, quarter_pair.L, x) - 1)) < 1e-10


def test_transfer_one_remark18(remark18_pair, rng):
    x = rng.uniform(-20, 20, size=(100, 2))
    assert np.max(np.abs(transfer_one(remark18_pair.ifs, remark18_pair.L, x) - 1)) < 1e-10


def test_h_function_examples(quarter):
    ev = MuHatEvaluator(quarter)
    assert h_function(ev, [0], 0) == pytest.approx(1)
    assert h_function(ev, [], 0.3) == 0.0


def test_h_function_partial_sums_monotone(quarter):
    ev = MuHatEvaluator(quarter)
    spec = lacunary(4, 6)          # 64 points
    sums = [h_function(ev, spec[:m], 0.3) for m in (4, 16, 64)]
    assert sums == sorted(sums)
    assert sums[-1] <= 1 + 1e-9
    # independent oracle: closed-form modulus
    want = float(np.sum(cos_product(4, 2, 0.3 + np.array(spec)) ** 2))
    assert sums[-1] == pytest.approx(want, abs=1e-10)
    assert sums[-1] > 0.9


def test_orthogonality_deviation(quarter, cantor3):
    assert orthogonality_deviation(MuHatEvaluator(quarter), [7]) == 0.0
    assert orthogonality_deviation(MuHatEvaluator(quarter), [0, 1, 4, 5]) <= 1e-10
    d = orthogonality_deviation(MuHatEvaluator(cantor3), [0, 1])
    assert d == pytest.approx(float(cos_product(3, 2, 1.0)), abs=1e-10)
    assert d > 0.3


def test_transfer_acts_on_h_functions(quarter_pair):
    """R_{B,L} h(nu_0, Lambda_0) = h(nu_1, S Lambda_0) on a finite block of Z."""
    ifs, L = quarter_pair.ifs, [l[0] for l in quarter_pair.L]
    block = np.arange(-50, 51)
    ev0, ev1 = NuHatEvaluator(ifs, 0), NuHatEvaluator(ifs, 1)
    s_block = np.concatenate([4 * block + l for l in L])
    for x in (0.0, 0.17, -0.6, 2.3):
        lhs = np.sum(np.abs(ev1(x + s_block)) ** 2)
        rhs = 0.0
        for l in L:
            y = (x + l) / 4
            m = abs(complex(np.mean(np.exp(2j * np.pi * np.array([0, 2]) * y)))) ** 2
            rhs += m * np.sum(np.abs(ev0(y + block)) ** 2)
        assert lhs == pytest.approx(rhs, abs=1e-6)
