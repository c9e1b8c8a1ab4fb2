import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from conftest import cos_product
from fracspec.errors import (DuplicateDigit, MissingZeroDigit, NotExpansive, SizeOverflow,
                             TruncationFailure)
from fracspec.ifs import (AffineIFS, MuHatEvaluator, NuHatEvaluator, attractor_box,
                          atomic_measure, box_for_maps, level_points, mask_mB, mu_hat, nu_hat,
                          overlap_heuristic, translate_digits, validate, word_point, words)


def test_validate():
    validate(AffineIFS(3, [0, 2]))
    with pytest.raises(NotExpansive):
        validate(AffineIFS(1, [0, 1]))
    with pytest.raises(DuplicateDigit):
        validate(AffineIFS(3, [0, 0]))
    with pytest.raises(MissingZeroDigit):
        validate(AffineIFS(3, [1, 2]))
    with pytest.raises(NotExpansive):
        validate(AffineIFS([[1, 0], [0, 2]], [(0, 0), (1, 0)]))


def test_translate_digits():
    assert translate_digits([3, 5]) == [(0,), (2,)]


def test_word_points(cantor3):
    assert word_point(cantor3, ()) == (0,)
    assert word_point(cantor3, (1, 1)) == (F(8, 9),)   # digit indices: 1 -> b = 2
    assert word_point(cantor3, (1, 0)) == (F(2, 9),)


def test_word_point_matches_composition(remark18):
    # tau_k = tau_{k_n} o ... o tau_{k_1}; check against explicit composition
    Rinv = np.linalg.inv(np.array(remark18.R, dtype=float))
    for k in words(4, 3):
        x = np.zeros(2)
        for idx in k:
            x = Rinv @ (x + np.array(remark18.B[idx]))
        assert np.allclose([float(c) for c in word_point(remark18, k)], x, atol=1e-15)


def test_atomic_measure(cantor3):
    m1 = atomic_measure(cantor3, 1)
    assert m1.support == ((0,), (F(2, 3),)) and m1.weight == F(1, 2)
    m2 = atomic_measure(cantor3, 2)
    assert sorted(m2.support) == [(0,), (F(2, 9),), (F(2, 3),), (F(8, 9),)]
    assert m2.weight == F(1, 4)
    m0 = atomic_measure(cantor3, 0)
    assert m0.support == ((0,),) and m0.weight == 1
    with pytest.raises(SizeOverflow):
        atomic_measure(cantor3, 21)


def test_level_points_lexicographic(cantor3):
    pts = level_points(cantor3, 3)
    assert pts == [word_point(cantor3, k) for k in words(2, 3)]


def test_atomic_support_inside_box(remark18, quarter):
    for ifs in (remark18, quarter):
        box = attractor_box(ifs)
        for n in range(5):
            m = atomic_measure(ifs, n)
            assert len(m.support) == ifs.N ** n
            assert all(box.contains(p, slack=1e-12) for p in m.support)


def test_attractor_box():
    b3 = attractor_box(AffineIFS(3, [0, 2]))
    assert b3.lo == (0,) and b3.hi == (1,)
    b4 = attractor_box(AffineIFS(4, [0, 2]))
    assert b4.hi == (F(2, 3),)
    b0 = box_for_maps(3, [0])
    assert b0.lo == b0.hi == (0,)


def test_mask(cantor3):
    assert mask_mB(cantor3, 0) == 1
    assert abs(mask_mB(cantor3, F(1, 4))) < 1e-15
    assert mask_mB(cantor3, F(1, 2)) == pytest.approx(1, abs=1e-15)
    assert mask_mB(cantor3, 0.25) == pytest.approx(0, abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(x=st.floats(-50, 50), k=st.integers(-10, 10))
def test_mask_bounded_and_lattice_periodic(x, k):
    ifs = AffineIFS(3, [0, 2])   # dual lattice (1/2)Z
    v = mask_mB(ifs, x)
    assert abs(v) <= 1 + 1e-15
    assert mask_mB(ifs, x + k / 2) == pytest.approx(v, abs=1e-12)


def test_mask_periodic_2d(remark18, rng):
    x = rng.uniform(-5, 5, size=(50, 2))
    shift = np.array([3.0, -2.0 / 3])      # in Z x (1/3)Z
    assert np.allclose(mask_mB(remark18, x + shift), mask_mB(remark18, x), atol=1e-12)


def test_mu_hat_examples(quarter, cantor3):
    assert mu_hat(MuHatEvaluator(quarter), 0) == 1
    assert abs(mu_hat(MuHatEvaluator(quarter), 1)) < 1e-15
    # independent oracle: 200-factor product in closed form
    j = np.arange(1, 201)
    oracle = np.prod(np.exp(2j * np.pi / 3.0 ** j) * np.cos(2 * np.pi / 3.0 ** j))
    assert mu_hat(MuHatEvaluator(cantor3), 1.0) == pytest.approx(oracle, abs=1e-10)


def test_mu_hat_modulus_vs_cosine_product(cantor3, rng):
    x = rng.uniform(-40, 40, 200)
    assert np.allclose(np.abs(MuHatEvaluator(cantor3)(x)), cos_product(3, 2, x), atol=1e-11)


def test_mu_hat_truncation_failure(cantor3):
    ev = MuHatEvaluator(cantor3, max_factors=5)
    with pytest.raises(TruncationFailure):
        ev(1e6)


def test_refinement_identity(rng, remark18, cantor3):
    for ifs in (cantor3, remark18):
        ev = MuHatEvaluator(ifs)
        x = rng.uniform(-20, 20, size=(100, ifs.dim))
        xin = x if ifs.dim > 1 else x[:, 0]
        y = x @ ifs.RTinv_float.T
        yin = y if ifs.dim > 1 else y[:, 0]
        lhs = ev(xin)
        rhs = mask_mB(ifs, yin) * ev(yin)
        assert np.max(np.abs(lhs - rhs)) <= 2 * ev.tail_tolerance


def test_nu_hat_examples(cantor3):
    assert nu_hat(cantor3, 5, 0) == 1
    assert abs(nu_hat(cantor3, 0, 1)) < 1e-15
    assert abs(nu_hat(cantor3, 1, 3)) < 1e-15


def test_nu_hat_matches_quadrature(cantor3):
    # nu_n is (3/2)^n times Lebesgue on Omega_n
    from fracspec.cantor import omega_intervals
    for n in range(0, 4):
        om = omega_intervals(n)
        for x in (0.37, 1.0, 2.5, 7.0):
            re = sum(integrate.quad(lambda t: math.cos(2 * math.pi * x * t), float(a), float(b),
                                    epsabs=1e-13)[0] for a, b in om.intervals)
            im = sum(integrate.quad(lambda t: math.sin(2 * math.pi * x * t), float(a), float(b),
                                    epsabs=1e-13)[0] for a, b in om.intervals)
            want = float(om.density) * complex(re, im)
            assert nu_hat(cantor3, n, x) == pytest.approx(want, abs=1e-10)


def test_nu_hat_converges_to_mu_hat(cantor3, rng):
    x = rng.uniform(-10, 10, 50)
    diff = np.abs(NuHatEvaluator(cantor3, 20)(x) - MuHatEvaluator(cantor3)(x))
    assert diff.max() < 1e-8


def test_atomic_transform_finite_product(remark18, cantor3, rng):
    for ifs in (cantor3, remark18):
        for n in (1, 3, 5):
            m = atomic_measure(ifs, n)
            x = rng.uniform(-8, 8, size=(30, ifs.dim))
            supp = np.array([[float(c) for c in p] for p in m.support])
            brute = np.exp(2j * np.pi * (x @ supp.T)).mean(axis=1)
            prod = np.ones(len(x), dtype=complex)
            y = x.copy()
            for _ in range(n):
                y = y @ ifs.RTinv_float.T
                prod *= mask_mB(ifs, y if ifs.dim > 1 else y[:, 0])
            xin = x if ifs.dim > 1 else x[:, 0]
            assert np.max(np.abs(brute - prod)) < 1e-12
            assert np.max(np.abs(m.transform(xin) - prod)) < 1e-12


def test_overlap_heuristic(cantor3):
    assert not overlap_heuristic(cantor3).suspect
    with pytest.warns(UserWarning):
        rep = overlap_heuristic(AffineIFS(2, [0, 1, 3]), level=3)
    assert rep.suspect
