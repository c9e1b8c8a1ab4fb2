"""Acceptance criteria 1-11. Each test records one PASS/FAIL line, printed at the end of the run."""
import math
from fractions import Fraction as F

import numpy as np

from conftest import lacunary, record_criterion
from fracspec.bounds import bessel_bound_atomic, bessel_scan, build_An, frame_certificate, gram_matrix
from fracspec.cantor import (CANTOR3, PQConfig, base_matrix, gamma_truncation, p_set,
                             p_set_recursive, pq_matrix, riesz_series)
from fracspec.cli import build_spectrum
from fracspec.exact import Lattice
from fracspec.hadamard import (check_hadamard, dual_lattice, h_function, orthogonality_deviation,
                               transfer_one)
from fracspec.ifs import (AffineIFS, MuHatEvaluator, NuHatEvaluator, atomic_measure, mask_mB)
from fracspec.numerics import hermitian_extremes, operator_norm, singular_extremes
from fracspec.presets import preset, preset_names
from fracspec.spectra import (SpectrumSet, find_extreme_cycles, s_chain_membership,
                              spectrum_from_cycles)

SEED = 12345


def pair_of(name):
    cfg = preset(name)
    return cfg, check_hadamard(AffineIFS(cfg.R, cfg.B), cfg.L)


def test_criterion_01_hadamard_checks():
    dq = pair_of("quarter-cantor")[1].unitarity_deviation
    dr = pair_of("remark18")[1].unitarity_deviation
    dc = check_hadamard(AffineIFS(3, [0, 2]), [0, 1]).unitarity_deviation
    ok = dq < 1e-12 and dr < 1e-12 and dc >= 0.49
    assert record_criterion(1, ok, f"deviations quarter={dq:.2e} remark18={dr:.2e} cantor3={dc:.6f}")


def test_criterion_02_cantor_matrix_bounds():
    ext = singular_extremes(base_matrix())
    e1, e2 = abs(ext.sigma_max - math.sqrt(1.5)), abs(ext.sigma_min - math.sqrt(0.5))
    assert record_criterion(2, e1 < 1e-12 and e2 < 1e-12,
                            f"|sigma_max - sqrt(3/2)|={e1:.1e}, |sigma_min - sqrt(1/2)|={e2:.1e}")


def test_criterion_03_cycles_and_spectrum():
    _, pair = pair_of("quarter-cantor")
    cycles = find_extreme_cycles(pair)
    cyc_ok = [c.points for c in cycles if c.extreme] == [((0,),)]
    spec3 = [int(p[0]) for p in spectrum_from_cycles(cycles, 4, [0, 1], 3)]
    spec_ok = spec3 == [0, 1, 4, 5, 16, 17, 20, 21]
    lat = dual_lattice(pair.ifs.B, 1)
    spec6 = spectrum_from_cycles(cycles, 4, [0, 1], 6)
    member_ok = all(s_chain_membership(p, pair, lat, 6) for p in spec6)
    spec5 = spectrum_from_cycles(cycles, 4, [0, 1], 5)
    orth = orthogonality_deviation(MuHatEvaluator(pair.ifs), list(spec5))
    ok = cyc_ok and spec_ok and member_ok and orth < 1e-8
    shown = [[int(p[0]) for p in c.points] for c in cycles]
    assert record_criterion(3, ok, f"cycles={shown}, depth-3={spec3}, "
                                   f"membership(6) all={member_ok} over {len(spec6)}, orth={orth:.1e}")


def test_criterion_04_remark18():
    _, pair = pair_of("remark18")
    lat = dual_lattice(pair.ifs.B, 2)
    member = s_chain_membership((0, F(2, 3)), pair, lat, 1)
    lat_ok = lat == Lattice([(1, 0), (0, F(1, 3))])
    assert record_criterion(4, member is False and lat_ok,
                            f"(0,2/3) in S Pi(B): {member}; Pi(B) == Z x (1/3)Z: {lat_ok}")


def test_criterion_05_transfer_identity():
    rng = np.random.default_rng(SEED)
    devs = {}
    for name in ("quarter-cantor", "remark18"):
        _, pair = pair_of(name)
        x = rng.uniform(-50, 50, size=(100, pair.ifs.dim))
        t = transfer_one(pair.ifs, pair.L, x if pair.ifs.dim > 1 else x[:, 0])
        devs[name] = float(np.max(np.abs(t - 1)))
    assert record_criterion(5, max(devs.values()) < 1e-10,
                            ", ".join(f"{k} max|R1-1|={v:.1e}" for k, v in devs.items()))


def test_criterion_06_riesz_envelope():
    rows = riesz_series(5, z_range=10)
    bad = [(n, a, b) for n, a, b in rows
           if not (a >= 0.5 ** (n / 2) - 1e-6 and b <= 1.5 ** (n / 2) + 1e-6)]
    detail = "; ".join(f"n={n} A={a:.4f}>={0.5 ** (n / 2):.4f} B={b:.4f}<={1.5 ** (n / 2):.4f}"
                       for n, a, b in rows)
    assert record_criterion(6, not bad, detail)


def test_criterion_07_bessel_divergence():
    spec = SpectrumSet.of([x for x in lacunary(3, 10) if x < 3 ** 10])
    s = bessel_scan(CANTOR3, spec, 1.0, 8, n_min=2).sigma_max()
    increasing = all(b > a for a, b in zip(s, s[1:]))
    ratio = s[-1] / s[0]
    assert record_criterion(7, increasing and ratio > 1.2,
                            f"sigma_max n=2..8 strictly increasing={increasing}, ratio={ratio:.4f}")


def test_criterion_08_cross_path():
    worst = {}
    for name in preset_names():
        cfg = preset(name)
        ifs = AffineIFS(cfg.R, cfg.B)
        spec = build_spectrum(cfg)
        w = 0.0
        for n in range(1, 7):
            A = build_An(ifs, spec, n, cfg.r0)
            if A.shape[0] == 0:
                continue
            atomic = bessel_bound_atomic(atomic_measure(ifs, n), A.row_index)
            w = max(w, abs(operator_norm(A.matrix) ** 2 - atomic))
        worst[name] = w
    assert record_criterion(8, max(worst.values()) < 1e-10,
                            ", ".join(f"{k}={v:.1e}" for k, v in worst.items()))


def test_criterion_09_onb_stability():
    # r0 = 1/2: Lambda_n(r0) is exactly the 2^n spectrum points below 4^n / 2
    cfg, pair = pair_of("quarter-cantor")
    spec = SpectrumSet.of(lacunary(4, 10))
    r0 = 0.5
    series = bessel_scan(pair.ifs, spec, r0, 8)
    smax_ok = all(abs(r.sigma_max - 1) <= 1e-6 for r in series.records)
    square = all(r.rows >= r.cols for r in series.records)
    cert = frame_certificate(pair.ifs, spec, r0, 8)
    cert_ok = cert.delta > 0 and abs(cert.m_hat - 1) <= 1e-4 and abs(cert.M_hat - 1) <= 1e-4
    assert record_criterion(9, smax_ok and square and cert_ok,
                            f"r0={r0}: sigma_max in 1+-1e-6 for n<=8: {smax_ok}; rows>=cols: {square}; "
                            f"delta={cert.delta:.4f} m_hat={cert.m_hat:.8f} M_hat={cert.M_hat:.8f}")


def test_criterion_10_transform_properties():
    rng = np.random.default_rng(SEED)
    refine = 0.0
    for name in ("cantor3", "remark18"):
        cfg = preset(name)
        ifs = AffineIFS(cfg.R, cfg.B)
        ev = MuHatEvaluator(ifs, cfg.tail_tolerance)
        x = rng.uniform(-20, 20, size=(100, ifs.dim))
        y = x @ ifs.RTinv_float.T
        flat = (lambda a: a) if ifs.dim > 1 else (lambda a: a[:, 0])
        d = np.max(np.abs(ev(flat(x)) - mask_mB(ifs, flat(y)) * ev(flat(y))))
        refine = max(refine, d / (2 * ev.tail_tolerance))
    x = rng.uniform(-10, 10, 50)
    conv = float(np.max(np.abs(NuHatEvaluator(CANTOR3, 20)(x) - MuHatEvaluator(CANTOR3)(x))))
    finite = 0.0
    for name in ("quarter-cantor", "remark18"):
        cfg = preset(name)
        ifs = AffineIFS(cfg.R, cfg.B)
        for n in (1, 3, 5):
            m = atomic_measure(ifs, n)
            pts = rng.uniform(-8, 8, size=(30, ifs.dim))
            supp = np.array([[float(c) for c in p] for p in m.support])
            brute = np.exp(2j * np.pi * pts @ supp.T).mean(axis=1)
            prod = np.ones(30, dtype=complex)
            y = pts
            for _ in range(n):
                y = y @ ifs.RTinv_float.T
                prod *= mask_mB(ifs, y if ifs.dim > 1 else y[:, 0])
            finite = max(finite, float(np.max(np.abs(brute - prod))))
    hmax = 0.0
    for name in ("quarter-cantor", "remark18"):
        cfg = preset(name)
        ifs = AffineIFS(cfg.R, cfg.B)
        spec = build_spectrum(cfg)
        ev = MuHatEvaluator(ifs, cfg.tail_tolerance)
        for _ in range(5):
            x0 = rng.uniform(-1, 1, ifs.dim)
            hmax = max(hmax, h_function(ev, list(spec), x0 if ifs.dim > 1 else float(x0[0])))
    ok = refine <= 1 and conv < 1e-8 and finite < 1e-12 and hmax <= 1 + 1e-9
    assert record_criterion(10, ok, f"refinement err/(2 tol)={refine:.2f}, |nu20-mu|={conv:.1e}, "
                                    f"finite product={finite:.1e}, max h={hmax:.12f}")


def test_criterion_11_pq_theorem():
    diffs = []
    for n in range(1, 5):
        _, rep = pq_matrix(PQConfig.standard(n))
        G = gram_matrix(NuHatEvaluator(CANTOR3, n), gamma_truncation(n, 10))
        lam_max, _ = hermitian_extremes(G, tol=1e-10)
        diffs.append(abs(rep.bessel_bound - lam_max))
    recursion_ok = all(p_set(n) == p_set_recursive(n) for n in range(1, 11))
    ok = max(diffs) < 1e-8 and recursion_ok
    assert record_criterion(11, ok, f"max |L^2 - Gram lambda_max| n<=4: {max(diffs):.1e}; "
                                    f"P_n recursion n<=10: {recursion_ok}")
