"""Hadamard pairs, the dual lattice of a digit set, and spectral diagnostics."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact
from .errors import DegenerateDigits, SizeMismatch
from .exact import Lattice
from .ifs import AffineIFS, _as_digits, _as_points, mask_mB

UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class HadamardPair:
    ifs: AffineIFS
    L: tuple
    unitarity_deviation: float

    @property
    def accepted(self):
        return self.unitarity_deviation <= UNITARITY_TOL

    def dual_map(self, l, x):
        """Exact ``tau_l(x) = (R^T)^{-1}(x + l)``."""
        return exact.mat_vec(self.ifs.RTinv, tuple(Fraction(a) + b for a, b in zip(x, l)))


def hadamard_matrix(ifs: AffineIFS, L) -> np.ndarray:
    """``(1/sqrt N) exp(2 pi i R^{-1} b . l)`` with phases reduced mod 1 exactly."""
    L = _as_digits(L, ifs.dim)
    H = np.empty((ifs.N, len(L)), dtype=complex)
    for i, b in enumerate(ifs.B):
        y = exact.mat_vec(ifs.Rinv, b)
        for j, l in enumerate(L):
            t = float(exact.dot(y, l) % 1)
            H[i, j] = complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t))
    return H / math.sqrt(ifs.N)


def check_hadamard(ifs: AffineIFS, L) -> HadamardPair:
    L = _as_digits(L, ifs.dim)
    if len(L) != ifs.N:
        raise SizeMismatch(f"|L| = {len(L)} but |B| = {ifs.N}")
    H = hadamard_matrix(ifs, L)
    dev = float(np.max(np.abs(H.conj().T @ H - np.eye(ifs.N))))
    return HadamardPair(ifs, L, dev)


def dual_lattice(B, dim: int) -> Lattice:
    """``{g : g.b in Z for all b in B}``, computed exactly from the HNF of span(B)."""
    digits = _as_digits(B, dim)
    rows = exact.integer_span_basis(digits, dim)
    if rows is None:
        raise DegenerateDigits(f"digits {digits} do not span R^{dim}")
    # rows g_i generate span(B); the dual basis is the columns of G^{-1}
    return Lattice(exact.transpose(exact.inverse(rows)))


def incongruent_mod_dual(pair: HadamardPair, lattice: Lattice) -> bool:
    """True if no two elements of L differ by an element of ``R^T * lattice``."""
    L = pair.L
    for i in range(len(L)):
        for j in range(i + 1, len(L)):
            diff = tuple(a - b for a, b in zip(L[i], L[j]))
            if exact.mat_vec(pair.ifs.RTinv, diff) in lattice:
                return False
    return True


def transfer_one(ifs: AffineIFS, L, x):
    """``(R_{B,L} 1)(x) = sum_l |m_B((R^T)^{-1}(x + l))|^2``; vectorized over points."""
    L = np.array(_as_digits(L, ifs.dim), dtype=float).reshape(-1, ifs.dim)
    pts, scalar = _as_points(x, ifs.dim)
    total = np.zeros(pts.shape[0])
    for l in L:
        y = (pts + l) @ ifs.RTinv_float.T
        total += np.abs(mask_mB(ifs, y if ifs.dim > 1 else y[:, 0])) ** 2
    return float(total[0]) if scalar else total


def _points_array(points, dim):
    return np.array([[float(c) for c in exact.as_point(p, dim)] for p in points],
                    dtype=float).reshape(-1, dim)


def h_function(ev, points, x) -> float:
    """Partial sum ``sum_{lambda in points} |mu_hat(x + lambda)|^2``.

    Never extrapolated: for a truncated spectrum this is a lower partial sum of
    a series that equals 1 for a true spectrum.
    """
    dim = ev.dim
    if len(points) == 0:
        return 0.0
    P = _points_array(points, dim)
    x0 = np.array([float(c) for c in (x if np.ndim(x) else (x,))])
    vals = ev(P + x0 if dim > 1 else (P + x0)[:, 0])
    return float(np.sum(np.abs(vals) ** 2))


def orthogonality_deviation(ev, points) -> float:
    """``max |mu_hat(l - l')|`` over distinct pairs of points (0 for fewer than 2)."""
    dim = ev.dim
    if len(points) < 2:
        return 0.0
    P = _points_array(points, dim)
    i, j = np.triu_indices(len(P), k=1)
    diffs = P[i] - P[j]
    vals = ev(diffs if dim > 1 else diffs[:, 0])
    return float(np.max(np.abs(vals)))
