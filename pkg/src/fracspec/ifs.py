"""Affine iterated function systems ``tau_b(x) = R^{-1}(x + b)`` and their transforms.

Points produced by the IFS (``tau_k(0)``, atomic supports) are exact
``Fraction`` tuples. Floating point only enters when exponentials are
evaluated.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import exact
from .errors import (
    DuplicateDigit,
    MissingZeroDigit,
    NotExpansive,
    SizeOverflow,
    TruncationFailure,
)
from .kernels import mask_product

TWO_PI = 2.0 * math.pi
DEFAULT_ATOMIC_CAP = 2 ** 20


def _as_matrix(R):
    if isinstance(R, (int, np.integer)):
        return ((int(R),),)
    rows = tuple(tuple(int(v) for v in row) for row in R)
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("R must be square")
    return rows


def _as_digits(B, dim):
    out = []
    for b in B:
        if isinstance(b, (int, np.integer)):
            b = (int(b),)
        b = tuple(int(v) for v in b)
        if len(b) != dim:
            raise ValueError(f"digit {b} does not have dimension {dim}")
        out.append(b)
    return tuple(out)


@dataclass(frozen=True)
class AffineIFS:
    """Expansive integer matrix ``R`` with digit set ``B``.

    ``R`` may be given as an int (d = 1) or nested rows; digits as ints (d = 1)
    or integer tuples. Construction only normalizes; call :func:`validate`
    to enforce the invariants.
    """

    R: tuple
    B: tuple

    def __init__(self, R, B):
        Rm = _as_matrix(R)
        object.__setattr__(self, "R", Rm)
        object.__setattr__(self, "B", _as_digits(B, len(Rm)))

    @property
    def dim(self):
        return len(self.R)

    @property
    def N(self):
        return len(self.B)

    @cached_property
    def RT(self):
        return exact.transpose(self.R)

    @cached_property
    def Rinv(self):
        return exact.inverse(self.R)

    @cached_property
    def RTinv(self):
        return exact.inverse(self.RT)

    @cached_property
    def RTinv_float(self):
        return np.array([[float(v) for v in row] for row in self.RTinv])

    @cached_property
    def digits_float(self):
        return np.array(self.B, dtype=float).reshape(self.N, self.dim)

    @cached_property
    def max_digit_norm(self):
        return max(math.sqrt(sum(v * v for v in b)) for b in self.B)

    def __repr__(self):
        if self.dim == 1:
            return f"AffineIFS(R={self.R[0][0]}, B={[b[0] for b in self.B]})"
        return f"AffineIFS(R={[list(r) for r in self.R]}, B={[list(b) for b in self.B]})"


def validate(ifs: AffineIFS) -> None:
    """Raise if ``ifs`` breaks an invariant: expansive R, distinct digits, 0 in B."""
    Rf = np.array(ifs.R, dtype=float)
    if abs(np.linalg.det(Rf)) < 0.5:
        raise NotExpansive(f"R={ifs.R} is singular")
    rho = max(abs(np.linalg.eigvals(np.linalg.inv(Rf))))
    if not rho < 1 - 1e-9:
        raise NotExpansive(f"spectral radius of R^-1 is {rho:.6g}, not < 1")
    if len(set(ifs.B)) != len(ifs.B):
        raise DuplicateDigit(f"digit set {ifs.B} has repeated elements")
    if ifs.N < 2:
        raise ValueError("digit set needs at least two elements")
    if (0,) * ifs.dim not in ifs.B:
        raise MissingZeroDigit("digit set must contain 0; see translate_digits()")


def translate_digits(B):
    """Shift a digit set so its lexicographically smallest element becomes 0.

    Translating B translates the attractor and multiplies the transform by a
    unimodular factor, so spectra are unchanged.
    """
    pts = [tuple(b) if not isinstance(b, (int, np.integer)) else (int(b),) for b in B]
    base = min(pts)
    return [tuple(x - y for x, y in zip(b, base)) for b in pts]


def contraction_profile(Minv, jmax):
    """Norms ``c_j = ||Minv^j||_2`` for ``j <= jmax`` plus a block contraction.

    Returns ``(c, p, s)`` with ``p`` the first power whose norm ``s`` is < 1,
    so that ``sum_{j>J} ||Minv^j x|| <= sum_{r=1..p} c_{J+r} ||x|| / (1 - s)``.
    """
    Minv = np.asarray(Minv, dtype=float)
    d = Minv.shape[0]
    c = [1.0]
    P = np.eye(d)
    p = s = None
    for j in range(1, jmax + 1):
        P = Minv @ P
        c.append(float(np.linalg.norm(P, 2)))
        if p is None and c[-1] < 1.0:
            p, s = j, c[-1]
    if p is None:
        raise NotExpansive("no contracting power found")
    return np.array(c), p, s


# ---------------------------------------------------------------------------
# words and exact points


def words(N, n):
    """All words of length ``n`` over ``range(N)`` in lexicographic order."""
    return itertools.product(range(N), repeat=n)


def word_point(ifs: AffineIFS, k) -> tuple:
    """Exact ``tau_k(0)`` for the word ``k = (k_1, ..., k_n)`` of digit indices.

    ``tau_k = tau_{k_n} o ... o tau_{k_1}``, so ``k_1`` is applied first.
    """
    x = (Fraction(0),) * ifs.dim
    for idx in k:
        b = ifs.B[idx]
        x = exact.mat_vec(ifs.Rinv, tuple(a + c for a, c in zip(x, b)))
    return tuple(Fraction(v) for v in x)


def _check_size(N, n, cap):
    if N ** n > cap:
        raise SizeOverflow(f"N^n = {N}^{n} exceeds cap {cap}")


def scaled_level_points(ifs: AffineIFS, n: int, cap: int = DEFAULT_ATOMIC_CAP):
    """Integer vectors ``v_k = R^n tau_k(0)`` for all words of length n (lex order)."""
    _check_size(ifs.N, n, cap)
    d = ifs.dim
    pts = np.zeros((1, d), dtype=object)
    Rpow = exact.identity(d)
    for _ in range(n):
        shifts = np.array([exact.mat_vec(Rpow, b) for b in ifs.B], dtype=object).reshape(ifs.N, d)
        pts = (pts[:, None, :] + shifts[None, :, :]).reshape(-1, d)
        Rpow = exact.mat_mul(ifs.R, Rpow)
    return pts


def level_points(ifs: AffineIFS, n: int, cap: int = DEFAULT_ATOMIC_CAP):
    """Exact ``tau_k(0)`` for all ``k in B^n`` in lexicographic word order."""
    v = scaled_level_points(ifs, n, cap)
    Rn_inv = exact.inverse(exact.mat_pow(ifs.R, n))
    return [exact.mat_vec(Rn_inv, tuple(int(c) for c in row)) for row in v]


@dataclass(frozen=True)
class AtomicMeasure:
    """Uniform probability measure on finitely many exact points."""

    support: tuple
    weight: Fraction = field(init=False)

    def __post_init__(self):
        support = tuple(tuple(Fraction(c) for c in p) for p in self.support)
        if len(set(support)) != len(support):
            raise ValueError("atomic support points must be distinct")
        if not support:
            raise ValueError("atomic support is empty")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "weight", Fraction(1, len(support)))

    @property
    def dim(self):
        return len(self.support[0])

    def transform(self, x):
        """``(1/#F) sum_f exp(2 pi i f.x)`` at one point or an array of points."""
        return AtomicTransform(self.support)(x)


def atomic_measure(ifs: AffineIFS, n: int, cap: int = DEFAULT_ATOMIC_CAP) -> AtomicMeasure:
    if n < 0:
        raise ValueError("n must be >= 0")
    return AtomicMeasure(tuple(level_points(ifs, n, cap)))


# ---------------------------------------------------------------------------
# transforms


def _as_points(x, dim):
    """Normalize input to an ``(m, dim)`` float array; also report scalar input."""
    if dim == 1 and np.ndim(x) == 0:
        return np.array([[float(x)]]), True
    if isinstance(x, (tuple, list)) and len(x) == dim and all(np.ndim(c) == 0 for c in x) and dim > 1:
        return np.array([[float(c) for c in x]]), True
    if isinstance(x, np.ndarray) and x.dtype != object:
        arr = x.astype(float, copy=False)
    else:
        arr = np.asarray(x, dtype=object).astype(float)
    if dim == 1:
        return arr.reshape(-1, 1), False
    if arr.ndim == 1:
        if arr.shape[0] != dim:
            raise ValueError(f"point has dimension {arr.shape[0]}, expected {dim}")
        return arr.reshape(1, dim), True
    return arr.reshape(-1, dim), False


def _ret(values, scalar):
    return complex(values[0]) if scalar else values


def mask_mB(ifs: AffineIFS, x) -> complex:
    """``m_B(x) = (1/N) sum_b exp(2 pi i b.x)``.

    Rational input is reduced mod 1 exactly before exponentiation, so points of
    the dual lattice give ``|m_B| = 1`` to machine precision.
    """
    pt = (x,) if ifs.dim == 1 and np.ndim(x) == 0 else x
    if (isinstance(pt, (tuple, list)) and len(pt) == ifs.dim
            and all(isinstance(c, (int, Fraction, np.integer)) for c in pt)):
        xf = tuple(Fraction(c) for c in pt)
        total = 0j
        for b in ifs.B:
            t = exact.dot(b, xf) % 1
            total += complex(math.cos(TWO_PI * t), math.sin(TWO_PI * t))
        return total / ifs.N
    pts, scalar = _as_points(x, ifs.dim)
    vals = np.exp(TWO_PI * 1j * (pts @ ifs.digits_float.T)).mean(axis=1)
    return _ret(vals, scalar)


class MuHatEvaluator:
    """Fourier transform of the invariant measure as a certified truncated product.

    ``mu_hat(x) = prod_{j>=1} m_B((R^T)^{-j} x)``. The number of factors ``J``
    is the smallest with analytic tail bound
    ``2 pi max|b| sum_{j>J} ||(R^T)^{-j} x|| <= tail_tolerance``.
    """

    def __init__(self, ifs: AffineIFS, tail_tolerance: float = 1e-12, max_factors: int = 200):
        if not tail_tolerance > 0:
            raise ValueError("tail_tolerance must be positive")
        self.ifs = ifs
        self.dim = ifs.dim
        self.tail_tolerance = float(tail_tolerance)
        self.max_factors = int(max_factors)
        c, p, s = contraction_profile(ifs.RTinv_float, self.max_factors + 64)
        if p > 64:
            raise NotExpansive("R^T contracts too slowly for the tail bound")
        # tail[J] = bound on sum_{j>J} ||(R^T)^{-j}|| (as an operator norm sum)
        tail = np.array([c[J + 1:J + p + 1].sum() / (1.0 - s) for J in range(self.max_factors + 1)])
        self._tail = TWO_PI * ifs.max_digit_norm * tail

    def factors_needed(self, norm: float) -> int:
        if norm == 0:
            return 0
        ok = np.nonzero(self._tail * norm <= self.tail_tolerance)[0]
        if ok.size == 0:
            raise TruncationFailure(
                f"|x| = {norm:.3g} needs more than {self.max_factors} factors "
                f"for tail tolerance {self.tail_tolerance:g}")
        return int(ok[0])

    def tail_bound(self, norm: float, J: int) -> float:
        return float(self._tail[J] * norm)

    def __call__(self, x):
        pts, scalar = _as_points(x, self.ifs.dim)
        if pts.shape[0] == 0:
            return np.zeros(0, dtype=complex)
        norms = np.linalg.norm(pts, axis=1)
        J = self.factors_needed(float(norms.max()))
        vals = mask_product(pts, self.ifs.RTinv_float, self.ifs.digits_float, J)
        vals[norms == 0] = 1.0
        return _ret(vals, scalar)


def mu_hat(ev: MuHatEvaluator, x):
    return ev(x)


def lebesgue_cube_transform(t):
    """Transform of Lebesgue measure on ``[0,1)^d``: ``prod e^{pi i t} sinc(t)``."""
    t = np.asarray(t, dtype=float)
    return np.prod(np.exp(1j * np.pi * t) * np.sinc(t), axis=-1)


class NuHatEvaluator:
    """Transform of ``T^n mu_0`` with ``mu_0`` Lebesgue measure on the unit cube.

    ``nu_hat_n(x) = prod_{j=1..n} m_B((R^T)^{-j} x) * mu0_hat((R^T)^{-n} x)``.
    With ``n = 0`` this is the unit-cube Lebesgue transform itself.
    """

    def __init__(self, ifs: AffineIFS, n: int):
        if n < 0:
            raise ValueError("n must be >= 0")
        self.ifs = ifs
        self.dim = ifs.dim
        self.n = int(n)
        self._Tn = np.linalg.matrix_power(ifs.RTinv_float, self.n)

    def __call__(self, x):
        pts, scalar = _as_points(x, self.ifs.dim)
        vals = mask_product(pts, self.ifs.RTinv_float, self.ifs.digits_float, self.n)
        vals = vals * lebesgue_cube_transform(pts @ self._Tn.T)
        vals[np.all(pts == 0, axis=1)] = 1.0
        return _ret(vals, scalar)


def nu_hat(ifs: AffineIFS, n: int, x):
    return NuHatEvaluator(ifs, n)(x)


class AtomicTransform:
    """Transform ``(1/#F) sum_f exp(2 pi i f.x)`` of a uniform atomic measure.

    Evaluated in floating point; for exact phases use
    :func:`fracspec.kernels.exact_phase_matrix`.
    """

    def __init__(self, support):
        self.support = [tuple(Fraction(c) for c in p) for p in support]
        self.dim = len(self.support[0])
        self._float = np.array([[float(c) for c in p] for p in self.support])

    def __call__(self, x):
        pts, scalar = _as_points(x, self.dim)
        vals = np.exp(TWO_PI * 1j * (pts @ self._float.T)).mean(axis=1)
        vals[np.all(pts == 0, axis=1)] = 1.0
        return _ret(vals, scalar)


# ---------------------------------------------------------------------------
# geometry


@dataclass(frozen=True)
class Box:
    lo: tuple
    hi: tuple

    def contains(self, x, slack=0.0):
        return all(float(l) - slack <= float(v) <= float(h) + slack
                   for l, v, h in zip(self.lo, x, self.hi))


def box_for_maps(M, digits, terms: int = 80) -> Box:
    """Box containing the attractor of ``x -> M^{-1}(x + d)``, d in ``digits``.

    The attractor is ``{sum_j M^{-j} d_j}``; the first ``terms`` summands are
    bounded componentwise and the rest by the geometric operator-norm tail.
    For d = 1 with M > 0 the exact interval is returned.
    """
    M = _as_matrix(M)
    dim = len(M)
    digits = _as_digits(digits, dim)
    if dim == 1 and M[0][0] > 1:
        r = M[0][0]
        vals = [b[0] for b in digits]
        return Box((Fraction(min(vals), r - 1),), (Fraction(max(vals), r - 1),))
    Minv = np.linalg.inv(np.array(M, dtype=float))
    D = np.array(digits, dtype=float).reshape(-1, dim)
    lo = np.zeros(dim)
    hi = np.zeros(dim)
    P = np.eye(dim)
    for _ in range(terms):
        P = Minv @ P
        img = D @ P.T
        lo += img.min(axis=0)
        hi += img.max(axis=0)
    c, p, s = contraction_profile(Minv, terms + 64)
    pad = np.linalg.norm(D, axis=1).max() * c[terms + 1:terms + p + 1].sum() / (1 - s)
    return Box(tuple(lo - pad), tuple(hi + pad))


def attractor_box(ifs: AffineIFS) -> Box:
    return box_for_maps(ifs.R, ifs.B)


@dataclass(frozen=True)
class OverlapReport:
    level: int
    cells: int
    overlapping_pairs: int

    @property
    def suspect(self):
        return self.overlapping_pairs > 0


def overlap_heuristic(ifs: AffineIFS, level: int = 6, max_cells: int = 2 ** 13) -> OverlapReport:
    """Count level-n cells whose bounding boxes have intersecting interiors.

    Only a heuristic: box overlap does not imply measure overlap (tiles
    overlap as boxes). Emits a warning when any pair overlaps, never raises.
    """
    while level > 0 and ifs.N ** level > max_cells:
        level -= 1
    box = attractor_box(ifs)
    lo = np.array([float(v) for v in box.lo])
    hi = np.array([float(v) for v in box.hi])
    Rn_inv = np.linalg.inv(np.linalg.matrix_power(np.array(ifs.R, dtype=float), level))
    corners = np.array(list(itertools.product(*zip(lo, hi))))
    img = corners @ Rn_inv.T
    clo, chi = img.min(axis=0), img.max(axis=0)
    origins = np.array([[float(c) for c in p] for p in level_points(ifs, level)])
    a, b = origins + clo, origins + chi
    count = 0
    for i in range(len(origins)):
        sep = (b[i + 1:] <= a[i] + 1e-15) | (a[i + 1:] >= b[i] - 1e-15)
        count += int(np.sum(~sep.any(axis=1)))
    report = OverlapReport(level, len(origins), count)
    if report.suspect:
        warnings.warn(f"{count} cell boxes overlap at level {level}; no-overlap not confirmed",
                      stacklevel=2)
    return report
