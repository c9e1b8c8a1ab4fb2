"""The middle-third Cantor example end to end.

``tau_0(x) = x/3``, ``tau_1(x) = (x+2)/3`` act on ``Omega_0 = [0,1]``;
``nu_n`` is normalized Lebesgue measure on ``Omega_n``. On the frequency side
``rho_0(x) = 3x``, ``rho_1(x) = 3x+1`` generate ``Gamma_n = 3^n Z + Q_n``. The
Riesz bounds of ``Gamma_n`` in ``L^2(nu_n)`` are sandwiched between
``(1/2)^{n/2}`` and ``(3/2)^{n/2}``, the extremal singular values of
``U = 2^{-1/2} [[1, 1], [1, e^{4 pi i/3}]]`` raised to the n-th power.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bounds import gram_matrix
from .errors import SizeOverflow
from .ifs import AffineIFS, NuHatEvaluator
from .kernels import exact_phase_matrix
from .numerics import hermitian_extremes, singular_extremes
from .spectra import Provenance, SpectrumSet

CANTOR3 = AffineIFS(3, [0, 2])
DUAL_DIGITS = (0, 1)
A_BASE = math.sqrt(0.5)
B_BASE = math.sqrt(1.5)
DEFAULT_Z_RANGE = 10
LEVEL_CAP = 20


def base_matrix() -> np.ndarray:
    return np.array([[1, 1], [1, np.exp(4j * np.pi / 3)]]) / math.sqrt(2)


@dataclass(frozen=True)
class OmegaSet:
    n: int
    intervals: tuple  # sorted ((a, b), ...) with Fraction endpoints

    @property
    def left_endpoints(self):
        return [a for a, _ in self.intervals]

    @property
    def density(self):
        """Density of ``nu_n`` on its support: ``(3/2)^n``."""
        return Fraction(3, 2) ** self.n


def omega_intervals(n: int) -> OmegaSet:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > LEVEL_CAP:
        raise SizeOverflow(f"level {n} exceeds cap {LEVEL_CAP}")
    ivs = [(Fraction(0), Fraction(1))]
    for _ in range(n):
        ivs = [((a + t) / 3, (b + t) / 3) for t in (0, 2) for a, b in ivs]
    return OmegaSet(n, tuple(sorted(ivs)))


def p_set(n: int) -> list[int]:
    """Integer left endpoints of the intervals of ``3^n Omega_n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    scale = 3 ** n
    return [int(a * scale) for a in omega_intervals(n).left_endpoints]


def p_set_recursive(n: int) -> list[int]:
    """``P_n = union_{p in P_{n-1}} {p, p + 2*3^(n-1)}`` with ``P_1 = {0, 2}``."""
    P = [0, 2]
    for k in range(2, n + 1):
        P = sorted(q for p in P for q in (p, p + 2 * 3 ** (k - 1)))
    return P


def gamma_n(n: int) -> SpectrumSet:
    """Residues ``Q_n`` with ``Gamma_n = 3^n Z + Q_n`` (orbit of 0 under rho-words)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > LEVEL_CAP:
        raise SizeOverflow(f"level {n} exceeds cap {LEVEL_CAP}")
    Q = [0]
    for _ in range(n):
        Q = [3 * q + l for q in Q for l in DUAL_DIGITS]
    return SpectrumSet.of(Q, provenance=Provenance.GAMMA_N, depth=n,
                          truncation_note=f"residues mod 3^{n}")


def gamma_truncation(n: int, z_range: int = DEFAULT_Z_RANGE) -> SpectrumSet:
    """``{q + 3^n z : q in Q_n, |z| <= z_range}``."""
    Q = [int(p[0]) for p in gamma_n(n)]
    pts = [q + 3 ** n * z for q in Q for z in range(-z_range, z_range + 1)]
    return SpectrumSet.of(pts, provenance=Provenance.GAMMA_N, depth=n,
                          truncation_note=f"|z| <= {z_range}")


@dataclass(frozen=True)
class PQConfig:
    n: int
    P: tuple
    Q: tuple

    def __post_init__(self):
        P = tuple(int(p) for p in self.P)
        Q = tuple(int(q) for q in self.Q)
        if any(b <= a for a, b in zip(P, P[1:])) or any(b <= a for a, b in zip(Q, Q[1:])):
            raise ValueError("P and Q must be strictly increasing")
        if Q and (Q[0] < 0 or Q[-1] >= 3 ** self.n):
            raise ValueError(f"Q must lie in [0, 3^{self.n})")
        if len(P) != 2 ** self.n:
            raise ValueError(f"P must have 2^{self.n} elements")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "Q", Q)

    @classmethod
    def standard(cls, n: int, Q=None):
        """Geometric ``P_n`` with ``Q`` defaulting to the residues of ``Gamma_n``."""
        if Q is None:
            Q = [int(p[0]) for p in gamma_n(n)]
        return cls(n, tuple(p_set(n)), tuple(Q))


@dataclass(frozen=True)
class PQReport:
    norm: float
    lower: float  # smallest singular value over the Q-index space
    L: float
    L_lower: float
    bessel_bound: float


def pq_matrix(cfg: PQConfig):
    """The ``2^n x r_n`` matrix ``(exp(2 pi i q_l p_m / 3^n))`` with rows indexed by P.

    Returns ``(matrix, report)``; ``report.L = ||M|| / 2^{n/2}`` and the implied
    Bessel bound of ``Gamma_n`` for ``nu_n`` is ``L^2``.
    """
    scale = Fraction(1, 3 ** cfg.n)
    M = exact_phase_matrix([(p * scale,) for p in cfg.P], [(q,) for q in cfg.Q], sign=1)
    ext = singular_extremes(M)
    root = 2 ** (cfg.n / 2)
    L = ext.sigma_max / root
    return M, PQReport(ext.sigma_max, ext.sigma_min, L, ext.sigma_min / root, L * L)


def riesz_estimate(n: int, z_range: int = DEFAULT_Z_RANGE):
    """``(A_hat, B_hat)``: square roots of the extreme Gram eigenvalues of a
    ``Gamma_n`` truncation in ``L^2(nu_n)``."""
    pts = gamma_truncation(n, z_range)
    G = gram_matrix(NuHatEvaluator(CANTOR3, n), pts)
    lam_max, lam_min = hermitian_extremes(G, tol=1e-10)
    return math.sqrt(max(lam_min, 0.0)), math.sqrt(lam_max)


def riesz_series(n_max: int, z_range: int = DEFAULT_Z_RANGE, n_min: int = 1):
    """``[(n, A_hat_n, B_hat_n)]`` for ``n_min <= n <= n_max``."""
    if n_max < 1 or z_range < 1:
        raise ValueError("need n_max >= 1 and z_range >= 1")
    return [(n, *riesz_estimate(n, z_range)) for n in range(n_min, n_max + 1)]


def riesz_envelope(n: int):
    """Theoretical ``(A^n, B^n) = ((1/2)^{n/2}, (3/2)^{n/2})``."""
    return A_BASE ** n, B_BASE ** n


def bench_report(n_max: int, z_range: int = DEFAULT_Z_RANGE, tol: float = 1e-6) -> str:
    """CSV ``n,A_lower_est,B_upper_est,A_bound,B_bound,pass``."""
    buf = io.StringIO()
    buf.write("n,A_lower_est,B_upper_est,A_bound,B_bound,pass\n")
    for n, a, b in riesz_series(n_max, z_range):
        A, B = riesz_envelope(n)
        ok = a >= A - tol and b <= B + tol
        buf.write(f"{n},{a:.12e},{b:.12e},{A:.12e},{B:.12e},{'pass' if ok else 'fail'}\n")
    return buf.getvalue()
