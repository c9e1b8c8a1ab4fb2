"""Bessel, frame and Riesz bound estimates through finite matrices.

The central object is the analysis matrix

    A_n = N^{-n/2} ( exp(-2 pi i lambda . tau_k(0)) )_{lambda in Lambda_n(r0), k in B^n}

whose uniform boundedness in ``n`` is equivalent to the Bessel property for a
no-overlap affine IFS measure. Everything reported here is evidence up to the
scanned depth, never a proof for all ``n``.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import exact
from .errors import NoLowerBound, SizeOverflow
from .hadamard import _points_array
from .ifs import AffineIFS, AtomicMeasure, MuHatEvaluator, scaled_level_points, words
from .kernels import exact_phase_matrix
from .numerics import hermitian_extremes, singular_extremes
from .spectra import SpectrumSet, lambda_n_filter

DEFAULT_R0 = 1.0
DEFAULT_NMAX = 8
DEFAULT_CAP = 2 ** 16
FLOAT_FMT = "%.12e"
EVIDENCE_TOL = 1e-12  # below this delta or m_hat counts as zero


@dataclass(frozen=True)
class AnalysisMatrix:
    matrix: np.ndarray
    row_index: SpectrumSet
    ifs: AffineIFS
    n: int
    r0: float

    @property
    def scale(self):
        return self.ifs.N ** (-self.n / 2)

    @property
    def col_index(self):
        """Words ``k in B^n`` labelling the columns, lexicographic."""
        return list(words(self.ifs.N, self.n))

    @property
    def shape(self):
        return self.matrix.shape


def build_An(ifs: AffineIFS, spectrum, n: int, r0: float = DEFAULT_R0,
             cap: int = DEFAULT_CAP) -> AnalysisMatrix:
    """Assemble ``A_n`` with rows ``Lambda_n(r0)`` (sorted) and columns ``B^n`` (lex).

    Phases are exact: ``lambda . tau_k(0) = ((R^T)^{-n} lambda) . (R^n tau_k(0))``
    with the second factor an integer vector.
    """
    if ifs.N ** n > cap:
        raise SizeOverflow(f"N^n = {ifs.N}^{n} exceeds cap {cap}")
    rows = lambda_n_filter(spectrum, ifs.R, n, r0)
    cols = scaled_level_points(ifs, n, cap)
    Tn = exact.inverse(exact.mat_pow(ifs.RT, n))
    mu = [exact.mat_vec(Tn, lam) for lam in rows.points]
    M = exact_phase_matrix(mu, [tuple(int(c) for c in v) for v in cols], sign=-1)
    M *= ifs.N ** (-n / 2)
    if not rows.points:
        M = np.zeros((0, len(cols)), dtype=complex)
    return AnalysisMatrix(M, rows, ifs, n, float(r0))


@dataclass(frozen=True)
class BoundRecord:
    n: int
    rows: int
    cols: int
    sigma_max: float
    sigma_min: float


@dataclass(frozen=True)
class BoundSeries:
    records: tuple
    r0: float

    def sigma_max(self):
        return [r.sigma_max for r in self.records]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("n,rows,cols,sigma_max,sigma_min\n")
        for r in self.records:
            buf.write(f"{r.n},{r.rows},{r.cols},{FLOAT_FMT % r.sigma_max},{FLOAT_FMT % r.sigma_min}\n")
        return buf.getvalue()


def bessel_scan(ifs: AffineIFS, spectrum, r0: float = DEFAULT_R0, n_max: int = DEFAULT_NMAX,
                n_min: int = 1, cap: int = DEFAULT_CAP) -> BoundSeries:
    """Extremal singular values of ``A_n`` for ``n_min <= n <= n_max``.

    Bounded ``sigma_max`` is evidence for the Bessel property; steady growth
    is evidence against it. Nothing is claimed beyond ``n_max``.
    """
    if n_max < n_min:
        raise ValueError("n_max must be >= n_min")
    recs = []
    for n in range(n_min, n_max + 1):
        A = build_An(ifs, spectrum, n, r0, cap)
        ext = singular_extremes(A.matrix)
        recs.append(BoundRecord(n, A.shape[0], A.shape[1], ext.sigma_max, ext.sigma_min))
    return BoundSeries(tuple(recs), float(r0))


@dataclass(frozen=True)
class FrameCertificate:
    r0: float
    delta: float
    m_hat: float
    M_hat: float
    n_max: int
    grid_step: float
    series: BoundSeries

    @property
    def frame_evidence(self):
        return self.delta > EVIDENCE_TOL and self.m_hat > EVIDENCE_TOL

    def to_text(self) -> str:
        items = [
            ("r0", FLOAT_FMT % self.r0),
            ("grid_step", FLOAT_FMT % self.grid_step),
            ("delta", FLOAT_FMT % self.delta),
            ("m_hat", FLOAT_FMT % self.m_hat),
            ("M_hat", FLOAT_FMT % self.M_hat),
            ("n_max", str(self.n_max)),
            ("frame_evidence", "true" if self.frame_evidence else "false"),
            ("scope", f"evidence at depth {self.n_max}"),
        ]
        return "".join(f"{k}={v}\n" for k, v in items)


def min_abs_on_ball(ev, r0: float, grid_step: float) -> float:
    """Minimum of ``|ev|`` over a uniform grid of the closed ``r0``-ball."""
    dim = ev.dim
    k = int(math.floor(r0 / grid_step + 1e-9))
    axis = np.arange(-k, k + 1) * grid_step
    if dim == 1:
        pts = axis
    else:
        mesh = np.array(np.meshgrid(*([axis] * dim), indexing="ij")).reshape(dim, -1).T
        pts = mesh[np.linalg.norm(mesh, axis=1) <= r0 + 1e-12]
    return float(np.min(np.abs(ev(pts))))


def frame_certificate(ifs: AffineIFS, spectrum, r0: float = DEFAULT_R0,
                      n_max: int = DEFAULT_NMAX, grid_step: float | None = None,
                      ev=None, cap: int = DEFAULT_CAP) -> FrameCertificate:
    """Numerical frame evidence: grid minimum of ``|mu_hat|`` plus ``A_n`` bounds.

    ``m_hat = min_n sigma_min^2`` and ``M_hat = max_n sigma_max^2`` over
    ``1 <= n <= n_max``. Raises ``NoLowerBound`` when some ``A_n`` has fewer
    rows than columns, since its lower bound is then 0 by rank.
    """
    if grid_step is None:
        grid_step = r0 / 100
    if not r0 > 0 or not 0 < grid_step <= r0 / 100 * (1 + 1e-12):
        raise ValueError("need r0 > 0 and 0 < grid_step <= r0/100")
    series = bessel_scan(ifs, spectrum, r0, n_max, 1, cap)
    short = [r for r in series.records if r.rows < r.cols]
    if short:
        r = short[0]
        raise NoLowerBound(f"A_{r.n} is {r.rows}x{r.cols}: Lambda_n(r0) too sparse for a lower bound")
    ev = ev if ev is not None else MuHatEvaluator(ifs)
    delta = min_abs_on_ball(ev, r0, grid_step)
    m_hat = min(r.sigma_min ** 2 for r in series.records)
    M_hat = max(r.sigma_max ** 2 for r in series.records)
    return FrameCertificate(float(r0), delta, m_hat, M_hat, n_max, float(grid_step), series)


# ---------------------------------------------------------------------------
# Gram-matrix route


def gram_matrix(ev, spectrum) -> np.ndarray:
    """``(ev(lambda - lambda'))``: the Gram matrix of the exponentials in ``L^2(mu)``.

    ``ev`` is any transform evaluator (invariant measure, ``T^n mu_0``, atomic).
    The diagonal is set to exactly 1 and the lower triangle mirrors the upper.
    """
    pts = list(spectrum)
    m = len(pts)
    G = np.eye(m, dtype=complex)
    if m < 2:
        return G
    dim = ev.dim
    P = _points_array(pts, dim)
    i, j = np.triu_indices(m, k=1)
    diffs = P[i] - P[j]
    vals = ev(diffs if dim > 1 else diffs[:, 0])
    G[i, j] = vals
    G[j, i] = np.conj(vals)
    return G


def schur_bound(ev, spectrum) -> float:
    """``max_lambda sum_lambda' |ev(lambda - lambda')|`` on the finite set."""
    G = gram_matrix(ev, spectrum)
    if G.size == 0:
        return 0.0
    return float(np.max(np.abs(G).sum(axis=1)))


def bessel_bound_atomic(F, G) -> float:
    """Optimal Bessel bound of ``E(G)`` in ``L^2(delta_F)``.

    Equal to ``||(#F)^{-1/2} (exp(2 pi i f.g))||^2``; computed here as the top
    eigenvalue of its Gram matrix ``(delta_F_hat(g - g'))``.
    """
    support = F.support if isinstance(F, AtomicMeasure) else [exact.as_point(p) for p in F]
    gpts = list(G)
    if not support or not gpts:
        raise ValueError("F and G must be nonempty")
    E = exact_phase_matrix(support, gpts, sign=1) / math.sqrt(len(support))
    gram = E.conj().T @ E
    gram = 0.5 * (gram + gram.conj().T)
    lam_max, _ = hermitian_extremes(gram)
    return lam_max


@dataclass(frozen=True)
class LimitSummary:
    inf_lower: float
    sup_upper: float
    limit_positive: bool
    limit_finite: bool


def riesz_limit_monitor(series, tol: float = 1e-8, cap: float = 1e8) -> LimitSummary:
    """Summarize ``(A_n, B_n)`` estimates: ``inf A_n``, ``sup B_n`` and two flags.

    No extrapolation: the flags describe only the supplied terms.
    """
    series = list(series)
    if not series:
        raise ValueError("series is empty")
    lo = min(float(a) for a, _ in series)
    hi = max(float(b) for _, b in series)
    return LimitSummary(lo, hi, lo > tol, hi < cap)
