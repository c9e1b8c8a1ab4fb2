"""Dense complex linear algebra: operator norms and extremal singular values.

Matrices up to ``EXACT_SVD_LIMIT`` in both dimensions go through LAPACK's
SVD. Larger ones use power iteration on ``M^* M`` (and a shifted iteration
for the bottom of the spectrum).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, NonFinite, NotHermitian

EXACT_SVD_LIMIT = 4096
POWER_TOL = 1e-10
POWER_MAX_ITER = 100_000


@dataclass(frozen=True)
class SingularExtremes:
    sigma_max: float
    sigma_min: float
    method: str  # "exact-svd" or "power-iteration"
    residual: float = 0.0


def as_matrix(M) -> np.ndarray:
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NonFinite("matrix has NaN or Inf entries")
    return A


def _choose(A, method):
    if method is not None:
        return method
    if max(A.shape) <= EXACT_SVD_LIMIT:
        return "exact-svd"
    return "power-iteration"


def operator_norm(M, method=None) -> float:
    """Largest singular value of ``M`` (0 for an empty matrix)."""
    return singular_extremes(M, method=method).sigma_max


def singular_extremes(M, method=None, tol=POWER_TOL, max_iter=POWER_MAX_ITER, seed=0) -> SingularExtremes:
    """Largest and smallest singular values of ``M``.

    ``sigma_min`` is ``min ||M f||`` over unit ``f`` in the column index space,
    so it is 0 whenever ``M`` has more columns than rows.

    Parameters
    ----------
    M : array_like
        Complex matrix.
    method : {None, "exact-svd", "power-iteration"}
        ``None`` picks by size.
    tol, max_iter, seed
        Power-iteration controls; ``tol`` bounds the relative eigen-residual.
    """
    A = as_matrix(M)
    rows, cols = A.shape
    if A.size == 0:
        return SingularExtremes(0.0, 0.0, "exact-svd")
    method = _choose(A, method)
    if method == "exact-svd":
        s = np.linalg.svd(A, compute_uv=False)
        smax = float(s[0])
        smin = float(s[-1]) if rows >= cols else 0.0
        return SingularExtremes(smax, smin, method)
    if method != "power-iteration":
        raise ValueError(f"unknown method {method!r}")

    def gram(v):
        return A.conj().T @ (A @ v)

    rng = np.random.default_rng(seed)
    lam_max, res_max = _power(gram, cols, rng, tol, max_iter)
    if rows < cols:
        return SingularExtremes(float(np.sqrt(lam_max)), 0.0, method, res_max)
    shift = lam_max

    def shifted(v):
        return shift * v - gram(v)

    mu, res_min = _power(shifted, cols, rng, tol, max_iter, scale=shift)
    lam_min = max(shift - mu, 0.0)
    return SingularExtremes(float(np.sqrt(lam_max)), float(np.sqrt(lam_min)), method,
                            max(res_max, res_min))


def _power(op, n, rng, tol, max_iter, scale=None):
    """Dominant eigenvalue of a PSD operator; returns ``(lambda, relative residual)``."""
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    lam = 0.0
    res = np.inf
    for _ in range(max_iter):
        w = op(v)
        lam = float(np.real(np.vdot(v, w)))
        ref = scale if scale is not None else lam
        if ref <= 0:
            return 0.0, 0.0
        res = float(np.linalg.norm(w - lam * v)) / ref
        if res < tol:
            return lam, res
        nw = np.linalg.norm(w)
        if nw == 0:
            return 0.0, 0.0
        v = w / nw
    raise ConvergenceError(f"power iteration stalled at residual {res:.3e} after {max_iter} steps")


def hermitian_extremes(G, tol=1e-12) -> tuple[float, float]:
    """``(lambda_max, lambda_min)`` of a Hermitian matrix.

    Raises ``NotHermitian`` when ``max |G - G^*|`` exceeds ``tol``.
    """
    A = as_matrix(G)
    if A.shape[0] != A.shape[1]:
        raise NotHermitian(f"matrix of shape {A.shape} is not square")
    if A.size == 0:
        return 0.0, 0.0
    dev = float(np.max(np.abs(A - A.conj().T)))
    if dev > tol:
        raise NotHermitian(f"Hermitian deviation {dev:.3e} exceeds {tol:g}")
    w = np.linalg.eigvalsh(A)
    return float(w[-1]), float(w[0])
