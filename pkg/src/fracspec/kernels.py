"""Backend selection for the hot kernels.

The compiled extension is used when importable; set ``FRACSPEC_PURE_PYTHON=1``
to force the NumPy fallback.
"""
import os

from . import _kernels_py

if os.environ.get("FRACSPEC_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

phase_matrix = _impl.phase_matrix
mask_product = _impl.mask_product


def exact_phase_matrix(rows, cols, sign=1):
    """``exp(sign * 2 pi i x.y)`` for exact rational points x in ``rows``, y in ``cols``.

    The products ``x.y`` are reduced mod 1 in integer arithmetic before the
    exponential, so large frequencies lose no accuracy. Falls back to Python
    integers when the int64 kernel could overflow.
    """
    import numpy as np

    from .exact import scale_to_integers

    if len(rows) == 0 or len(cols) == 0:
        return np.zeros((len(rows), len(cols)), dtype=complex)
    du, u = scale_to_integers(rows)
    dv, v = scale_to_integers(cols)
    modulus = du * dv
    umax = max(abs(c) for p in u for c in p)
    vmax = max(abs(c) for p in v for c in p)
    d = len(u[0])
    if umax * vmax * d < 2 ** 62 and modulus < 2 ** 62:
        return phase_matrix(np.array(u, dtype=np.int64), np.array(v, dtype=np.int64),
                            modulus, sign)
    U = np.array(u, dtype=object)
    V = np.array(v, dtype=object)
    red = (U @ V.T) % modulus
    frac = np.vectorize(lambda r: r / modulus, otypes=[float])(red)
    return np.exp(sign * 2j * np.pi * frac)
