"""NumPy reference versions of the hot loops.

Same signatures as the compiled ``_kernels`` module; used when the extension
is not built or when ``FRACSPEC_PURE_PYTHON`` is set.
"""
import numpy as np

TWO_PI = 2.0 * np.pi


def phase_matrix(u, v, modulus, sign):
    """Return ``exp(sign * 2*pi*i * ((u @ v.T) mod modulus) / modulus)``.

    ``u`` is ``(m, d)`` int64, ``v`` is ``(k, d)`` int64. The caller guarantees
    that ``|u| * |v| * d`` fits in int64.
    """
    u = np.ascontiguousarray(u, dtype=np.int64)
    v = np.ascontiguousarray(v, dtype=np.int64)
    out = np.empty((u.shape[0], v.shape[0]), dtype=np.complex128)
    if out.size == 0:
        return out
    # chunk rows so the int64 product stays cache friendly
    step = max(1, 2_000_000 // max(1, v.shape[0]))
    for start in range(0, u.shape[0], step):
        block = u[start:start + step] @ v.T
        np.mod(block, modulus, out=block)
        out[start:start + step] = np.exp((sign * TWO_PI / modulus) * 1j * block)
    return out


def mask_product(x, tinv, digits, nfactors):
    """Return ``prod_{j=1..nfactors} m_B(tinv^j x)`` for each row of ``x``.

    ``m_B(y) = mean_b exp(2*pi*i b.y)``; ``x`` is ``(m, d)``, ``tinv`` is
    ``(d, d)`` and ``digits`` is ``(N, d)``, all float64.
    """
    y = np.array(x, dtype=np.float64, copy=True)
    tinv = np.asarray(tinv, dtype=np.float64)
    digits = np.asarray(digits, dtype=np.float64)
    acc = np.ones(y.shape[0], dtype=np.complex128)
    for _ in range(nfactors):
        y = y @ tinv.T
        acc *= np.exp(TWO_PI * 1j * (y @ digits.T)).mean(axis=1)
    return acc
