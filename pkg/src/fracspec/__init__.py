"""Exponential frames, Bessel bounds and spectra for affine fractal measures."""
from .bounds import (bessel_bound_atomic, bessel_scan, build_An, frame_certificate,
                     gram_matrix, riesz_limit_monitor, schur_bound)
from .errors import FracSpecError
from .exact import Lattice
from .hadamard import (HadamardPair, check_hadamard, dual_lattice, h_function,
                       orthogonality_deviation, transfer_one)
from .ifs import (AffineIFS, MuHatEvaluator, NuHatEvaluator, atomic_measure, mask_mB,
                  mu_hat, nu_hat, validate)
from .kernels import BACKEND
from .numerics import operator_norm, singular_extremes
from .spectra import (SpectrumSet, find_extreme_cycles, s_apply, s_chain_membership,
                      s_iterate, spectrum_from_cycles)

__version__ = "0.1.0"
