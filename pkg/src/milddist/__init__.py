"""Mild distributions on finite grid models.

The real line is replaced by ``Z_N`` with ``N = L**2`` points, sampling step
``1/L`` and period ``L``.  On that model the Fourier transform, STFT, Dirac
combs, sampling, periodization, Gabor expansions and generalized stochastic
processes satisfy their identities exactly or to machine precision.
"""

from .grid import (
    FiniteSignal,
    GridModel,
    TFPoint,
    constant,
    dirac,
    dirac_comb,
    gaussian,
    inner,
    make_grid,
    modulate,
    norm,
    pairing,
    reflect,
    signal,
    tf_shift,
    translate,
)
from .transforms import (
    GaborSystem,
    NotAFrameError,
    STFTMap,
    convolve,
    dual_window,
    fourier,
    frame_operator,
    gabor_analysis,
    gabor_synthesis,
    inverse_fourier,
    multiply,
    stft,
)
from .mild import (
    AliasingError,
    atomic_decompose,
    gabor_partial_sum_tail,
    make_bupu,
    mild_distance,
    periodize,
    poisson_check,
    riemann_functional,
    s0_norm,
    sample,
    shannon_reconstruct,
    sop_norm,
    tf_tightness,
)

__version__ = "0.1.0"
