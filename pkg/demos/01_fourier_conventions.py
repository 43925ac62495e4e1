"""Fourier conventions on the finite grid model.

A grid with L = 16 has N = 256 points spaced 1/16 apart over a period of 16.
Weighting sums by the step 1/16 turns them into Riemann sums for integrals,
and the centered DFT scaled by the same step becomes unitary.
"""

import numpy as np

from milddist import FiniteSignal, constant, dirac, fourier, gaussian, inner, make_grid, norm, reflect, stft
from milddist.mild import s0_norm, sop_norm

grid = make_grid(16)
print("grid:", grid.metadata())

# The Gaussian exp(-pi t^2) is its own Fourier transform on the line; its
# periodized samples keep that property here, to rounding error.
g = gaussian(grid)
print("||F g - g||_max        =", np.abs(fourier(g).values - g.values).max())
print("||g||_2 (line: 2^-1/4) =", norm(g), 2**-0.25)

# The Dirac at the origin and the constant 1 are exchanged by F.
d0 = dirac(grid, grid.center)
print("F(delta) == 1          :", fourier(d0).allclose(constant(grid)))

# Applying F twice reflects the signal; four times gives it back.
rng = np.random.default_rng(0)
f = FiniteSignal(grid, rng.standard_normal(grid.N))
print("F^2 f == f(-x)         :", fourier(fourier(f)).allclose(reflect(f), atol=1e-12))
print("<Ff, Fg> == <f, g>     :", np.isclose(inner(fourier(f), fourier(g)), inner(f, g)))

# The STFT of the Gaussian with itself is again a Gaussian in the TF-plane.
V = stft(g, g, "gaussian")
print("S0 norm  (line: sqrt 2):", s0_norm(g))
print("sup norm (line: 2^-1/2):", sop_norm(g))
print("STFT peak at shift     :", np.unravel_index(np.argmax(V.magnitude()), V.values.shape))
