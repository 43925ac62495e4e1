"""Generalized stochastic processes on the grid.

Each realization of a process is a signal; its Fourier transform is a
realization of the spectral process.  The autocorrelation of the spectral
process is F A F^H, realization by realization.  A stationary process has a
circulant autocorrelation, so F A F^H is diagonal.
"""

import numpy as np

from milddist import FiniteSignal, make_grid
from milddist.gsp import (
    autocorrelation,
    covariance_matrix,
    exact_autocorrelation,
    simulate,
    spectral_autocorr_identity,
    stationary,
    white,
    wss_deviation,
)

grid = make_grid(8)
symbol = FiniteSignal(grid, np.exp(-np.pi * grid.coords() ** 2 / 4))

for spec in (white(grid), stationary(symbol)):
    e = simulate(spec, 256, seed=0)
    print(f"{spec.kind:10s} spectral identity deviation: {spectral_autocorr_identity(e):.2e}")

print("exact stationary autocorrelation:", wss_deviation(exact_autocorrelation(stationary(symbol))))

C = covariance_matrix(white(grid))
print("sample covariance error as M grows (expect halving per x4):")
for M in (256, 1024, 4096, 16384):
    a = autocorrelation(simulate(white(grid), M, seed=1))
    err = np.linalg.norm(a.matrix - C) / np.linalg.norm(C)
    print(f"  M={M:<6} rel. error {err:.4f}   offdiag mass {wss_deviation(a).offdiag_mass:.4f}")
