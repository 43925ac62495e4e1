"""Poisson summation and Dirac combs.

Summing a signal over the integers gives the same number as summing its
Fourier transform over the integers.  On the grid the identity is exact,
because a comb with spacing 1 is mapped to itself.
"""

import math


from milddist import constant, dirac_comb, fourier, gaussian, make_grid, mild_distance
from milddist.mild import poisson_check, riemann_functional

grid = make_grid(32)
g = gaussian(grid)

rec = poisson_check(g)
print("sum g(k)       =", rec.time_sum.real)
print("sum (Fg)(k)    =", rec.freq_sum.real)
print("theta constant =", math.pi**0.25 / math.gamma(0.75))

# A comb with r-index spacing transforms into the comb with N/r spacing.
for r in (4, 32, 256):
    lhs = fourier(dirac_comb(grid, r))
    rhs = (grid.beta / r) * dirac_comb(grid, grid.N // r)
    print(f"F(comb_{r:<3}) == (beta/{r}) comb_{grid.N // r:<4}:", lhs.allclose(rhs, atol=1e-9))

# Riemann sums with finer spacing approach the integral of g^2 = 2^-1/2 ...
for r in (32, 16, 8):
    print(f"Riemann sum, step {r * grid.alpha:<5}:", riemann_functional(g, g, r).real)

# ... which is the mild convergence of weighted combs to the constant 1.
one = constant(grid)
for r in (32, 16, 8, 1):
    d = mild_distance(r * grid.alpha * dirac_comb(grid, r), one, R=2.0)
    print(f"mild distance of comb step {r * grid.alpha:<7} to 1 on |t|,|s|<=2: {d:.3e}")
