"""Gabor expansions with a Gaussian window.

At redundancy 2 the Gaussian generates a frame: the canonical dual window
reconstructs any signal from its Gabor coefficients.  At redundancy 1 it does
not, and the library says so instead of returning garbage.
"""

import numpy as np

from milddist import (
    FiniteSignal,
    GaborSystem,
    NotAFrameError,
    dual_window,
    gabor_analysis,
    gabor_synthesis,
    gaussian,
    make_grid,
)
from milddist.mild import box_radii, gabor_partial_sum_tail, tf_box, tf_tightness
from milddist.transforms import frame_bounds

grid = make_grid(16)
g = gaussian(grid)
sys = GaborSystem(grid, g, a=8, b=16)
print("lattice", sys.shape, "redundancy", sys.redundancy, "frame bounds", frame_bounds(sys))

gd = dual_window(sys)
print("dual window:", {k: v for k, v in sys.dual_info.items() if k != "frame_bounds"})

f = FiniteSignal(grid, np.random.default_rng(1).standard_normal(grid.N))
c = gabor_analysis(f, sys, use_dual=True)
print("reconstruction error:", np.abs(gabor_synthesis(c, sys).values - f.values).max())

# Keeping only coefficients inside a growing TF box: the S0 tail shrinks.
for R in [None] + list(box_radii(sys))[:8]:
    print(f"  box radius {R!s:>5}: tail {gabor_partial_sum_tail(g, sys, tf_box(sys, R)):.3e}")
res = tf_tightness([g], sys, 1e-3)
print("smallest box with tail <= 1e-3 for the Gaussian: radius", res.radius)

try:
    dual_window(GaborSystem(grid, g, 16, 16))
except NotAFrameError as exc:
    print("redundancy 1:", exc)
