"""Registry of numerical identity checks run by ``milddist verify``.

Each check returns a list of :class:`CheckResult`; a check passes when its
measured deviation is at most its tolerance.  Suites group checks by topic.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .grid import (
    FiniteSignal,
    constant,
    dirac_comb,
    gaussian,
    inner,
    make_grid,
    reflect,
    tf_shift,
)
from .gsp import (
    autocorrelation,
    exact_autocorrelation,
    general,
    simulate,
    spectral_autocorr_identity,
    stationary,
    white,
    wss_deviation,
)
from .mild import (
    AliasingError,
    atomic_decompose,
    band_limit,
    box_radii,
    gabor_partial_sum_tail,
    make_bupu,
    mild_distance,
    periodize,
    poisson_check,
    s0_norm,
    sample,
    shannon_reconstruct,
    sop_norm,
    tf_box,
)
from .transforms import (
    GaborSystem,
    NotAFrameError,
    convolve,
    dual_window,
    fourier,
    fourier_matrix,
    gabor_analysis,
    gabor_synthesis,
    inverse_fourier,
    multiply,
)

__all__ = ["CheckResult", "SUITES", "run_suite", "smooth_battery"]


@dataclass
class CheckResult:
    name: str
    suite: str
    L: int
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.deviation) and self.deviation <= self.tolerance)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


SUITES: dict[str, list[Callable[[int], list[CheckResult]]]] = {}


def _register(suite: str):
    def deco(fn):
        SUITES.setdefault(suite, []).append(fn)
        return fn

    return deco


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(np.max(np.abs(b)), 1e-300)
    return float(np.max(np.abs(a - b)) / scale)


def _random_signal(grid, rng) -> FiniteSignal:
    return FiniteSignal(grid, rng.standard_normal(grid.N) + 1j * rng.standard_normal(grid.N))


def smooth_battery(grid, count: int = 20, seed: int = 0) -> list[FiniteSignal]:
    """Random smooth signals: TF-shifted Gaussians and convex combinations."""
    rng = np.random.default_rng(seed)
    g = gaussian(grid)
    N = grid.N
    out = []
    for _ in range(count):
        k = rng.integers(1, 4)
        weights = rng.dirichlet(np.ones(k))
        f = np.zeros(N, dtype=np.complex128)
        for w in weights:
            lam = (int(rng.integers(-N // 8, N // 8)), int(rng.integers(-N // 8, N // 8)))
            f += w * tf_shift(g, lam).values
        out.append(FiniteSignal(grid, f))
    return out


@_register("poisson")
def _poisson(L):
    grid = make_grid(L)
    signals = [gaussian(grid)] + smooth_battery(grid)
    dev = max(poisson_check(f).deviation for f in signals)
    return [CheckResult("poisson_summation", "poisson", L, dev, 1e-12)]


@_register("fourier")
def _fourier(L):
    grid = make_grid(L)
    rng = np.random.default_rng(1)
    f, h = _random_signal(grid, rng), _random_signal(grid, rng)
    Ff, Fh = fourier(f), fourier(h)
    g = gaussian(grid)
    res = [
        CheckResult("inversion", "fourier", L, _rel(inverse_fourier(Ff).values, f.values), 1e-12),
        CheckResult("plancherel", "fourier", L, abs(inner(Ff, Fh) - inner(f, h)) / abs(inner(f, h)), 1e-12),
        CheckResult(
            "fundamental_relationship",
            "fourier",
            L,
            abs(np.dot(Fh.values, f.values) - np.dot(h.values, Ff.values)) / np.abs(np.dot(h.values, Ff.values)),
            1e-12,
        ),
        CheckResult("square_is_reflection", "fourier", L, _rel(fourier(Ff).values, reflect(f).values), 1e-12),
        CheckResult("fourth_power_identity", "fourier", L, _rel(fourier(fourier(fourier(Ff))).values, f.values), 1e-12),
        CheckResult("gaussian_self_dual", "fourier", L, _rel(fourier(g).values, g.values), 1e-12),
    ]
    small = make_grid(8)
    x = _random_signal(small, rng)
    res.append(CheckResult("fast_vs_dense_N64", "fourier", 8, _rel(fourier(x).values, fourier_matrix(small) @ x.values), 1e-12))
    return res


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@_register("comb")
def _comb(L):
    grid = make_grid(L)
    N = grid.N
    worst = 0.0
    for r in _divisors(N):
        got = fourier(dirac_comb(grid, r)).values
        want = (grid.beta / r) * dirac_comb(grid, N // r).values
        worst = max(worst, float(np.max(np.abs(got - want)) / np.max(np.abs(want))))
    return [CheckResult("comb_fourier_duality", "comb", L, worst, 1e-12)]


@_register("sampling")
def _sampling(L):
    grid = make_grid(L)
    N = grid.N
    f = _random_signal(grid, np.random.default_rng(2))
    comm = 0.0
    dual = 0.0
    for rp in _divisors(N):
        for rs in _divisors(rp):
            a = sample(periodize(f, rp), rs).values
            b = periodize(sample(f, rs), rp).values
            comm = max(comm, float(np.max(np.abs(a - b))))
    for r in _divisors(N):
        dual = max(dual, _rel(fourier(sample(f, r)).values, periodize(fourier(f), N // r).values / r))
    return [
        CheckResult("sample_periodize_commute", "sampling", L, comm, 1e-13),
        CheckResult("fourier_sample_is_periodized_fourier", "sampling", L, dual, 1e-10),
    ]


@_register("convolution")
def _convolution(L):
    grid = make_grid(L)
    rng = np.random.default_rng(3)
    worst_c = worst_m = 0.0
    for _ in range(10):
        f, h = _random_signal(grid, rng), _random_signal(grid, rng)
        worst_c = max(worst_c, _rel(fourier(convolve(f, h)).values, multiply(fourier(f), fourier(h)).values))
        worst_m = max(worst_m, _rel(fourier(multiply(f, h)).values, convolve(fourier(f), fourier(h)).values))
    return [
        CheckResult("convolution_theorem", "convolution", L, worst_c, 1e-10),
        CheckResult("multiplication_theorem", "convolution", L, worst_m, 1e-10),
    ]


@_register("gabor")
def _gabor(L):
    if L % 2:
        L += 1
    grid = make_grid(L)
    g = gaussian(grid)
    sys = GaborSystem(grid, g, L // 2, L)
    dual_window(sys)
    f = _random_signal(grid, np.random.default_rng(4))
    rec = gabor_synthesis(gabor_analysis(f, sys, use_dual=True), sys)
    tails = [gabor_partial_sum_tail(g, sys, tf_box(sys, R)) for R in [None] + list(box_radii(sys))]
    increase = max(0.0, max(b - a for a, b in zip(tails, tails[1:])))
    crit = GaborSystem(grid, g, L, L)
    try:
        dual_window(crit)
        flagged = 1.0
    except NotAFrameError:
        flagged = 0.0
    return [
        CheckResult("dual_window_residual", "gabor", L, sys.dual_info["residual"], 1e-12),
        CheckResult("reconstruction", "gabor", L, _rel(rec.values, f.values), 1e-8),
        CheckResult("partial_sum_tail_monotone", "gabor", L, increase, 1e-12),
        CheckResult("partial_sum_tail_full_lattice", "gabor", L, tails[-1], 1e-6),
        CheckResult("critical_density_flagged", "gabor", L, flagged, 0.0),
    ]


@_register("atomic")
def _atomic(L):
    grid = make_grid(L)
    f = _random_signal(grid, np.random.default_rng(5))
    dec = atomic_decompose(f, make_bupu(grid, max(1, grid.N // 16)))
    ratio = dec.norm_sum / s0_norm(f)
    return [
        CheckResult("atomic_reconstruction", "atomic", L, dec.reconstruction_error, 1e-10),
        CheckResult("atomic_norm_sum_finite", "atomic", L, 0.0 if np.isfinite(ratio) else np.inf, 0.0),
    ]


@_register("mild")
def _mild(L):
    grid = make_grid(L)
    rng = np.random.default_rng(6)
    f, h = _random_signal(grid, rng), _random_signal(grid, rng)
    g = gaussian(grid)
    excess = max(0.0, mild_distance(f, h, g, 1.0) - sop_norm(f - h, g))
    one = constant(grid)
    strides = [r for r in (L, L // 2, L // 4, 1) if r >= 1 and grid.N % r == 0]
    devs = [mild_distance(r * grid.alpha * dirac_comb(grid, r), one, g, 2.0) for r in strides]
    decreasing = all(b < a for a, b in zip(devs, devs[1:]))
    return [
        CheckResult("mild_below_sup_norm", "mild", L, excess, 0.0),
        CheckResult("comb_sequence_strictly_decreasing", "mild", L, 0.0 if decreasing else 1.0, 0.0),
    ]


@_register("figure1")
def _figure1(L):
    from .figure1 import DemoConfig, figure1

    md = figure1(DemoConfig()).metadata
    return [CheckResult("figure1_central_agreement", "figure1", md["grid"]["L"], md["central_relative_deviation"], 1e-3)]


@_register("shannon")
def _shannon(L):
    grid = make_grid(32)
    f = band_limit(gaussian(grid), 20)
    rec = shannon_reconstruct(sample(f, 8), 8, 20)
    try:
        shannon_reconstruct(sample(f, 64), 64, 20)
        raised = 1.0
    except AliasingError:
        raised = 0.0
    return [
        CheckResult("shannon_recovery", "shannon", 32, float(np.max(np.abs(rec.values - f.values))), 1e-10),
        CheckResult("shannon_aliasing_detected", "shannon", 32, raised, 0.0),
    ]


@_register("gsp")
def _gsp(L):
    grid = make_grid(8)
    rng = np.random.default_rng(7)
    B = rng.standard_normal((grid.N, grid.N)) + 1j * rng.standard_normal((grid.N, grid.N))
    sym = FiniteSignal(grid, np.exp(-np.pi * grid.coords() ** 2 / 4))
    specs = [white(grid), stationary(sym), general(grid, B @ B.conj().T / grid.N)]
    ident = max(spectral_autocorr_identity(simulate(s, 64, 11)) for s in specs)
    exact = wss_deviation(exact_autocorrelation(specs[1]))
    M = 4096
    mc = wss_deviation(autocorrelation(simulate(specs[0], M, 12)))
    return [
        CheckResult("spectral_autocorrelation_identity", "gsp", 8, ident, 1e-10),
        CheckResult("circulant_diag_invariance", "gsp", 8, exact.diag_invariance, 1e-12),
        CheckResult("circulant_offdiag_mass", "gsp", 8, exact.offdiag_mass, 1e-12),
        CheckResult("white_offdiag_mass", "gsp", 8, mc.offdiag_mass, 10 / np.sqrt(M)),
    ]


def run_suite(name: str, L: int) -> list[CheckResult]:
    """Run one suite, or every suite for ``"all"``; unknown names raise KeyError."""
    names = list(SUITES) if name == "all" else [name]
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
    out = []
    for n in names:
        for fn in SUITES[n]:
            out.extend(fn(L))
    return out
