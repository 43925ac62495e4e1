"""Norms, mild convergence, sampling/periodization and decompositions.

Everything here is measured through the STFT with a fixed window (the
Gaussian unless stated otherwise):

* ``s0_norm``  -- STFT L1 norm, cell measure ``1/N``
* ``sop_norm`` -- STFT sup norm
* ``mild_distance`` -- STFT sup over a centered TF square of radius R

Sampling keeps the values at comb nodes; periodization sums translates.
Both are Fourier-dual to each other on the grid model.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .grid import (
    FiniteSignal,
    GridModel,
    _check_stride,
    _same_grid,
    comb_nodes,
    gaussian,
    translate,
)
from .transforms import (
    GaborSystem,
    _stft_array,
    fourier,
    gabor_analysis,
    gabor_synthesis,
    inverse_fourier,
    multiply,
    stft,
)

__all__ = [
    "s0_norm",
    "sop_norm",
    "tf_region",
    "mild_distance",
    "MildReport",
    "mild_report",
    "mild_metric",
    "periodize",
    "sample",
    "PoissonRecord",
    "poisson_check",
    "riemann_functional",
    "tf_box",
    "box_radii",
    "gabor_partial_sum_tail",
    "TightnessResult",
    "tf_tightness",
    "Bupu",
    "make_bupu",
    "AtomicDecomposition",
    "atomic_decompose",
    "AliasingError",
    "band_limit",
    "shannon_reconstruct",
]

ATOM_DROP = 1e-14


def _window(f: FiniteSignal, g: Optional[FiniteSignal]) -> FiniteSignal:
    if g is None:
        return gaussian(f.grid)
    _same_grid(f, g)
    if not np.any(g.values):
        raise ValueError("window must be nonzero")
    return g


def s0_norm(f: FiniteSignal, g: Optional[FiniteSignal] = None) -> float:
    """``(1/N) * sum |V_g f|`` over the full TF-grid."""
    g = _window(f, g)
    return float(np.abs(stft(f, g).values).sum() / f.grid.N)


def sop_norm(f: FiniteSignal, g: Optional[FiniteSignal] = None) -> float:
    """``max |V_g f|`` over the full TF-grid."""
    g = _window(f, g)
    return float(np.abs(stft(f, g).values).max())


def tf_region(grid: GridModel, R: float) -> np.ndarray:
    """Mask of TF-shifts ``(t, s)`` with ``max(|t|, |s|) <= R`` in physical units."""
    d = np.abs(grid.centered_index(np.arange(grid.N)) * grid.alpha)
    return (d[:, None] <= R + 1e-12) & (d[None, :] <= R + 1e-12)


def _clamp_radius(grid: GridModel, R: float) -> float:
    if not R > 0:
        raise ValueError(f"radius must be positive, got {R}")
    return min(float(R), grid.beta / 2)


def mild_distance(f: FiniteSignal, h: FiniteSignal, g: Optional[FiniteSignal] = None, R: float = 1.0) -> float:
    """Largest ``|V_g(f - h)|`` over the TF square of radius ``R``.

    Radii beyond ``beta/2`` cover the whole plane and are clamped.
    """
    _same_grid(f, h)
    g = _window(f, g)
    R = _clamp_radius(f.grid, R)
    V = np.abs(_stft_array(f.values - h.values, g.values, f.grid))
    return float(V[tf_region(f.grid, R)].max())


@dataclass
class MildReport:
    radius_schedule: list
    deviations: list
    converged: list
    tolerance: float

    def to_dict(self) -> dict:
        return asdict(self)


def mild_report(
    f: FiniteSignal,
    h: FiniteSignal,
    g: Optional[FiniteSignal] = None,
    radii: Optional[Sequence[float]] = None,
    tol: float = 1e-3,
) -> MildReport:
    """Per-radius deviations of ``f`` from ``h``; default radii ``m * beta / 8``."""
    _same_grid(f, h)
    g = _window(f, g)
    grid = f.grid
    if radii is None:
        radii = [m * grid.beta / 8 for m in range(1, 5)]
    V = np.abs(_stft_array(f.values - h.values, g.values, grid))
    devs = [float(V[tf_region(grid, _clamp_radius(grid, R))].max()) for R in radii]
    return MildReport([float(R) for R in radii], devs, [d <= tol for d in devs], tol)


def mild_metric(f: FiniteSignal, h: FiniteSignal, g: Optional[FiniteSignal] = None) -> float:
    """``sum_m 2**-m * min(1, dev(R_m))`` with ``R_m = m * beta / 8``.

    From ``m = 4`` on the radius is clamped to ``beta / 2``, so the tail of
    the series is summed in closed form.
    """
    rep = mild_report(f, h, g)
    d = [min(1.0, x) for x in rep.deviations]
    return sum(2.0 ** -(m + 1) * d[m] for m in range(3)) + 2.0**-3 * d[3]


def periodize(f: FiniteSignal, r: int) -> FiniteSignal:
    """``result[n] = sum_j f[(n + j*r) mod N]``: sum of all translates by
    multiples of ``r`` indices (physical period ``r * alpha``)."""
    grid = f.grid
    _check_stride(grid, r)
    sums = f.values.reshape(grid.N // r, r).sum(axis=0)
    return FiniteSignal(grid, np.tile(sums, grid.N // r))


def sample(f: FiniteSignal, r: int) -> FiniteSignal:
    """Keep ``f`` on the comb of stride ``r`` (through the center), zero elsewhere."""
    v = np.zeros(f.grid.N, dtype=np.complex128)
    nodes = comb_nodes(f.grid, r)
    v[nodes] = f.values[nodes]
    return FiniteSignal(f.grid, v)


def _cjson(z: complex) -> dict:
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


@dataclass
class PoissonRecord:
    time_sum: complex
    freq_sum: complex
    deviation: float

    def to_dict(self) -> dict:
        return {"time_sum": _cjson(self.time_sum), "freq_sum": _cjson(self.freq_sum), "deviation": self.deviation}


def poisson_check(f: FiniteSignal) -> PoissonRecord:
    """Compare the sum of ``f`` over integer coordinates with the same sum
    for its Fourier transform."""
    grid = f.grid
    nodes = comb_nodes(grid, grid.L)
    time_sum = complex(f.values[nodes].sum())
    freq_sum = complex(fourier(f).values[nodes].sum())
    return PoissonRecord(time_sum, freq_sum, abs(time_sum - freq_sum))


def riemann_functional(g: FiniteSignal, f: FiniteSignal, r: int) -> complex:
    """Riemann sum ``(r * alpha) * sum g * f`` over the comb of stride ``r``."""
    _same_grid(g, f)
    nodes = comb_nodes(g.grid, r)
    return complex(r * g.grid.alpha * np.dot(g.values[nodes], f.values[nodes]))


def _lattice_radius(sys: GaborSystem) -> np.ndarray:
    t, s = sys.physical_lattice()
    return np.maximum(np.abs(t), np.abs(s))


def tf_box(sys: GaborSystem, radius: Optional[float]) -> np.ndarray:
    """Lattice points inside the centered TF square of the given radius.

    ``None`` stands for the empty set.
    """
    if radius is None:
        return np.zeros(sys.shape, dtype=bool)
    return _lattice_radius(sys) <= radius + 1e-12


def box_radii(sys: GaborSystem) -> np.ndarray:
    """Distinct radii at which :func:`tf_box` changes, ascending."""
    return np.unique(np.round(_lattice_radius(sys), 12))


def _as_mask(sys: GaborSystem, F) -> np.ndarray:
    if F is None:
        return np.zeros(sys.shape, dtype=bool)
    arr = np.asarray(F)
    if arr.dtype == bool:
        if arr.shape != sys.shape:
            raise ValueError(f"mask must have shape {sys.shape}")
        return arr
    mask = np.zeros(sys.shape, dtype=bool)
    for i, j in F:
        mask[i, j] = True
    return mask


def gabor_partial_sum_tail(
    f: FiniteSignal,
    sys: GaborSystem,
    F,
    window: Optional[FiniteSignal] = None,
) -> float:
    """S0 norm of ``f`` minus its Gabor expansion restricted to ``F``.

    ``F`` is a boolean mask over the coefficient map or an iterable of
    ``(i, j)`` lattice positions.  Coefficients come from the dual window.
    """
    coeffs = gabor_analysis(f, sys, use_dual=True)
    coeffs = np.where(_as_mask(sys, F), coeffs, 0.0)
    residual = f - gabor_synthesis(coeffs, sys)
    return s0_norm(residual, sys.window if window is None else window)


@dataclass
class TightnessResult:
    radius: Optional[float]
    mask: np.ndarray = field(repr=False)
    worst_tail: float


def tf_tightness(signals: Iterable[FiniteSignal], sys: GaborSystem, eps: float) -> TightnessResult:
    """Smallest centered lattice box ``F0`` such that every box containing it
    leaves a Gabor tail of at most ``eps`` for every signal.

    Candidates are the empty set followed by the nested boxes of
    :func:`box_radii`; the full lattice always qualifies in the finite model.
    """
    signals = list(signals)
    if not signals:
        raise ValueError("need at least one signal")
    candidates = [None] + [float(r) for r in box_radii(sys)]
    tails = np.array(
        [[gabor_partial_sum_tail(f, sys, tf_box(sys, R)) for f in signals] for R in candidates]
    ).max(axis=1)
    ok = tails <= eps
    # first candidate from which every larger box also qualifies
    k = len(candidates)
    while k > 0 and ok[k - 1]:
        k -= 1
    if k == len(candidates):
        k = len(candidates) - 1
    R = candidates[k]
    return TightnessResult(R, tf_box(sys, R), float(tails[k:].max()))


@dataclass(frozen=True, eq=False)
class Bupu:
    """Hat-function partition of unity with spacing ``w`` and its plateau."""

    grid: GridModel
    w: int
    psi: FiniteSignal
    tau: FiniteSignal

    def translates(self) -> list[FiniteSignal]:
        return [translate(self.psi, k * self.w) for k in range(self.grid.N // self.w)]


def make_bupu(grid: GridModel, w: int) -> Bupu:
    """Triangular hat of half-width ``w`` and height 1 at the center;
    ``tau`` is 1 on its support and falls off linearly over ``w`` more
    indices."""
    _check_stride(grid, w)
    if 4 * w > grid.N:
        raise ValueError(f"BUPU width {w} too large for N={grid.N}")
    d = np.abs(np.arange(grid.N) - grid.center) / w
    psi = np.clip(1.0 - d, 0.0, None)
    tau = np.clip(2.0 - d, 0.0, 1.0)
    return Bupu(grid, w, FiniteSignal(grid, psi), FiniteSignal(grid, tau))


@dataclass
class AtomicDecomposition:
    atoms: list
    norms: list
    norm_sum: float
    reconstruction_error: float
    indices: list = field(default_factory=list)
    drop_threshold: float = ATOM_DROP

    def summary(self) -> dict:
        return {
            "atom_count": len(self.atoms),
            "norm_sum": self.norm_sum,
            "reconstruction_error": self.reconstruction_error,
            "drop_threshold": self.drop_threshold,
        }


def atomic_decompose(f: FiniteSignal, bupu: Bupu, window: Optional[FiniteSignal] = None) -> AtomicDecomposition:
    """Split ``f`` into atoms localized in both time and frequency.

    First cut the spectrum with the BUPU, ``f_k = IFT(T_k psi * F f)``, then
    cut each band-limited piece in time, ``h_kj = T_j psi * f_k``.  Atoms
    whose largest entry is below ``ATOM_DROP`` are discarded.
    """
    _same_grid(f, bupu.psi)
    g = _window(f, window)
    spectrum = fourier(f)
    pieces = bupu.translates()
    atoms, norms, idx = [], [], []
    total = np.zeros(f.grid.N, dtype=np.complex128)
    for k, pk in enumerate(pieces):
        fk = inverse_fourier(multiply(pk, spectrum))
        for j, pj in enumerate(pieces):
            h = multiply(pj, fk)
            if np.max(np.abs(h.values)) < ATOM_DROP:
                continue
            atoms.append(h)
            norms.append(s0_norm(h, g))
            idx.append((k, j))
            total += h.values
    err = float(np.max(np.abs(f.values - total)))
    return AtomicDecomposition(atoms, norms, float(sum(norms)), err, idx)


class AliasingError(ValueError):
    """Sampling too coarse: spectral replicas overlap the retained band."""

    def __init__(self, overlap: int, band: int, r: int):
        super().__init__(f"band {band} needs {2 * band + 1} frequency bins per period, stride {r} leaves {2 * band + 1 - overlap}")
        self.overlap = overlap


def _band_mask(grid: GridModel, band: int) -> np.ndarray:
    return np.abs(np.arange(grid.N) - grid.center) <= band


def band_limit(f: FiniteSignal, band: int) -> FiniteSignal:
    """Zero the spectrum of ``f`` outside ``band`` bins around frequency 0."""
    spec = fourier(f).values * _band_mask(f.grid, band)
    return inverse_fourier(FiniteSignal(f.grid, spec))


def shannon_reconstruct(s: FiniteSignal, r: int, band: int, filter: str = "box") -> FiniteSignal:
    """Recover a band-limited signal from its samples on the stride-``r`` comb.

    The spectrum of the samples is ``1/r`` times the spectrum of the signal
    periodized with ``N/r`` bins; multiplying by ``r`` times a low-pass
    filter that is 1 on the band and 0 on every replica undoes it.
    ``filter`` is ``"box"`` (sharp cut) or ``"plateau"`` (linear roll-off
    in the gap between the band and the first replica).

    Raises
    ------
    AliasingError
        If ``N/r < 2*band + 1``.
    """
    grid = s.grid
    _check_stride(grid, r)
    if band < 0 or 2 * band + 1 > grid.N:
        raise ValueError(f"band {band} out of range for N={grid.N}")
    period = grid.N // r
    overlap = 2 * band + 1 - period
    if overlap > 0:
        raise AliasingError(overlap, band, r)
    v = np.abs(np.arange(grid.N) - grid.center)
    if filter == "box":
        H = (v <= band).astype(float)
    elif filter == "plateau":
        H = np.clip((period - band - v) / (period - 2 * band), 0.0, 1.0)
    else:
        raise ValueError(f"unknown filter {filter!r}")
    spec = r * H * fourier(s).values
    return inverse_fourier(FiniteSignal(grid, spec))
