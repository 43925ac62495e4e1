"""Fourier transform, STFT, convolution and Gabor frames on the grid model.

All transforms carry the continuum normalization: the forward transform is

    F f[m] = alpha * sum_n f[n] * exp(-2 pi i (n - c)(m - c) / N)

which, because ``alpha**2 * N == 1``, is a unitary matrix.  Discrete
identities are therefore literal transcriptions of the integral formulas
on the line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .grid import FiniteSignal, GridModel, _check_stride, _same_grid

__all__ = [
    "fourier",
    "inverse_fourier",
    "fourier_matrix",
    "STFTMap",
    "stft",
    "MAX_STFT_N",
    "convolve",
    "multiply",
    "GaborSystem",
    "NotAFrameError",
    "gabor_analysis",
    "gabor_synthesis",
    "frame_operator",
    "frame_matrix",
    "frame_bounds",
    "condition_number",
    "dual_window",
]

MAX_STFT_N = 4096
# lower/upper frame bound ratio below which the system counts as no frame
MIN_FRAME_RATIO = 1e-10


def _fourier_array(x: np.ndarray, alpha: float, axis: int = -1) -> np.ndarray:
    return alpha * np.fft.fftshift(np.fft.fft(np.fft.ifftshift(x, axes=axis), axis=axis), axes=axis)


def _inverse_fourier_array(x: np.ndarray, alpha: float, axis: int = -1) -> np.ndarray:
    n = x.shape[axis]
    return (alpha * n) * np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(x, axes=axis), axis=axis), axes=axis)


def fourier(f: FiniteSignal) -> FiniteSignal:
    """Centered Fourier transform with continuum normalization.

    ``fourier(gaussian(grid))`` reproduces the Gaussian, ``fourier(dirac at
    the center)`` is the constant 1, and ``fourier(fourier(f)) == reflect(f)``.
    """
    return FiniteSignal(f.grid, _fourier_array(f.values, f.grid.alpha))


def inverse_fourier(f: FiniteSignal) -> FiniteSignal:
    return FiniteSignal(f.grid, _inverse_fourier_array(f.values, f.grid.alpha))


def fourier_matrix(grid: GridModel) -> np.ndarray:
    """Dense N x N matrix of :func:`fourier`, built entry by entry.

    Exponents are reduced mod N before scaling so large grids keep full
    phase accuracy.  Meant for checks at small N, not for computation.
    """
    u = np.arange(grid.N) - grid.center
    phase = np.mod(np.outer(u, u), grid.N)
    return grid.alpha * np.exp(-2j * np.pi * phase / grid.N)


@dataclass(frozen=True, eq=False)
class STFTMap:
    """``values[t_idx, s_idx] = V_g f`` at the TF-shift ``(t_idx, s_idx)``."""

    grid: GridModel
    window_id: str
    values: np.ndarray = field(repr=False)

    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)

    def centered(self) -> np.ndarray:
        """Values re-indexed so that row/column ``center`` is shift zero."""
        c = self.grid.center
        return np.roll(self.values, (c, c), axis=(0, 1))

    def physical_axes(self) -> tuple[np.ndarray, np.ndarray]:
        """Signed physical time and frequency offsets of each row and column."""
        d = self.grid.centered_index(np.arange(self.grid.N)) * self.grid.alpha
        return d, d


def _stft_array(f: np.ndarray, g: np.ndarray, grid: GridModel) -> np.ndarray:
    n = np.arange(grid.N)
    # row t holds f * conj(T_t g); the transform over n runs along axis 1
    windows = np.conj(g[(n[None, :] - n[:, None]) % grid.N])
    w = windows * f[None, :]
    return grid.alpha * np.fft.fft(np.roll(w, -grid.center, axis=1), axis=1)


def stft(f: FiniteSignal, g: FiniteSignal, window_id: str = "custom") -> STFTMap:
    """Full short-time Fourier transform ``inner(f, M_s T_t g)`` on all N**2 shifts."""
    _same_grid(f, g)
    if not np.any(g.values):
        raise ValueError("window must be nonzero")
    if f.grid.N > MAX_STFT_N:
        raise ValueError(f"full STFT refused for N={f.grid.N} > {MAX_STFT_N}")
    return STFTMap(f.grid, window_id, _stft_array(f.values, g.values, f.grid))


def convolve(f: FiniteSignal, h: FiniteSignal) -> FiniteSignal:
    """Cyclic convolution in physical coordinates, weighted by ``alpha``.

    ``result[n] = alpha * sum_k f[k] * h[(n - k + c) mod N]``, so that
    coordinates add and the centered Dirac is the identity.
    """
    _same_grid(f, h)
    grid = f.grid
    hc = np.roll(h.values, -grid.center)
    out = np.fft.ifft(np.fft.fft(f.values) * np.fft.fft(hc))
    return FiniteSignal(grid, grid.alpha * out)


def multiply(f: FiniteSignal, h: FiniteSignal) -> FiniteSignal:
    _same_grid(f, h)
    return FiniteSignal(f.grid, f.values * h.values)


class NotAFrameError(RuntimeError):
    """The Gabor system is not (numerically) a frame; the dual window cannot
    be computed to the requested accuracy."""

    def __init__(self, message: str, residual: float, condition: float = np.inf):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual
        self.condition = condition


@dataclass(eq=False)
class GaborSystem:
    """Window plus lattice ``a Z_N x b Z_N``.

    Coefficient maps have shape ``(N // a, N // b)``; entry ``[i, j]``
    belongs to the TF-shift ``(a * i, b * j)``.  ``dual`` is filled in by
    :func:`dual_window`.
    """

    grid: GridModel
    window: FiniteSignal
    a: int
    b: int
    dual: Optional[FiniteSignal] = None
    dual_info: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.window.grid != self.grid:
            raise ValueError("window lives on a different grid")
        _check_stride(self.grid, self.a)
        _check_stride(self.grid, self.b)

    @property
    def shape(self) -> tuple[int, int]:
        return self.grid.N // self.a, self.grid.N // self.b

    @property
    def redundancy(self) -> float:
        return self.grid.N / (self.a * self.b)

    def lattice(self) -> tuple[np.ndarray, np.ndarray]:
        """Shift indices along the time and frequency axes."""
        na, nb = self.shape
        return self.a * np.arange(na), self.b * np.arange(nb)

    def physical_lattice(self) -> tuple[np.ndarray, np.ndarray]:
        """Signed physical coordinates of the lattice shifts, shaped for
        broadcasting against a coefficient map."""
        t, s = self.lattice()
        alpha = self.grid.alpha
        return (self.grid.centered_index(t) * alpha)[:, None], (self.grid.centered_index(s) * alpha)[None, :]


def _analysis_array(f: np.ndarray, gamma: np.ndarray, sys: GaborSystem) -> np.ndarray:
    grid = sys.grid
    N, c = grid.N, grid.center
    na, nb = sys.shape
    n = np.arange(N)
    t = sys.a * np.arange(na)
    w = f[None, :] * np.conj(gamma[(n[None, :] - t[:, None]) % N])
    folded = np.roll(w, -c, axis=1).reshape(na, sys.b, nb).sum(axis=1)
    return grid.alpha * np.fft.fft(folded, axis=1)


def _synthesis_array(coeffs: np.ndarray, g: np.ndarray, sys: GaborSystem) -> np.ndarray:
    grid = sys.grid
    N, c = grid.N, grid.center
    na, nb = sys.shape
    n = np.arange(N)
    t = sys.a * np.arange(na)
    lines = nb * np.fft.ifft(coeffs, axis=1)
    lines = np.roll(np.tile(lines, (1, sys.b)), c, axis=1)
    return (lines * g[(n[None, :] - t[:, None]) % N]).sum(axis=0)


def _require_dual(sys: GaborSystem) -> FiniteSignal:
    if sys.dual is None:
        raise ValueError("Gabor system has no dual window; call dual_window first")
    return sys.dual


def gabor_analysis(f: FiniteSignal, sys: GaborSystem, use_dual: bool = False) -> np.ndarray:
    """Coefficients ``inner(f, pi(lambda) w)`` over the lattice, where ``w``
    is the dual window if ``use_dual`` and the analysis window otherwise."""
    _same_grid(f, sys.window)
    w = _require_dual(sys) if use_dual else sys.window
    return _analysis_array(f.values, w.values, sys)


def gabor_synthesis(coeffs: np.ndarray, sys: GaborSystem, use_dual: bool = False) -> FiniteSignal:
    """``sum_lambda coeffs[lambda] * pi(lambda) w`` with ``w`` as in
    :func:`gabor_analysis`."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.shape != sys.shape:
        raise ValueError(f"coefficient map must have shape {sys.shape}, got {coeffs.shape}")
    w = _require_dual(sys) if use_dual else sys.window
    return FiniteSignal(sys.grid, _synthesis_array(coeffs, w.values, sys))


def frame_operator(sys: GaborSystem, f: FiniteSignal) -> FiniteSignal:
    """``S f = sum_lambda inner(f, pi(lambda) g) pi(lambda) g``."""
    return gabor_synthesis(gabor_analysis(f, sys), sys)


def _apply_frame(sys: GaborSystem, x: np.ndarray) -> np.ndarray:
    g = sys.window.values
    return _synthesis_array(_analysis_array(x, g, sys), g, sys)


def frame_matrix(sys: GaborSystem) -> np.ndarray:
    """Dense frame operator from the Walnut representation.

    Entry ``[n, m]`` is nonzero only when ``n - m`` is a multiple of
    ``N // b``.  Independent of the FFT path used by :func:`frame_operator`.
    """
    grid = sys.grid
    N = grid.N
    n = np.arange(N)
    t, _ = sys.lattice()
    G = sys.window.values[(n[None, :] - t[:, None]) % N]
    S = grid.alpha * (N // sys.b) * (G.T @ np.conj(G))
    mask = ((n[:, None] - n[None, :]) % (N // sys.b)) == 0
    return np.where(mask, S, 0.0)


def frame_bounds(sys: GaborSystem) -> tuple[float, float]:
    """Optimal lower and upper frame bounds (extreme eigenvalues of S).

    S splits into ``N // b`` Hermitian blocks of size ``b``, one per residue
    class mod ``N // b``, so no N x N eigenproblem is needed.
    """
    grid = sys.grid
    N = grid.N
    period = N // sys.b
    n = np.arange(N)
    t, _ = sys.lattice()
    G = sys.window.values[(n[None, :] - t[:, None]) % N]
    # block p collects indices p, p + period, p + 2 * period, ...
    Gb = G.reshape(len(t), sys.b, period).transpose(2, 1, 0)
    blocks = grid.alpha * period * (Gb @ np.conj(Gb).transpose(0, 2, 1))
    ev = np.linalg.eigvalsh(blocks)
    return float(ev.min()), float(ev.max())


def condition_number(sys: GaborSystem) -> float:
    lo, hi = frame_bounds(sys)
    return np.inf if lo <= 0 else hi / lo


def _cg(apply, b: np.ndarray, tol: float, maxiter: int) -> tuple[np.ndarray, float, int]:
    bnorm = np.linalg.norm(b)
    x = np.zeros_like(b)
    r = b.copy()
    p = r.copy()
    rs = np.vdot(r, r).real
    it = 0
    while it < maxiter:
        Ap = apply(p)
        step = rs / np.vdot(p, Ap).real
        x += step * p
        r -= step * Ap
        rs_new = np.vdot(r, r).real
        it += 1
        if np.sqrt(rs_new) <= tol * bnorm:
            # the recursive residual drifts; confirm against the true one
            r = b - apply(x)
            rs_new = np.vdot(r, r).real
            if np.sqrt(rs_new) <= tol * bnorm:
                break
            p = r.copy()
            rs = rs_new
            continue
        p = r + (rs_new / rs) * p
        rs = rs_new
    residual = float(np.linalg.norm(b - apply(x)) / bnorm)
    return x, residual, it


def dual_window(sys: GaborSystem, tol: float = 1e-12, maxiter: Optional[int] = None) -> FiniteSignal:
    """Canonical dual window ``S^{-1} g`` by conjugate gradients.

    Falls back to a dense solve for ``N <= 1024`` when CG stalls.  The
    result is stored in ``sys.dual`` and the solver report in
    ``sys.dual_info``.

    Raises
    ------
    NotAFrameError
        If neither route reaches relative residual ``tol``.
    """
    grid = sys.grid
    g = sys.window.values
    lo, hi = frame_bounds(sys)
    if lo <= MIN_FRAME_RATIO * hi:
        raise NotAFrameError(
            f"lower frame bound {lo:.3e} vs upper {hi:.3e}: not a frame", np.inf, condition=hi / lo if lo > 0 else np.inf
        )
    maxiter = 10 * grid.N if maxiter is None else maxiter
    apply = lambda x: _apply_frame(sys, x)  # noqa: E731
    x, residual, iters = _cg(apply, g.copy(), tol, maxiter)
    method = "cg"
    if residual > tol and grid.N <= 1024:
        S = frame_matrix(sys)
        try:
            x = np.linalg.solve(S, g)
        except np.linalg.LinAlgError:
            raise NotAFrameError("singular frame operator", residual) from None
        residual = float(np.linalg.norm(apply(x) - g) / np.linalg.norm(g))
        method = "dense"
    if not np.all(np.isfinite(x)) or residual > tol:
        raise NotAFrameError("frame operator could not be inverted", residual, hi / lo)
    sys.dual = FiniteSignal(grid, x)
    sys.dual_info = {"method": method, "residual": residual, "iterations": iters, "frame_bounds": (lo, hi), "condition": hi / lo}
    return sys.dual
