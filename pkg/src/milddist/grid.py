"""Finite group model Z_N standing in for the real line.

A grid with ``N = L**2`` points carries sampling step ``alpha = 1/L`` and
period ``beta = L``, so ``N = beta / alpha``.  Index ``n`` sits at the
physical coordinate ``(n - center) * alpha`` with ``center = N // 2``.

Every object on the grid (test function, measure, mild distribution) is a
:class:`FiniteSignal`.  Pairings carry the ``alpha`` weight so that sums
approximate integrals on the line.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GridModel",
    "FiniteSignal",
    "TFPoint",
    "make_grid",
    "signal",
    "constant",
    "dirac",
    "dirac_comb",
    "gaussian",
    "tf_shift",
    "translate",
    "modulate",
    "reflect",
    "inner",
    "pairing",
    "norm",
]

# N must stay addressable by a signed 64-bit index and an N x N STFT must be
# at least conceivable; anything beyond this is a configuration mistake.
_MAX_L = 2**15
_GAUSS_TERMS = 8


@dataclass(frozen=True)
class GridModel:
    L: int

    def __post_init__(self):
        if not isinstance(self.L, (int, np.integer)) or isinstance(self.L, bool):
            raise TypeError(f"L must be an integer, got {type(self.L).__name__}")
        if self.L < 2:
            raise ValueError(f"L must be at least 2, got {self.L}")
        if self.L > _MAX_L:
            raise ValueError(f"L={self.L} too large (N = L**2 would exceed {_MAX_L**2})")
        object.__setattr__(self, "L", int(self.L))

    @property
    def N(self) -> int:
        return self.L * self.L

    @property
    def alpha(self) -> float:
        return 1.0 / self.L

    @property
    def beta(self) -> float:
        return float(self.L)

    @property
    def center(self) -> int:
        return self.N // 2

    def coords(self) -> np.ndarray:
        """Physical coordinates of all indices, in ``[-beta/2, beta/2)``."""
        return (np.arange(self.N) - self.center) * self.alpha

    def centered_index(self, idx) -> np.ndarray:
        """Representative of ``idx mod N`` in ``[-center, N - center)``.

        Use this to turn a shift index into a signed displacement.
        """
        idx = np.asarray(idx)
        return (idx + self.center) % self.N - self.center

    def metadata(self) -> dict:
        return {"L": self.L, "N": self.N, "alpha": self.alpha, "beta": self.beta}


def make_grid(L: int) -> GridModel:
    """Grid with ``N = L**2`` points, ``alpha = 1/L`` and ``beta = L``."""
    return GridModel(L)


@dataclass(frozen=True, eq=False)
class FiniteSignal:
    """Complex sequence of length ``grid.N``.

    The value array is stored read-only, so signals can be shared freely.
    """

    grid: GridModel
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128, copy=True)
        if v.shape != (self.grid.N,):
            raise ValueError(f"expected {self.grid.N} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("signal values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.grid.N

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def _check(self, other: FiniteSignal):
        if not isinstance(other, FiniteSignal):
            return NotImplemented
        if other.grid != self.grid:
            raise ValueError(f"grid mismatch: {self.grid} vs {other.grid}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return FiniteSignal(self.grid, self.values + other.values)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return FiniteSignal(self.grid, self.values - other.values)

    def __neg__(self):
        return FiniteSignal(self.grid, -self.values)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return FiniteSignal(self.grid, scalar * self.values)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return FiniteSignal(self.grid, self.values / scalar)

    def allclose(self, other: FiniteSignal, atol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.max(np.abs(self.values - other.values), initial=0.0) <= atol)


@dataclass(frozen=True)
class TFPoint:
    """Time-frequency shift indices, both reduced mod N on construction
    when a grid is supplied through :meth:`on`."""

    t_idx: int
    s_idx: int

    def on(self, grid: GridModel) -> TFPoint:
        return TFPoint(int(self.t_idx) % grid.N, int(self.s_idx) % grid.N)


def signal(grid: GridModel, values) -> FiniteSignal:
    return FiniteSignal(grid, values)


def constant(grid: GridModel, value: complex = 1.0) -> FiniteSignal:
    return FiniteSignal(grid, np.full(grid.N, value, dtype=np.complex128))


def dirac(grid: GridModel, k: int) -> FiniteSignal:
    """Point mass at index ``k`` with amplitude ``1/alpha``.

    With this amplitude ``inner(dirac(grid, k), f) == f.values[k]`` for real
    ``f``, and ``pairing(dirac(grid, k), f) == f.values[k]`` always.
    """
    if not 0 <= k < grid.N:
        raise IndexError(f"index {k} outside 0..{grid.N - 1}")
    v = np.zeros(grid.N, dtype=np.complex128)
    v[k] = grid.L
    return FiniteSignal(grid, v)


def comb_nodes(grid: GridModel, r: int) -> np.ndarray:
    """Indices ``n`` with ``(n - center) % r == 0``."""
    _check_stride(grid, r)
    n = np.arange(grid.N)
    return n[(n - grid.center) % r == 0]


def _check_stride(grid: GridModel, r: int):
    if not isinstance(r, (int, np.integer)) or r < 1 or grid.N % r:
        raise ValueError(f"stride {r} does not divide N={grid.N}")


def dirac_comb(grid: GridModel, r: int) -> FiniteSignal:
    """Dirac comb with nodes every ``r`` indices, one node at the center."""
    v = np.zeros(grid.N, dtype=np.complex128)
    v[comb_nodes(grid, r)] = grid.L
    return FiniteSignal(grid, v)


def _periodized_gauss(grid: GridModel, terms: int) -> np.ndarray:
    t = grid.coords()
    j = np.arange(-terms, terms + 1)[:, None]
    return np.exp(-np.pi * (t[None, :] + j * grid.beta) ** 2).sum(axis=0)


def gaussian(grid: GridModel, terms: int = _GAUSS_TERMS) -> FiniteSignal:
    """Samples of ``exp(-pi t**2)`` periodized with period ``beta``.

    The periodized sample (rather than the bare sample) is exactly self-dual
    under :func:`milddist.transforms.fourier`.
    """
    return FiniteSignal(grid, _periodized_gauss(grid, terms))


def tf_shift(f: FiniteSignal, lam: TFPoint | tuple[int, int]) -> FiniteSignal:
    """Apply ``M_s T_t``: translate by ``t_idx`` first, then modulate by ``s_idx``."""
    if not isinstance(lam, TFPoint):
        lam = TFPoint(*lam)
    grid = f.grid
    lam = lam.on(grid)
    n = np.arange(grid.N)
    shifted = np.roll(f.values, lam.t_idx)
    if lam.s_idx:
        shifted = shifted * np.exp(2j * np.pi * ((lam.s_idx * (n - grid.center)) % grid.N) / grid.N)
    return FiniteSignal(grid, shifted)


def translate(f: FiniteSignal, t_idx: int) -> FiniteSignal:
    return tf_shift(f, TFPoint(t_idx, 0))


def modulate(f: FiniteSignal, s_idx: int) -> FiniteSignal:
    return tf_shift(f, TFPoint(0, s_idx))


def reflect(f: FiniteSignal) -> FiniteSignal:
    """``f(-x)``: index ``n`` maps to ``(2*center - n) mod N``."""
    grid = f.grid
    idx = (2 * grid.center - np.arange(grid.N)) % grid.N
    return FiniteSignal(grid, f.values[idx])


def _same_grid(f: FiniteSignal, h: FiniteSignal):
    if f.grid != h.grid:
        raise ValueError(f"grid mismatch: {f.grid} vs {h.grid}")


def inner(f: FiniteSignal, h: FiniteSignal) -> complex:
    """``alpha * sum(f * conj(h))``, the Riemann-sum version of the L2 product."""
    _same_grid(f, h)
    return complex(f.grid.alpha * np.vdot(h.values, f.values))


def pairing(sigma: FiniteSignal, f: FiniteSignal) -> complex:
    """Action ``sigma(f) = alpha * sum(sigma * f)`` of a distribution on a test
    function; bilinear, no conjugation."""
    _same_grid(sigma, f)
    return complex(sigma.grid.alpha * np.dot(sigma.values, f.values))


def norm(f: FiniteSignal) -> float:
    return float(np.sqrt(f.grid.alpha) * np.linalg.norm(f.values))
