"""Generalized stochastic processes on the grid model.

A process is represented by an ensemble of Monte Carlo realizations (rows).
Pairing a row with a test function ``f`` gives one draw of ``rho(f)``.
The autocorrelation estimate is the mean outer product of the rows; the
spectral process transforms every row.  Exact covariance matrices can be
fed straight into the diagnostics to bypass sampling noise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .grid import FiniteSignal, GridModel
from .transforms import _fourier_array

__all__ = [
    "CovarianceSpec",
    "white",
    "stationary",
    "general",
    "covariance_matrix",
    "GspEnsemble",
    "simulate",
    "Autocorrelation",
    "autocorrelation",
    "exact_autocorrelation",
    "spectral_process",
    "transform_2d",
    "spectral_autocorr_identity",
    "WssRecord",
    "wss_deviation",
    "GENERATOR",
]

GENERATOR = "numpy.random.Generator(PCG64)"
PSD_FLOOR = -1e-10


@dataclass(frozen=True, eq=False)
class CovarianceSpec:
    """Covariance model: ``white``, ``stationary`` or ``general``.

    * white      -- i.i.d. entries, covariance ``variance / alpha * I``
    * stationary -- circulant covariance ``(1/alpha) F^H diag(symbol) F``
    * general    -- any Hermitian positive semidefinite matrix
    """

    kind: str
    grid: GridModel
    variance: Optional[float] = None
    symbol: Optional[FiniteSignal] = None
    matrix: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind == "white":
            if self.variance is None or not self.variance > 0:
                raise ValueError("white noise needs a positive variance")
        elif self.kind == "stationary":
            if self.symbol is None or self.symbol.grid != self.grid:
                raise ValueError("stationary spec needs a symbol on the same grid")
            sym = self.symbol.values
            if np.max(np.abs(sym.imag)) > 1e-12 or np.min(sym.real) < 0:
                raise ValueError("symbol must be real and nonnegative")
        elif self.kind == "general":
            m = np.asarray(self.matrix, dtype=np.complex128)
            N = self.grid.N
            if m.shape != (N, N):
                raise ValueError(f"covariance matrix must be {N}x{N}")
            if np.max(np.abs(m - m.conj().T)) > 1e-12 * max(1.0, np.max(np.abs(m))):
                raise ValueError("covariance matrix must be Hermitian")
            if np.linalg.eigvalsh(m)[0] < PSD_FLOOR:
                raise ValueError("covariance matrix is not positive semidefinite")
            object.__setattr__(self, "matrix", m)
        else:
            raise ValueError(f"unknown covariance kind {self.kind!r}")

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "grid": self.grid.metadata()}
        if self.kind == "white":
            d["variance"] = self.variance
        elif self.kind == "stationary":
            d["symbol"] = self.symbol.values.real.tolist()
        return d


def white(grid: GridModel, variance: float = 1.0) -> CovarianceSpec:
    return CovarianceSpec("white", grid, variance=variance)


def stationary(symbol: FiniteSignal) -> CovarianceSpec:
    return CovarianceSpec("stationary", symbol.grid, symbol=symbol)


def general(grid: GridModel, matrix) -> CovarianceSpec:
    return CovarianceSpec("general", grid, matrix=matrix)


def _fourier_rows(x: np.ndarray, alpha: float) -> np.ndarray:
    return _fourier_array(x, alpha, axis=-1)


def _fourier_cols(x: np.ndarray, alpha: float) -> np.ndarray:
    return _fourier_array(x, alpha, axis=0)


def covariance_matrix(spec: CovarianceSpec) -> np.ndarray:
    """Exact covariance ``E[x x^H]`` of the process described by ``spec``."""
    grid = spec.grid
    if spec.kind == "white":
        return (spec.variance / grid.alpha) * np.eye(grid.N, dtype=np.complex128)
    if spec.kind == "stationary":
        # (1/alpha) F^H diag(symbol) F, built as F^H applied to diag(symbol) F
        D = np.diag(spec.symbol.values.real / grid.alpha).astype(np.complex128)
        return transform_2d(D, grid, inverse=True)
    return spec.matrix.copy()


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


@dataclass(eq=False)
class GspEnsemble:
    grid: GridModel
    realizations: np.ndarray = field(repr=False)
    spec: Optional[CovarianceSpec] = None
    seed: Optional[int] = None

    def __post_init__(self):
        r = np.asarray(self.realizations, dtype=np.complex128)
        if r.ndim != 2 or r.shape[1] != self.grid.N:
            raise ValueError(f"realizations must have shape (M, {self.grid.N})")
        if r.shape[0] < 2:
            raise ValueError("an ensemble needs at least two realizations")
        if not np.all(np.isfinite(r)):
            raise ValueError("realizations must be finite")
        self.realizations = r

    @property
    def M(self) -> int:
        return self.realizations.shape[0]

    def row(self, m: int) -> FiniteSignal:
        return FiniteSignal(self.grid, self.realizations[m])

    def header(self) -> dict:
        return {
            "grid": self.grid.metadata(),
            "M": self.M,
            "seed": self.seed,
            "generator": GENERATOR,
            "spec": None if self.spec is None else self.spec.to_dict(),
        }

    def to_bytes(self) -> bytes:
        """JSON header line followed by the row-major little-endian complex64 payload."""
        head = json.dumps(self.header(), sort_keys=True).encode() + b"\n"
        return head + self.realizations.astype("<c8").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> GspEnsemble:
        head, _, payload = data.partition(b"\n")
        meta = json.loads(head)
        grid = GridModel(meta["grid"]["L"])
        rows = np.frombuffer(payload, dtype="<c8").reshape(meta["M"], grid.N)
        return cls(grid, rows.astype(np.complex128), None, meta.get("seed"))


def simulate(spec: CovarianceSpec, M: int, seed: int) -> GspEnsemble:
    """Draw ``M`` realizations with covariance ``covariance_matrix(spec)``.

    Deterministic for a given seed.
    """
    if M < 2:
        raise ValueError("need M >= 2 realizations")
    grid = spec.grid
    rng = np.random.default_rng(seed)
    z = _complex_normal(rng, (M, grid.N))
    if spec.kind == "white":
        rows = np.sqrt(spec.variance / grid.alpha) * z
    elif spec.kind == "stationary":
        amp = np.sqrt(spec.symbol.values.real / grid.alpha)
        # rows = F^H (amp * z); F^H is the inverse transform
        rows = np.conj(_fourier_rows(np.conj(amp * z), grid.alpha))
    else:
        w, V = np.linalg.eigh(spec.matrix)
        rows = (z * np.sqrt(np.clip(w, 0.0, None))) @ V.T
    return GspEnsemble(grid, rows, spec, seed)


@dataclass(eq=False)
class Autocorrelation:
    grid: GridModel
    matrix: np.ndarray = field(repr=False)

    def to_csv(self) -> str:
        """Matrix rows as CSV lines, entries written as Python complex literals."""
        return "\n".join(",".join(repr(complex(z)) for z in row) for row in self.matrix) + "\n"

    @classmethod
    def from_csv(cls, grid: GridModel, text: str) -> Autocorrelation:
        rows = [[complex(tok) for tok in line.split(",")] for line in text.strip().splitlines()]
        return cls(grid, np.array(rows, dtype=np.complex128))


def autocorrelation(e: GspEnsemble) -> Autocorrelation:
    """``(1/M) sum_m x_m x_m^H``; Hermitian by construction."""
    X = e.realizations
    A = X.T @ np.conj(X) / e.M
    A = 0.5 * (A + A.conj().T)
    return Autocorrelation(e.grid, A)


def exact_autocorrelation(spec: CovarianceSpec) -> Autocorrelation:
    return Autocorrelation(spec.grid, covariance_matrix(spec))


def spectral_process(e: GspEnsemble) -> GspEnsemble:
    """Ensemble of Fourier transforms of the realizations."""
    return GspEnsemble(e.grid, _fourier_rows(e.realizations, e.grid.alpha), e.spec, e.seed)


def transform_2d(A: np.ndarray, grid: GridModel, inverse: bool = False) -> np.ndarray:
    """``F A F^H`` (or ``F^H A F`` with ``inverse``) using fast transforms."""
    if inverse:
        B = np.conj(_fourier_cols(np.conj(A), grid.alpha))
        return _fourier_rows(B, grid.alpha)
    B = _fourier_cols(A, grid.alpha)
    return np.conj(_fourier_rows(np.conj(B), grid.alpha))


def spectral_autocorr_identity(e: GspEnsemble, spectral: Optional[GspEnsemble] = None) -> float:
    """Max deviation between the autocorrelation of the spectral process and
    the 2D transform of the autocorrelation.

    ``spectral`` defaults to ``spectral_process(e)``; pass a tampered
    ensemble to see the identity break.
    """
    if spectral is None:
        spectral = spectral_process(e)
    lhs = autocorrelation(spectral).matrix
    rhs = transform_2d(autocorrelation(e).matrix, e.grid)
    return float(np.max(np.abs(lhs - rhs)))


@dataclass
class WssRecord:
    diag_invariance: float
    offdiag_mass: float

    def to_dict(self) -> dict:
        return {"diag_invariance": self.diag_invariance, "offdiag_mass": self.offdiag_mass}


def wss_deviation(a: Autocorrelation) -> WssRecord:
    """How far an autocorrelation is from wide-sense stationarity.

    ``diag_invariance`` is the largest change under a cyclic diagonal shift
    ``(t1, t2) -> (t1 + x, t2 + x)``.  ``offdiag_mass`` is the share of the
    squared Frobenius norm of ``F A F^H`` that lies off the main diagonal.
    """
    A = a.matrix
    N = a.grid.N
    inv = 0.0
    for x in range(1, N):
        inv = max(inv, float(np.max(np.abs(np.roll(A, (x, x), axis=(0, 1)) - A))))
    B = transform_2d(A, a.grid)
    total = float(np.sum(np.abs(B) ** 2))
    diag = float(np.sum(np.abs(np.diag(B)) ** 2))
    mass = 0.0 if total == 0 else max(0.0, (total - diag) / total)
    return WssRecord(inv, mass)
