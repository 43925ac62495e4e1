"""Periodization and sampling seen through the spectrogram.

Four panels: the signal, its periodization, its (Riemann-weighted)
samples, and the periodized samples.  Near the origin of the TF-plane the
last panel agrees with the first.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .grid import FiniteSignal, GridModel, _check_stride, gaussian, make_grid, tf_shift
from .mild import periodize, sample, tf_region
from .transforms import STFTMap, stft

__all__ = ["DemoConfig", "Figure1", "figure1", "PANELS"]

PANELS = ("original", "periodized", "sampled", "sampled_periodized")


@dataclass
class DemoConfig:
    """Settings for :func:`figure1`.

    Strides default to ``N // 4`` (periodization, physical period
    ``beta / 4``) and ``4`` (sampling).  The shift defaults to
    ``(beta / 32, beta / 32)`` in physical units.
    """

    L: int = 32
    window: Optional[FiniteSignal] = None
    periodize_stride: Optional[int] = None
    sample_stride: int = 4
    shift: Optional[tuple[float, float]] = None
    out_dir: str = "figure1"
    format: str = "pgm"

    def resolved(self) -> tuple[GridModel, int, int, tuple[int, int]]:
        grid = make_grid(self.L)
        rp = grid.N // 4 if self.periodize_stride is None else self.periodize_stride
        rs = self.sample_stride
        _check_stride(grid, rp)
        _check_stride(grid, rs)
        if rp % rs:
            raise ValueError(f"sample stride {rs} must divide periodization stride {rp}")
        shift = (grid.beta / 32, grid.beta / 32) if self.shift is None else self.shift
        idx = tuple(int(round(x / grid.alpha)) for x in shift)
        return grid, rp, rs, idx


@dataclass
class Figure1:
    signals: dict
    stfts: dict
    metadata: dict


def _peak_ratio(V: STFTMap, at: tuple[int, int], ref: float) -> float:
    N = V.grid.N
    return float(abs(V.values[at[0] % N, at[1] % N]) / ref)


def figure1(cfg: DemoConfig = DemoConfig()) -> Figure1:
    """Compute the four signals, their STFTs and the agreement metrics.

    The sampled panels are weighted by the sampling stride, i.e. they are
    ``(r * alpha) * comb * f`` as in a Riemann sum, so that no rescaling is
    needed to compare them with the original.
    """
    grid, rp, rs, (ts, ss) = cfg.resolved()
    g = gaussian(grid) if cfg.window is None else cfg.window
    f = tf_shift(gaussian(grid), (ts, ss))
    signals = {
        "original": f,
        "periodized": periodize(f, rp),
        "sampled": rs * sample(f, rs),
        "sampled_periodized": rs * sample(periodize(f, rp), rs),
    }
    window_id = "gaussian" if cfg.window is None else "custom"
    stfts = {k: stft(v, g, window_id) for k, v in signals.items()}

    V1 = stfts["original"].values
    V4 = stfts["sampled_periodized"].values
    radius = grid.beta / 8
    region = tf_region(grid, radius)
    ref = float(np.abs(V1).max())
    deviation = float(np.abs(V1 - V4)[region].max() / ref)

    # periodization replicates in time by rp indices, sampling in frequency
    # by N / rs indices
    dual = grid.N // rs
    replication = {
        "periodized_time_offsets": [_peak_ratio(stfts["periodized"], (ts + k * rp, ss), ref) for k in (-1, 1)],
        "sampled_frequency_offsets": [_peak_ratio(stfts["sampled"], (ts, ss + k * dual), ref) for k in (-1, 1)],
        "original_at_time_offsets": [_peak_ratio(stfts["original"], (ts + k * rp, ss), ref) for k in (-1, 1)],
        "original_at_frequency_offsets": [_peak_ratio(stfts["original"], (ts, ss + k * dual), ref) for k in (-1, 1)],
    }
    metadata = {
        "grid": grid.metadata(),
        "periodize_stride": rp,
        "sample_stride": rs,
        "period": rp * grid.alpha,
        "sampling_step": rs * grid.alpha,
        "shift_idx": [ts, ss],
        "shift": [ts * grid.alpha, ss * grid.alpha],
        "window": window_id,
        "sample_weight": rs,
        "central_radius": radius,
        "central_relative_deviation": deviation,
        "replication": replication,
        "config": {fld.name: getattr(cfg, fld.name) for fld in fields(cfg) if fld.name != "window"},
    }
    return Figure1(signals, stfts, metadata)
