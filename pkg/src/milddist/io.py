"""File formats: signal CSV with a JSON grid sidecar, 16-bit PGM images,
complex STFT CSV and binary ensembles."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .grid import FiniteSignal, GridModel
from .gsp import GspEnsemble
from .transforms import STFTMap

__all__ = [
    "SignalFormatError",
    "sidecar_path",
    "write_signal",
    "read_signal",
    "write_pgm",
    "read_pgm",
    "write_stft",
    "write_stft_csv",
    "read_stft_csv",
    "write_ensemble",
    "read_ensemble",
]


class SignalFormatError(ValueError):
    def __init__(self, path, line: int, reason: str):
        super().__init__(f"{path}:{line}: {reason}")
        self.line = line


def sidecar_path(path) -> Path:
    return Path(path).with_suffix(".json")


def write_signal(path, f: FiniteSignal) -> None:
    """Write ``index,re,im`` rows and the grid record next to them."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "re", "im"])
        for n, z in enumerate(f.values):
            w.writerow([n, repr(float(z.real)), repr(float(z.imag))])
    sidecar_path(path).write_text(json.dumps(f.grid.metadata()) + "\n", encoding="utf-8")


def _read_grid(path: Path) -> GridModel | None:
    side = sidecar_path(path)
    if not side.exists():
        return None
    try:
        meta = json.loads(side.read_text(encoding="utf-8"))
        grid = GridModel(int(meta["L"]))
    except (ValueError, KeyError, TypeError) as exc:
        raise SignalFormatError(side, 1, f"bad grid record: {exc}") from None
    if "N" in meta and meta["N"] != grid.N:
        raise SignalFormatError(side, 1, f"N={meta['N']} inconsistent with L={grid.L}")
    return grid


def read_signal(path, grid: GridModel | None = None) -> FiniteSignal:
    """Parse a signal CSV.  The grid comes from the sidecar, or from the row
    count when there is none (the count must be a perfect square)."""
    path = Path(path)
    side_grid = _read_grid(path)
    if grid is not None and side_grid is not None and grid != side_grid:
        raise SignalFormatError(sidecar_path(path), 1, f"grid {side_grid} does not match expected {grid}")
    grid = grid or side_grid
    values = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["index", "re", "im"]:
            raise SignalFormatError(path, 1, "expected header 'index,re,im'")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 3:
                raise SignalFormatError(path, lineno, f"expected 3 fields, got {len(row)}")
            try:
                idx, re_, im_ = int(row[0]), float(row[1]), float(row[2])
            except ValueError as exc:
                raise SignalFormatError(path, lineno, str(exc)) from None
            if idx != len(values):
                raise SignalFormatError(path, lineno, f"expected index {len(values)}, got {idx}")
            if not (np.isfinite(re_) and np.isfinite(im_)):
                raise SignalFormatError(path, lineno, "non-finite value")
            values.append(complex(re_, im_))
    if grid is None:
        L = int(round(np.sqrt(len(values))))
        if L * L != len(values) or L < 2:
            raise SignalFormatError(path, len(values) + 1, f"{len(values)} rows is not a square grid size")
        grid = GridModel(L)
    if len(values) != grid.N:
        raise SignalFormatError(path, len(values) + 1, f"expected {grid.N} rows, got {len(values)}")
    return FiniteSignal(grid, values)


def write_pgm(path, image: np.ndarray) -> float:
    """Binary 16-bit PGM scaled so the maximum maps to 65535; returns the scale."""
    image = np.asarray(image, dtype=float)
    scale = float(image.max()) if image.size and image.max() > 0 else 1.0
    data = np.round(np.clip(image / scale, 0.0, 1.0) * 65535).astype(">u2")
    h, w = data.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n65535\n".encode("ascii"))
        fh.write(data.tobytes())
    return scale


def read_pgm(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    tokens = []
    pos = 0
    while len(tokens) < 4:
        while raw[pos : pos + 1].isspace():
            pos += 1
        if raw[pos : pos + 1] == b"#":
            pos = raw.index(b"\n", pos) + 1
            continue
        start = pos
        while not raw[pos : pos + 1].isspace():
            pos += 1
        tokens.append(raw[start:pos])
    if tokens[0] != b"P5":
        raise ValueError("not a binary PGM")
    w, h, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    dtype = ">u2" if maxval > 255 else "u1"
    return np.frombuffer(raw[pos + 1 :], dtype=dtype, count=w * h).reshape(h, w).astype(float)


def write_stft(path, V: STFTMap, extra: dict | None = None) -> dict:
    """Magnitude image (time along x, frequency along y, origin centered)
    with a JSON sidecar holding the grid and the scale factor."""
    mag = np.abs(V.centered()).T[::-1]
    scale = write_pgm(path, mag)
    meta = {"grid": V.grid.metadata(), "scale": scale, "window": V.window_id, "layout": "rows=frequency (top=high), cols=time"}
    if extra:
        meta.update(extra)
    sidecar_path(path).write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    return meta


def write_stft_csv(path, V: STFTMap) -> None:
    N = V.grid.N
    t, s = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("t_idx,s_idx,re,im\n")
        for ti, si, z in zip(t.ravel(), s.ravel(), V.values.ravel()):
            fh.write(f"{ti},{si},{float(z.real)!r},{float(z.imag)!r}\n")
    sidecar_path(path).write_text(json.dumps({"grid": V.grid.metadata(), "window": V.window_id}) + "\n", encoding="utf-8")


def read_stft_csv(path) -> STFTMap:
    path = Path(path)
    meta = json.loads(sidecar_path(path).read_text(encoding="utf-8"))
    grid = GridModel(int(meta["grid"]["L"]))
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    vals = np.zeros((grid.N, grid.N), dtype=np.complex128)
    vals[data[:, 0].astype(int), data[:, 1].astype(int)] = data[:, 2] + 1j * data[:, 3]
    return STFTMap(grid, meta.get("window", "custom"), vals)


def write_ensemble(path, e: GspEnsemble) -> None:
    Path(path).write_bytes(e.to_bytes())


def read_ensemble(path) -> GspEnsemble:
    return GspEnsemble.from_bytes(Path(path).read_bytes())
