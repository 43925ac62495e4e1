import json

import numpy as np
import pytest

from milddist import FiniteSignal, gaussian, make_grid, stft
from milddist import io
from milddist.gsp import simulate, white


def test_signal_roundtrip_is_exact(tmp_path):
    grid = make_grid(5)
    rng = np.random.default_rng(0)
    f = FiniteSignal(grid, rng.standard_normal(grid.N) + 1j * rng.standard_normal(grid.N))
    p = tmp_path / "f.csv"
    io.write_signal(p, f)
    back = io.read_signal(p)
    assert back.grid == grid
    assert np.array_equal(back.values, f.values)
    assert json.loads(io.sidecar_path(p).read_text())["L"] == 5


def test_grid_from_row_count(tmp_path):
    p = tmp_path / "f.csv"
    p.write_text("index,re,im\n" + "".join(f"{n},{n}.5,0\n" for n in range(16)))
    f = io.read_signal(p)
    assert f.grid.L == 4
    assert f.values[3] == 3.5


@pytest.mark.parametrize(
    "body, line",
    [
        ("index,re\n0,1\n", 1),
        ("index,re,im\n0,1,0\n1,x,0\n", 3),
        ("index,re,im\n0,1,0\n2,1,0\n", 3),
        ("index,re,im\n0,1,0\n1,nan,0\n", 3),
        ("index,re,im\n0,1,0\n1,1\n", 3),
        ("index,re,im\n" + "".join(f"{n},1,0\n" for n in range(5)), 6),
    ],
)
def test_malformed_signal_reports_line(tmp_path, body, line):
    p = tmp_path / "bad.csv"
    p.write_text(body)
    with pytest.raises(io.SignalFormatError) as exc:
        io.read_signal(p)
    assert exc.value.line == line
    assert f":{line}:" in str(exc.value)


def test_sidecar_mismatch(tmp_path):
    p = tmp_path / "f.csv"
    io.write_signal(p, gaussian(make_grid(4)))
    with pytest.raises(io.SignalFormatError):
        io.read_signal(p, grid=make_grid(5))
    io.sidecar_path(p).write_text('{"L": 4, "N": 17}')
    with pytest.raises(io.SignalFormatError):
        io.read_signal(p)


def test_pgm_roundtrip(tmp_path):
    img = np.arange(12, dtype=float).reshape(3, 4)
    p = tmp_path / "x.pgm"
    scale = io.write_pgm(p, img)
    assert scale == 11.0
    back = io.read_pgm(p)
    assert back.shape == (3, 4)
    assert np.allclose(back / 65535 * scale, img, atol=scale / 65535)
    assert p.read_bytes().startswith(b"P5\n4 3\n65535\n")


def test_stft_image_orientation(tmp_path):
    grid = make_grid(8)
    g = gaussian(grid)
    V = stft(g, g)
    p = tmp_path / "v.pgm"
    meta = io.write_stft(p, V, {"panel": "x"})
    img = io.read_pgm(p)
    assert img.shape == (grid.N, grid.N)
    r, c = np.unravel_index(np.argmax(img), img.shape)
    # time zero sits at column center, frequency zero at row N-1-center
    assert c == grid.center and r == grid.N - 1 - grid.center
    assert meta["panel"] == "x"
    assert json.loads(io.sidecar_path(p).read_text())["scale"] == pytest.approx(np.abs(V.values).max())


def test_stft_csv_roundtrip(tmp_path):
    grid = make_grid(3)
    g = gaussian(grid)
    V = stft(g, g, "gaussian")
    p = tmp_path / "v.csv"
    io.write_stft_csv(p, V)
    back = io.read_stft_csv(p)
    assert np.array_equal(back.values, V.values)
    assert back.window_id == "gaussian"


def test_ensemble_file(tmp_path):
    e = simulate(white(make_grid(3)), 4, 7)
    p = tmp_path / "e.bin"
    io.write_ensemble(p, e)
    back = io.read_ensemble(p)
    assert back.M == 4
    assert np.allclose(back.realizations, e.realizations, atol=1e-5)
