"""Export round-trip and determinism tests.

Raw files must reproduce arrays bit for bit. CSV floats are printed with 17
significant digits, which round-trips any float64 through text, so parsing a
CSV back must also be exact. Writers are pure functions of their inputs:
writing the same object twice gives byte-identical files.
"""

import json

import numpy as np
import pytest

from phasescat import (
    FREQUENCY_INVARIANT,
    SampledSignal,
    ScatteringPath,
    cif_f,
    crossings,
    dgt,
    gen_impulse,
    gen_sinusoid,
    layer,
    make_gauss,
)
from phasescat.exports import (
    read_signal,
    write_crossings_csv,
    write_grid,
    write_signal,
    write_tfmatrix,
    write_window,
)

FS = 256.0
L = 512


@pytest.fixture
def rng():
    return np.random.default_rng(41)


def random_signal(rng):
    z = rng.standard_normal(L) + 1j * rng.standard_normal(L)
    return SampledSignal(samples=z, sample_rate=FS)


class TestSignalFiles:
    def test_raw_round_trip_exact(self, rng, tmp_path):
        x = random_signal(rng)
        files = write_signal(x, tmp_path / "sig", "raw")
        assert sorted(f.name for f in files) == ["sig.f64", "sig.json"]
        back = read_signal(tmp_path / "sig", "raw")
        assert np.array_equal(back.samples, x.samples)
        assert back.sample_rate == x.sample_rate
        assert back.is_real == x.is_real

    def test_csv_parses_back_exact(self, rng, tmp_path):
        x = random_signal(rng)
        (path,) = write_signal(x, tmp_path / "sig", "csv")
        rows = np.loadtxt(path, delimiter=",", skiprows=1)
        assert rows.shape == (L, 3)
        assert np.array_equal(rows[:, 0], np.arange(L))
        assert np.array_equal(rows[:, 1] + 1j * rows[:, 2], x.samples)

    def test_csv_read_back_rejected(self, tmp_path):
        x = gen_sinusoid(64.0, FS, L)
        write_signal(x, tmp_path / "sig", "csv")
        with pytest.raises(ValueError, match="sample rate"):
            read_signal(tmp_path / "sig", "csv")

    def test_sidecar_metadata(self, tmp_path):
        x = gen_sinusoid(64.0, FS, L)
        write_signal(x, tmp_path / "sig", "raw")
        meta = json.loads((tmp_path / "sig.json").read_text())
        assert meta["kind"] == "signal"
        assert meta["n"] == L and meta["fs"] == FS
        assert meta["is_real"] is False
        assert meta["layout"] == "interleaved-re-im"

    def test_unknown_format(self, tmp_path):
        x = gen_sinusoid(64.0, FS, L)
        with pytest.raises(ValueError, match="format"):
            write_signal(x, tmp_path / "sig", "npz")

    def test_writes_deterministic(self, rng, tmp_path):
        x = random_signal(rng)
        for fmt, names in (("csv", ["sig.csv"]), ("raw", ["sig.f64", "sig.json"])):
            a = tmp_path / f"a-{fmt}"
            b = tmp_path / f"b-{fmt}"
            a.mkdir()
            b.mkdir()
            write_signal(x, a / "sig", fmt)
            write_signal(x, b / "sig", fmt)
            for name in names:
                assert (a / name).read_bytes() == (b / name).read_bytes()


class TestWindowFiles:
    def test_raw_columns(self, tmp_path):
        w = make_gauss(0.05, 129, FS)
        files = write_window(w, tmp_path / "win", "raw")
        raw = np.fromfile(tmp_path / "win.f64", dtype="<f8").reshape(129, 3)
        assert np.array_equal(raw[:, 0], w.g)
        assert np.array_equal(raw[:, 1], w.g_prime)
        assert np.array_equal(raw[:, 2], w.tg)
        meta = json.loads((tmp_path / "win.json").read_text())
        assert meta["columns"] == ["g", "g_prime", "tg"]
        assert meta["center_index"] == w.center_index

    def test_csv_columns(self, tmp_path):
        w = make_gauss(0.05, 129, FS)
        (path,) = write_window(w, tmp_path / "win", "csv")
        rows = np.loadtxt(path, delimiter=",", skiprows=1)
        assert rows.shape == (129, 5)
        assert np.array_equal(rows[:, 1], w.times)
        assert np.array_equal(rows[:, 2], w.g)


class TestTFMatrixFiles:
    def test_raw_interleaved_layout(self, rng, tmp_path):
        x = random_signal(rng)
        w = make_gauss(0.05, 129, FS)
        tf = dgt(x, w, 8, 64, FREQUENCY_INVARIANT)
        write_tfmatrix(tf, tmp_path / "tf", "raw")
        raw = np.fromfile(tmp_path / "tf.f64", dtype="<f8").reshape(64, 128)
        back = raw[:, 0::2] + 1j * raw[:, 1::2]
        assert np.array_equal(back, tf.coeffs)
        meta = json.loads((tmp_path / "tf.json").read_text())
        assert meta["convention"] == FREQUENCY_INVARIANT
        assert meta["n_channels"] == 64 and meta["n_frames"] == 64

    def test_csv_cells(self, rng, tmp_path):
        x = random_signal(rng)
        w = make_gauss(0.05, 129, FS)
        tf = dgt(x, w, 8, 64, FREQUENCY_INVARIANT)
        (path,) = write_tfmatrix(tf, tmp_path / "tf", "csv")
        rows = np.loadtxt(path, delimiter=",", skiprows=1)
        assert rows.shape == (64 * 64, 4)
        m = rows[:, 0].astype(int)
        n = rows[:, 1].astype(int)
        assert np.array_equal(rows[:, 2] + 1j * rows[:, 3], tf.coeffs[m, n])


class TestGridFiles:
    def test_phasemap_raw_round_trip(self, tmp_path):
        x = gen_sinusoid(64.0, FS, L)
        w = make_gauss(0.05, 129, FS)
        pd = cif_f(x, w, 8, 64)
        files = write_grid(pd, tmp_path / "map", "raw")
        assert sorted(f.name for f in files) == ["map.f64", "map.json", "map.mask.u8"]
        vals = np.fromfile(tmp_path / "map.f64", dtype="<f8").reshape(pd.values.shape)
        mask = np.fromfile(tmp_path / "map.mask.u8", dtype=np.uint8).reshape(pd.mask.shape)
        assert np.array_equal(vals, pd.values)
        assert np.array_equal(mask.astype(bool), pd.mask)
        meta = json.loads((tmp_path / "map.json").read_text())
        assert meta["kind"] == "phasemap" and meta["map_kind"] == "cif"
        assert meta["mask_file"] == "map.mask.u8"

    def test_phasemap_csv_valid_column_matches_mask(self, tmp_path):
        x = gen_impulse(1.0, FS, L)
        w = make_gauss(0.05, 129, FS)
        from phasescat import lgd_t

        pd = lgd_t(x, w, 8, 64)
        (path,) = write_grid(pd, tmp_path / "map", "csv")
        rows = np.loadtxt(path, delimiter=",", skiprows=1)
        assert rows.shape == (64 * 64, 4)
        values = rows[:, 2].reshape(64, 64)
        valid = rows[:, 3].reshape(64, 64)
        assert np.array_equal(values, pd.values)
        assert np.array_equal(valid.astype(bool), pd.mask)
        freqs = rows[:, 0].reshape(64, 64)
        assert np.array_equal(freqs[:, 0], pd.channel_freqs)

    def test_layer_sidecar(self, tmp_path):
        x = gen_sinusoid(64.0, FS, L)
        w = make_gauss(0.05, 129, FS)
        lay = layer(x, ScatteringPath(steps=()), "magnitude", w, 64, hop=8)
        write_grid(lay, tmp_path / "lay", "raw")
        meta = json.loads((tmp_path / "lay.json").read_text())
        assert meta["kind"] == "layer"
        assert meta["layer_kind"] == "magnitude"
        assert meta["prefix_kinds"] == []

    def test_rejects_other_types(self, tmp_path):
        with pytest.raises(TypeError, match="export"):
            write_grid(np.zeros((4, 4)), tmp_path / "x", "raw")


class TestCrossingsFile:
    def test_columns_and_flags(self, tmp_path):
        x = gen_sinusoid(64.0, FS, L)
        w = make_gauss(0.05, 129, FS)
        lay = layer(x, ScatteringPath(steps=()), "cif", w, 64, hop=8)
        times, vals, found = crossings(lay)
        (path,) = write_crossings_csv(times, vals, found, tmp_path / "cross.csv")
        rows = np.loadtxt(path, delimiter=",", skiprows=1)
        assert np.array_equal(rows[:, 0], times)
        assert np.array_equal(rows[:, 1], vals)
        assert np.array_equal(rows[:, 2].astype(bool), found)
