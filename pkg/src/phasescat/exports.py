"""File output for every object the pipeline produces.

Two formats. CSV is one value table per file with a header row and floats
printed at full round-trip precision (17 significant digits). Raw is
little-endian float64 with a JSON sidecar describing shape and layout;
complex data is interleaved re,im. Grid masks ride along as a uint8 file in
raw mode and as a 0/1 column in CSV.

Everything written here is a pure function of its inputs: no timestamps, no
environment, so identical objects produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .gabor import TFMatrix
from .phasederiv import PhaseDerivMap
from .scattering import LayerOutput
from .signals import SampledSignal
from .windows import WindowTriple

__all__ = [
    "write_signal",
    "write_window",
    "write_tfmatrix",
    "write_grid",
    "write_crossings_csv",
    "read_signal",
]


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _write_text(path: Path, lines) -> None:
    with open(path, "w", newline="\n") as f:
        for line in lines:
            f.write(line)
            f.write("\n")


def _write_sidecar(path: Path, meta: dict) -> None:
    with open(path, "w", newline="\n") as f:
        f.write(json.dumps(meta, sort_keys=True, indent=2))
        f.write("\n")


def _raw_bytes(arr: np.ndarray) -> bytes:
    return np.ascontiguousarray(arr, dtype="<f8").tobytes()


def write_signal(sig: SampledSignal, base: Path, fmt: str) -> list[Path]:
    """Write a signal as `base`.csv, or `base`.f64 + `base`.json."""
    base = Path(base)
    meta = {
        "kind": "signal",
        "n": sig.n,
        "fs": sig.sample_rate,
        "is_real": sig.is_real,
    }
    if fmt == "csv":
        path = base.with_suffix(".csv")
        lines = ["index,re,im"]
        lines += [
            f"{i},{_fmt(s.real)},{_fmt(s.imag)}" for i, s in enumerate(sig.samples)
        ]
        _write_text(path, lines)
        return [path]
    if fmt == "raw":
        data = base.with_suffix(".f64")
        side = base.with_suffix(".json")
        inter = np.empty(2 * sig.n, dtype=np.float64)
        inter[0::2] = sig.samples.real
        inter[1::2] = sig.samples.imag
        with open(data, "wb") as f:
            f.write(_raw_bytes(inter))
        _write_sidecar(side, meta | {"dtype": "<f8", "layout": "interleaved-re-im"})
        return [data, side]
    raise ValueError(f"unknown format {fmt!r}")


def read_signal(base: Path, fmt: str) -> SampledSignal:
    """Inverse of write_signal, for round-trips and downstream tooling."""
    base = Path(base)
    if fmt == "csv":
        raise ValueError("CSV signal files carry no sample rate; read the raw format instead")
    if fmt != "raw":
        raise ValueError(f"unknown format {fmt!r}")
    with open(base.with_suffix(".json")) as f:
        meta = json.load(f)
    raw = np.fromfile(base.with_suffix(".f64"), dtype="<f8")
    samples = raw[0::2] + 1j * raw[1::2]
    return SampledSignal(samples, meta["fs"], is_real=bool(meta["is_real"]))


def write_window(w: WindowTriple, base: Path, fmt: str) -> list[Path]:
    base = Path(base)
    meta = {
        "kind": "window",
        "length": w.length,
        "sigma": w.sigma,
        "fs": w.fs,
        "center_index": w.center_index,
    }
    if fmt == "csv":
        path = base.with_suffix(".csv")
        t = w.times
        lines = ["index,time_s,g,g_prime,tg"]
        lines += [
            f"{i},{_fmt(t[i])},{_fmt(w.g[i])},{_fmt(w.g_prime[i])},{_fmt(w.tg[i])}"
            for i in range(w.length)
        ]
        _write_text(path, lines)
        return [path]
    if fmt == "raw":
        data = base.with_suffix(".f64")
        side = base.with_suffix(".json")
        with open(data, "wb") as f:
            f.write(_raw_bytes(np.stack([w.g, w.g_prime, w.tg], axis=1)))
        _write_sidecar(side, meta | {"dtype": "<f8", "layout": "row-major", "columns": ["g", "g_prime", "tg"]})
        return [data, side]
    raise ValueError(f"unknown format {fmt!r}")


def write_tfmatrix(tf: TFMatrix, base: Path, fmt: str) -> list[Path]:
    base = Path(base)
    meta = {
        "kind": "tfmatrix",
        "n_channels": tf.n_channels,
        "n_frames": tf.n_frames,
        "hop": tf.hop,
        "fs": tf.fs,
        "convention": tf.convention,
        "component": tf.component,
        "window_sigma": tf.window.sigma,
    }
    if fmt == "csv":
        path = base.with_suffix(".csv")

        def rows():
            yield "channel,frame,re,im"
            for m in range(tf.n_channels):
                row = tf.coeffs[m]
                for n in range(tf.n_frames):
                    yield f"{m},{n},{_fmt(row[n].real)},{_fmt(row[n].imag)}"

        _write_text(path, rows())
        return [path]
    if fmt == "raw":
        data = base.with_suffix(".f64")
        side = base.with_suffix(".json")
        inter = np.empty((tf.n_channels, 2 * tf.n_frames), dtype=np.float64)
        inter[:, 0::2] = tf.coeffs.real
        inter[:, 1::2] = tf.coeffs.imag
        with open(data, "wb") as f:
            f.write(_raw_bytes(inter))
        _write_sidecar(side, meta | {"dtype": "<f8", "layout": "row-major-interleaved-re-im"})
        return [data, side]
    raise ValueError(f"unknown format {fmt!r}")


def _grid_files(base: Path, fmt: str, meta: dict, values: np.ndarray, mask: np.ndarray,
                channel_freqs: np.ndarray, frame_times: np.ndarray) -> list[Path]:
    if fmt == "csv":
        path = base.with_suffix(".csv")

        def rows():
            yield "channel_freq_hz,frame_time_s,value,valid"
            for m in range(values.shape[0]):
                fm = _fmt(channel_freqs[m])
                row = values[m]
                ok = mask[m]
                for n in range(values.shape[1]):
                    yield f"{fm},{_fmt(frame_times[n])},{_fmt(row[n])},{1 if ok[n] else 0}"

        _write_text(path, rows())
        return [path]
    if fmt == "raw":
        data = base.with_suffix(".f64")
        maskf = base.with_suffix(".mask.u8")
        side = base.with_suffix(".json")
        with open(data, "wb") as f:
            f.write(_raw_bytes(values))
        with open(maskf, "wb") as f:
            f.write(np.ascontiguousarray(mask, dtype=np.uint8).tobytes())
        _write_sidecar(side, meta | {"dtype": "<f8", "layout": "row-major", "mask_file": maskf.name})
        return [data, maskf, side]
    raise ValueError(f"unknown format {fmt!r}")


def write_grid(obj: PhaseDerivMap | LayerOutput, base: Path, fmt: str) -> list[Path]:
    """Write a phase-derivative map or a layer grid.

    Both are (channel, frame) float grids with a validity mask; they share a
    file schema and differ only in sidecar metadata.
    """
    base = Path(base)
    if isinstance(obj, PhaseDerivMap):
        meta = {
            "kind": "phasemap",
            "map_kind": obj.kind,
            "mode": obj.mode,
            "mask_threshold": obj.mask_threshold,
            "n_channels": obj.n_channels,
            "n_frames": obj.n_frames,
            "hop": obj.hop,
            "fs": obj.fs,
            "window_sigma": obj.window.sigma,
        }
        return _grid_files(base, fmt, meta, obj.values, obj.mask, obj.channel_freqs, obj.frame_times)
    if isinstance(obj, LayerOutput):
        meta = {
            "kind": "layer",
            "layer_kind": obj.kind,
            "prefix_kinds": list(obj.prefix_kinds),
            "n_channels": obj.n_channels,
            "n_frames": obj.n_frames,
            "hop": obj.hop,
            "fs": obj.fs,
            "window_sigma": obj.window.sigma,
        }
        return _grid_files(base, fmt, meta, obj.matrix, obj.mask, obj.channel_freqs, obj.frame_times)
    raise TypeError(f"write_grid cannot export {type(obj).__name__}")


def write_crossings_csv(times: np.ndarray, values: np.ndarray, found: np.ndarray, path: Path) -> list[Path]:
    """Per-frame zero crossings; frames without one carry 0.0 and flag 0."""
    path = Path(path)
    lines = ["frame_time_s,crossing_hz,found_flag"]
    lines += [
        f"{_fmt(times[i])},{_fmt(values[i])},{1 if found[i] else 0}"
        for i in range(len(times))
    ]
    _write_text(path, lines)
    return [path]
