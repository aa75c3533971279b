"""Cascaded time-frequency scattering along single-channel paths.

Each path step analyzes the incoming signal on a channel grid, keeps one
channel's row as a new real signal, and hands it to the next step. Three row
extractors exist:

    magnitude  |V_g x| at the channel
    cif        channelized instantaneous frequency at the channel (relative)
    lgd        local group delay at the channel (relative)

A full path is a sequence of such steps; `layer` runs a path prefix and then
analyzes the last output over all channels at once, producing a grid whose
per-frame structure (peaks, zero crossings) carries the modulation law of
the original signal. Steps that feed further analysis must run at hop 1 so
the cascaded signal keeps the original sample rate.

Masked cells of cif/lgd rows propagate as exact zeros. The optional
subtract_mean flag on a step removes the input's mean first; magnitude rows
are nonnegative with a large mean, so cascades out of a magnitude step
normally demean before the next analysis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gabor import FREQUENCY_INVARIANT, dgt
from .phasederiv import DEFAULT_MASK_THRESHOLD, cif_f, lgd_t
from .signals import SampledSignal
from .windows import WindowTriple

__all__ = [
    "PathStep",
    "ScatteringPath",
    "LayerOutput",
    "u_mag",
    "u_cif",
    "u_lgd",
    "scatter",
    "layer",
    "extract_zero_crossing",
    "crossings",
]

STEP_KINDS = ("magnitude", "cif", "lgd")


@dataclass(frozen=True)
class PathStep:
    """One stage of a scattering path: analyze, then keep one channel's row.

    channel is in Hz and must sit on the analysis grid (an integer multiple
    of fs / n_channels) below fs/2. subtract_mean removes the input mean
    before analysis, which kills the DC line a magnitude row would otherwise
    park at channel 0.
    """

    kind: str
    channel: float
    window: WindowTriple
    n_channels: int
    hop: int = 1
    subtract_mean: bool = False
    mask_threshold: float = DEFAULT_MASK_THRESHOLD

    def __post_init__(self) -> None:
        if self.kind not in STEP_KINDS:
            raise ValueError(f"unknown step kind {self.kind!r}")


@dataclass(frozen=True)
class ScatteringPath:
    steps: tuple[PathStep, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        if not all(isinstance(s, PathStep) for s in self.steps):
            raise ValueError("steps must be PathStep instances")

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class LayerOutput:
    """A final all-channel analysis of a path output.

    matrix        float64 (M, N): magnitudes, or cif/lgd values (masked 0)
    mask          validity grid (all True for magnitude layers)
    ref_magnitude |V_g| of the final analysis, used to locate ridges
    prefix_kinds  the kinds of the path steps that produced the analyzed signal
    """

    matrix: np.ndarray
    mask: np.ndarray
    ref_magnitude: np.ndarray
    kind: str
    hop: int
    fs: float
    window: WindowTriple
    prefix_kinds: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        for name in ("matrix", "mask", "ref_magnitude"):
            arr = np.asarray(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.matrix.shape != self.mask.shape or self.matrix.shape != self.ref_magnitude.shape:
            raise ValueError("matrix, mask and ref_magnitude must share a shape")

    @property
    def n_channels(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_frames(self) -> int:
        return self.matrix.shape[1]

    @property
    def channel_freqs(self) -> np.ndarray:
        return np.arange(self.n_channels) * (self.fs / self.n_channels)

    @property
    def frame_times(self) -> np.ndarray:
        return np.arange(self.n_frames) * (self.hop / self.fs)


def _channel_index(channel: float, n_channels: int, fs: float) -> int:
    if not 0.0 <= channel < fs / 2.0:
        raise ValueError(f"channel must lie in [0, fs/2), got {channel} at fs={fs}")
    r = channel * n_channels / fs
    m = int(round(r))
    if abs(r - m) > 1e-9 * max(1.0, abs(r)):
        raise ValueError(
            f"channel {channel} Hz is off the analysis grid (spacing {fs / n_channels} Hz)"
        )
    return m


def _conditioned(x: SampledSignal, step: PathStep) -> SampledSignal:
    if not step.subtract_mean:
        return x
    return SampledSignal(x.samples - np.mean(x.samples), x.sample_rate, is_real=False)


def u_mag(x: SampledSignal, step: PathStep) -> SampledSignal:
    """Magnitude row: |V_g x| at the step's channel, one sample per frame."""
    if step.kind != "magnitude":
        raise ValueError(f"u_mag got a step of kind {step.kind!r}")
    y = _conditioned(x, step)
    m = _channel_index(step.channel, step.n_channels, step.window.fs)
    # Convention does not matter for magnitudes; frequency-invariant is used.
    A = dgt(y, step.window, step.hop, step.n_channels, FREQUENCY_INVARIANT, "g")
    row = np.abs(A.coeffs[m, :])
    return SampledSignal(row.astype(np.complex128), x.sample_rate / step.hop, is_real=True)


def _u_phasederiv(x: SampledSignal, step: PathStep, func) -> SampledSignal:
    y = _conditioned(x, step)
    m = _channel_index(step.channel, step.n_channels, step.window.fs)
    pd = func(y, step.window, step.hop, step.n_channels, step.mask_threshold)
    row = pd.values[m, :].astype(np.complex128)
    return SampledSignal(row, x.sample_rate / step.hop, is_real=True)


def u_cif(x: SampledSignal, step: PathStep) -> SampledSignal:
    """Relative-mode cif row at the step's channel; masked cells are zeros.

    The mask threshold is relative to the whole map's peak magnitude, so the
    row is computed from the full map, not in isolation.
    """
    if step.kind != "cif":
        raise ValueError(f"u_cif got a step of kind {step.kind!r}")
    return _u_phasederiv(x, step, cif_f)


def u_lgd(x: SampledSignal, step: PathStep) -> SampledSignal:
    """Relative-mode lgd row at the step's channel; masked cells are zeros."""
    if step.kind != "lgd":
        raise ValueError(f"u_lgd got a step of kind {step.kind!r}")
    return _u_phasederiv(x, step, lgd_t)


_EXTRACTORS = {"magnitude": u_mag, "cif": u_cif, "lgd": u_lgd}


def scatter(x: SampledSignal, path: ScatteringPath) -> SampledSignal:
    """Run a path end to end: each step's row becomes the next step's input.

    Every step except the last must keep hop 1 so deeper steps see a signal
    at the original rate. Step failures carry the failing step's index.
    """
    if len(path.steps) == 0:
        raise ValueError("path must contain at least one step")
    cur = x
    last = len(path.steps) - 1
    for i, step in enumerate(path.steps):
        if i < last and step.hop != 1:
            raise ValueError(f"step {i} ({step.kind}): hop must be 1 for steps that feed deeper layers")
        try:
            cur = _EXTRACTORS[step.kind](cur, step)
        except ValueError as e:
            raise ValueError(f"step {i} ({step.kind}): {e}") from e
    return cur


def layer(
    x: SampledSignal,
    prefix: ScatteringPath,
    final_kind: str,
    final_window: WindowTriple,
    final_channels: int,
    hop: int = 1,
    subtract_mean: bool = False,
    mask_threshold: float = DEFAULT_MASK_THRESHOLD,
) -> LayerOutput:
    """Run a path prefix, then analyze its output over the full channel grid.

    An empty prefix analyzes the signal itself. The final analysis mirrors a
    path step with the channel selection left open: magnitude layers carry
    |V_g| (all cells valid), cif/lgd layers carry the masked derivative
    fields.
    """
    if final_kind not in STEP_KINDS:
        raise ValueError(f"unknown layer kind {final_kind!r}")
    y = scatter(x, prefix) if len(prefix.steps) else x
    if subtract_mean:
        y = SampledSignal(y.samples - np.mean(y.samples), y.sample_rate, is_real=False)
    if final_kind == "magnitude":
        A = dgt(y, final_window, hop, final_channels, FREQUENCY_INVARIANT, "g")
        matrix = np.abs(A.coeffs)
        mask = np.ones(matrix.shape, dtype=bool)
        ref = matrix
    else:
        func = cif_f if final_kind == "cif" else lgd_t
        pd = func(y, final_window, hop, final_channels, mask_threshold)
        matrix, mask, ref = pd.values, pd.mask, pd.ref_magnitude
    return LayerOutput(
        matrix=matrix,
        mask=mask,
        ref_magnitude=ref,
        kind=final_kind,
        hop=hop,
        fs=final_window.fs,
        window=final_window,
        prefix_kinds=tuple(s.kind for s in prefix.steps),
    )


def extract_zero_crossing(lay: LayerOutput, frame: int) -> float | None:
    """Interpolated zero crossing of a layer column, in Hz.

    Looks at channels strictly between DC and fs/2, finds the contiguous
    valid run containing the largest reference magnitude, and within that run
    linearly interpolates the sign change nearest the magnitude peak. Returns
    None when the column has no valid run or no sign change: absence of a
    crossing is an answer, not an error.
    """
    if not 0 <= frame < lay.n_frames:
        raise ValueError(f"frame {frame} outside 0..{lay.n_frames - 1}")
    M = lay.n_channels
    lo, hi = 1, M // 2
    if hi <= lo:
        return None
    v = lay.matrix[lo:hi, frame]
    ok = lay.mask[lo:hi, frame]
    ref = lay.ref_magnitude[lo:hi, frame]
    if not ok.any():
        return None
    peak = int(np.argmax(np.where(ok, ref, -np.inf)))
    run_lo = peak
    while run_lo > 0 and ok[run_lo - 1]:
        run_lo -= 1
    run_hi = peak
    while run_hi < ok.size - 1 and ok[run_hi + 1]:
        run_hi += 1
    seg = v[run_lo : run_hi + 1]
    sign_flip = np.flatnonzero(np.signbit(seg[:-1]) != np.signbit(seg[1:]))
    if sign_flip.size == 0:
        return None
    rel_peak = peak - run_lo
    i = int(sign_flip[np.argmin(np.abs(sign_flip + 0.5 - rel_peak))])
    a, b = seg[i], seg[i + 1]
    frac = 0.5 if a == b else a / (a - b)
    df = lay.fs / M
    return float((lo + run_lo + i + frac) * df)


def crossings(lay: LayerOutput) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Zero crossings for every frame: (frame_times, crossing_hz, found).

    Frames without a crossing carry 0.0 and found=False.
    """
    times = lay.frame_times
    vals = np.zeros(lay.n_frames, dtype=np.float64)
    found = np.zeros(lay.n_frames, dtype=bool)
    for n in range(lay.n_frames):
        c = extract_zero_crossing(lay, n)
        if c is not None:
            vals[n] = c
            found[n] = True
    return times, vals, found
