"""Phase derivatives of Gabor transforms: channelized instantaneous frequency
and local group delay.

Writing a transform as V = |V| e^{2 pi i Phi} with Phi in cycles, the two
quantities are

    cif = dPhi/dt        (Hz,     frequency-invariant convention)
    lgd = -dPhi/domega   (seconds, time-invariant convention)

Neither is computed by differencing the wrapped phase here. Both come from
ratios of transforms taken against the derived windows of a Gaussian triple:

    cif[m, n] = -(1/2pi) Im( V_{g'}x / V_g x )
    lgd[m, n] =          Re( V_{tg}x / V_g x )

which are exact analytic derivatives of the underlying continuous phase and
stay well behaved wherever |V_g x| is meaningfully large. Cells below a
magnitude threshold are masked and their value pinned to exactly 0.

`phase_deriv_oracle` is the slow road to the same quantities: unwrap the
transform phase along the relevant axis and take centered differences. It
exists to cross-check the ratio formulas and shares nothing with them past
the transform itself.

CIF values are reported relative to the channel frequency (the signal's
instantaneous frequency minus the channel's), wrapped to (-fs/2, fs/2];
mode="absolute" adds the channel frequency back. LGD values are delays
relative to the frame time, wrapped to plus or minus half the signal period.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gabor import FREQUENCY_INVARIANT, TIME_INVARIANT, dgt
from .windows import WindowTriple

__all__ = ["PhaseDerivMap", "cif_f", "lgd_t", "phase_deriv_oracle"]

DEFAULT_MASK_THRESHOLD = 1e-4

# Phase increments this close to half a cycle cannot be unwrapped reliably.
_UNWRAP_AMBIGUITY = 0.5 - 1e-6


@dataclass(frozen=True)
class PhaseDerivMap:
    """A phase-derivative field on the (channel, frame) grid.

    values        float64, (M, N); exactly 0 at masked-out cells
    mask          True where the underlying magnitude supports the estimate
    kind          "cif" or "lgd"
    mode          "relative" or "absolute" (absolute exists for cif only)
    ref_magnitude |V_g x| on the same grid, the field the mask was cut from
    """

    values: np.ndarray
    mask: np.ndarray
    kind: str
    mode: str
    mask_threshold: float
    hop: int
    fs: float
    window: WindowTriple
    ref_magnitude: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        mask = np.asarray(self.mask, dtype=bool)
        ref = np.asarray(self.ref_magnitude, dtype=np.float64)
        if values.ndim != 2 or values.shape != mask.shape or values.shape != ref.shape:
            raise ValueError("values, mask and ref_magnitude must share a 2-D shape")
        if self.kind not in ("cif", "lgd"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.mode not in ("relative", "absolute"):
            raise ValueError(f"unknown mode {self.mode!r}")
        for name, arr in (("values", values), ("mask", mask), ("ref_magnitude", ref)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_channels(self) -> int:
        return self.values.shape[0]

    @property
    def n_frames(self) -> int:
        return self.values.shape[1]

    @property
    def channel_freqs(self) -> np.ndarray:
        return np.arange(self.n_channels) * (self.fs / self.n_channels)

    @property
    def frame_times(self) -> np.ndarray:
        return np.arange(self.n_frames) * (self.hop / self.fs)


def _check_threshold(mask_threshold: float) -> None:
    if not 0.0 < mask_threshold < 1.0:
        raise ValueError(f"mask_threshold must lie in (0, 1), got {mask_threshold}")


def _magnitude_mask(mag: np.ndarray, mask_threshold: float) -> np.ndarray:
    peak = mag.max()
    if peak == 0.0:
        return np.zeros(mag.shape, dtype=bool)
    return mag >= mask_threshold * peak


def _wrap_centered(v: np.ndarray, period: float) -> np.ndarray:
    """Wrap values into (-period/2, period/2], in place where possible."""
    v = np.mod(v, period)
    v[v > period / 2.0] -= period
    return v


def _ratio_field(a: np.ndarray, b: np.ndarray, mask: np.ndarray, take: str, scale: float) -> np.ndarray:
    """scale * Im or Re of (b / a), computed as b conj(a) / |a|^2, masked cells 0."""
    M, N = a.shape
    values = np.empty((M, N), dtype=np.float64)
    chunk = max(1, min(N, int(64e6 / (16 * M))))
    for n0 in range(0, N, chunk):
        s = slice(n0, min(n0 + chunk, N))
        num = b[:, s] * np.conj(a[:, s])
        den = np.abs(a[:, s]) ** 2
        den[~mask[:, s]] = 1.0
        part = num.imag if take == "imag" else num.real
        values[:, s] = scale * (part / den)
    values[~mask] = 0.0
    return values


def cif_f(
    x,
    w: WindowTriple,
    hop: int,
    n_channels: int,
    mask_threshold: float = DEFAULT_MASK_THRESHOLD,
    mode: str = "relative",
) -> PhaseDerivMap:
    """Channelized instantaneous frequency via the derivative-window ratio.

    Relative mode reports the offset from each channel's frequency in Hz,
    wrapped to (-fs/2, fs/2]; absolute mode adds the channel frequency at
    valid cells. A pure sinusoid at f0 yields f0 - channel_freq at every
    valid cell of the relative map.
    """
    if mode not in ("relative", "absolute"):
        raise ValueError(f"unknown mode {mode!r}")
    _check_threshold(mask_threshold)
    A = dgt(x, w, hop, n_channels, FREQUENCY_INVARIANT, "g")
    mag = np.abs(A.coeffs)
    mask = _magnitude_mask(mag, mask_threshold)
    B = dgt(x, w, hop, n_channels, FREQUENCY_INVARIANT, "g_prime")
    values = _ratio_field(A.coeffs, B.coeffs, mask, "imag", -1.0 / (2.0 * np.pi))
    del A, B
    values = _wrap_centered(values, w.fs)
    if mode == "absolute":
        values += np.arange(n_channels)[:, None] * (w.fs / n_channels)
    values[~mask] = 0.0
    return PhaseDerivMap(
        values=values,
        mask=mask,
        kind="cif",
        mode=mode,
        mask_threshold=mask_threshold,
        hop=hop,
        fs=w.fs,
        window=w,
        ref_magnitude=mag,
    )


def lgd_t(
    x,
    w: WindowTriple,
    hop: int,
    n_channels: int,
    mask_threshold: float = DEFAULT_MASK_THRESHOLD,
    mode: str = "relative",
) -> PhaseDerivMap:
    """Local group delay via the time-weighted-window ratio.

    Values are delays relative to the frame time in seconds, wrapped to plus
    or minus half the signal period. A unit impulse at t0 yields t0 - frame
    time at every valid cell. Only relative mode exists: absolute group delay
    would need an absolute time origin per frame, which the circular grid
    does not define.
    """
    if mode != "relative":
        raise ValueError("lgd_t supports mode='relative' only")
    _check_threshold(mask_threshold)
    A = dgt(x, w, hop, n_channels, TIME_INVARIANT, "g")
    mag = np.abs(A.coeffs)
    mask = _magnitude_mask(mag, mask_threshold)
    B = dgt(x, w, hop, n_channels, TIME_INVARIANT, "tg")
    values = _ratio_field(A.coeffs, B.coeffs, mask, "real", 1.0)
    del A, B
    values = _wrap_centered(values, x.samples.size / w.fs)
    values[~mask] = 0.0
    return PhaseDerivMap(
        values=values,
        mask=mask,
        kind="lgd",
        mode=mode,
        mask_threshold=mask_threshold,
        hop=hop,
        fs=w.fs,
        window=w,
        ref_magnitude=mag,
    )


def phase_deriv_oracle(
    x,
    w: WindowTriple,
    hop: int,
    n_channels: int,
    kind: str,
    mask_threshold: float = DEFAULT_MASK_THRESHOLD,
) -> PhaseDerivMap:
    """The same fields by brute force: unwrap the transform phase and take
    centered differences.

    kind="cif" differences along frames (requires hop=1 so adjacent frames
    are one sample apart); kind="lgd" differences along channels, with the
    channel axis treated as a line, not a circle. Cells are valid only when
    the cell and both neighbors along the differencing axis pass the
    magnitude mask and neither adjacent phase increment sits within 1e-6 of
    half a cycle (where nearest-integer unwrapping is ill posed). Axis
    endpoints are always invalid.
    """
    if kind not in ("cif", "lgd"):
        raise ValueError(f"unknown kind {kind!r}")
    _check_threshold(mask_threshold)
    if kind == "cif":
        if hop != 1:
            raise ValueError("the cif oracle differences adjacent frames and requires hop=1")
        A = dgt(x, w, hop, n_channels, FREQUENCY_INVARIANT, "g")
        axis = 1
        step = hop / w.fs
        sign = 1.0
        period = w.fs
    else:
        A = dgt(x, w, hop, n_channels, TIME_INVARIANT, "g")
        axis = 0
        step = w.fs / n_channels
        sign = -1.0
        period = x.samples.size / w.fs
    mag = np.abs(A.coeffs)
    base = _magnitude_mask(mag, mask_threshold)
    phi = np.angle(A.coeffs) / (2.0 * np.pi)
    del A

    d = np.diff(phi, axis=axis)
    del phi
    d -= np.rint(d)
    if axis == 1:
        pair_ok = base[:, :-1] & base[:, 1:] & (np.abs(d) < _UNWRAP_AMBIGUITY)
    else:
        pair_ok = base[:-1, :] & base[1:, :] & (np.abs(d) < _UNWRAP_AMBIGUITY)

    values = np.zeros(base.shape, dtype=np.float64)
    mask = np.zeros(base.shape, dtype=bool)
    if axis == 1:
        mask[:, 1:-1] = base[:, 1:-1] & pair_ok[:, :-1] & pair_ok[:, 1:]
        values[:, 1:-1] = (d[:, :-1] + d[:, 1:]) * (sign / (2.0 * step))
    else:
        mask[1:-1, :] = base[1:-1, :] & pair_ok[:-1, :] & pair_ok[1:, :]
        values[1:-1, :] = (d[:-1, :] + d[1:, :]) * (sign / (2.0 * step))
    del d, pair_ok
    values = _wrap_centered(values, period)
    values[~mask] = 0.0
    return PhaseDerivMap(
        values=values,
        mask=mask,
        kind=kind,
        mode="relative",
        mask_threshold=mask_threshold,
        hop=hop,
        fs=w.fs,
        window=w,
        ref_magnitude=mag,
    )
