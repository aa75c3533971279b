"""Discrete Gabor transforms over a circular signal grid, in two phase
conventions.

Both conventions window the signal at frame positions n*hop and correlate
with M channel exponentials. They differ in where the channel exponential is
anchored:

    frequency-invariant   coeffs[m, n] = sum_l x[l] conj(g[l - n*hop]) e^{-2 pi i m l / M}
    time-invariant        coeffs[m, n] = sum_l x[l] conj(g[l - n*hop]) e^{-2 pi i m (l - n*hop) / M}

with all indexing circular over the signal length L. The first convention
makes coefficients covariant under modulation (a frequency shift moves rows),
the second under translation by whole frames (a time shift moves columns with
no phase drag). Both have their phase differentiated downstream, along
different axes, which is why the pair is kept explicit instead of fixing one
and converting.

Channels sit at m * fs / M for m = 0..M-1 and frames at n * hop / fs. The
transform requires M | L and hop | L: circular analysis on a divisor grid is
what makes the covariance identities exact rather than approximate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .windows import WindowTriple

__all__ = [
    "FREQUENCY_INVARIANT",
    "TIME_INVARIANT",
    "TFMatrix",
    "dgt",
    "convention_convert",
]

FREQUENCY_INVARIANT = "frequency-invariant"
TIME_INVARIANT = "time-invariant"
_CONVENTIONS = (FREQUENCY_INVARIANT, TIME_INVARIANT)

# Transient working memory the frame-chunked transform is allowed to touch.
_CHUNK_BYTES = 256e6


@dataclass(frozen=True)
class TFMatrix:
    """Complex time-frequency coefficients on the (channel, frame) grid.

    coeffs has shape (n_channels, n_frames) = (M, L/hop). The window triple
    and the component analyzed against ("g", "g_prime" or "tg") ride along as
    metadata.
    """

    coeffs: np.ndarray
    convention: str
    hop: int
    fs: float
    window: WindowTriple
    component: str = "g"

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if coeffs.ndim != 2:
            raise ValueError(f"coeffs must be 2-D, got shape {coeffs.shape}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        if self.convention not in _CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")
        if self.hop < 1:
            raise ValueError(f"hop must be >= 1, got {self.hop}")
        if self.fs <= 0:
            raise ValueError(f"fs must be positive, got {self.fs}")

    @property
    def n_channels(self) -> int:
        return self.coeffs.shape[0]

    @property
    def n_frames(self) -> int:
        return self.coeffs.shape[1]

    @property
    def channel_freqs(self) -> np.ndarray:
        return np.arange(self.n_channels) * (self.fs / self.n_channels)

    @property
    def frame_times(self) -> np.ndarray:
        return np.arange(self.n_frames) * (self.hop / self.fs)


def _window_support(w: WindowTriple, component: str, length: int) -> tuple[np.ndarray, np.ndarray]:
    """Window values on consecutive circular offsets.

    Returns (offsets, values) such that the window sample at circular offset
    offsets[k] from the frame position is values[k]. Windows longer than the
    signal are periodized (offsets then run 0..L-1 and values accumulate the
    wrapped contributions).
    """
    vals = w.component(component)
    if w.length <= length:
        return np.arange(w.length) - w.center_index, vals
    folded = np.zeros(length, dtype=np.float64)
    np.add.at(folded, (np.arange(w.length) - w.center_index) % length, vals)
    return np.arange(length), folded


def dgt(
    x,
    w: WindowTriple,
    hop: int,
    n_channels: int,
    convention: str,
    component: str = "g",
) -> TFMatrix:
    """Discrete Gabor transform of a sampled signal.

    x is a SampledSignal whose sample rate must equal the window's. hop and
    n_channels must both divide the signal length. component selects which
    array of the window triple the signal is correlated against.
    """
    if convention not in _CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    samples = x.samples
    L = samples.size
    if x.sample_rate != w.fs:
        raise ValueError(
            f"sample-rate mismatch: signal at {x.sample_rate} Hz, window sampled at {w.fs} Hz"
        )
    M = int(n_channels)
    if M < 2:
        raise ValueError(f"n_channels must be >= 2, got {n_channels}")
    if L % M != 0:
        raise ValueError(f"n_channels must divide the signal length: {M} does not divide {L}")
    hop = int(hop)
    if hop < 1 or L % hop != 0:
        raise ValueError(f"hop must be >= 1 and divide the signal length: hop={hop}, L={L}")

    offs, vals = _window_support(w, component, L)
    # Real-valued windows, so the conjugate in the analysis formula is a no-op,
    # but keep it: a complex window component would otherwise silently break.
    vals = np.conj(vals)
    W = offs.size
    N = L // hop

    out = np.empty((M, N), dtype=np.complex128)
    chunk = int(_CHUNK_BYTES / (24 * W + 112 * M))
    chunk = max(1, min(N, chunk))
    q = np.arange(M)
    for n0 in range(0, N, chunk):
        n1 = min(n0 + chunk, N)
        frames = np.arange(n0, n1)
        # Gather the windowed signal on each frame's support.
        idx = (frames[:, None] * hop + offs[None, :]) % L
        X = samples[idx] * vals[None, :]
        del idx
        # Fold onto M columns: entry k lands in column k mod M.
        if W <= M:
            F = np.zeros((frames.size, M), dtype=np.complex128)
            F[:, :W] = X
        else:
            Wpad = -(-W // M) * M
            Xp = np.zeros((frames.size, Wpad), dtype=np.complex128)
            Xp[:, :W] = X
            F = Xp.reshape(frames.size, Wpad // M, M).sum(axis=1)
            del Xp
        del X
        # Column k holds offset offs[0] + k, whose channel exponent is anchored
        # at l = n*hop + offs[0] + k (frequency-invariant) or at the offset
        # itself (time-invariant). Realign so column q feeds DFT bin q; the
        # realignment is an exact index permutation, no phase arithmetic.
        if convention == FREQUENCY_INVARIANT:
            shift = (frames * hop + offs[0]) % M
            z = np.take_along_axis(F, (q[None, :] - shift[:, None]) % M, axis=1)
        else:
            z = np.roll(F, offs[0] % M, axis=1)
        del F
        out[:, n0:n1] = np.fft.fft(z, axis=1).T
    return TFMatrix(coeffs=out, convention=convention, hop=hop, fs=w.fs, window=w, component=component)


def convention_convert(tf: TFMatrix) -> TFMatrix:
    """Re-express a transform in the other phase convention.

    Cell (m, n) picks up the phase factor e^{+- 2 pi i m n hop / M}: plus when
    going frequency-invariant -> time-invariant, minus for the reverse. The
    operation is an involution up to floating rounding and leaves magnitudes
    untouched.
    """
    M, N = tf.coeffs.shape
    sign = 1.0 if tf.convention == FREQUENCY_INVARIANT else -1.0
    table = np.exp(sign * 2j * np.pi * np.arange(M) / M)
    out = np.empty_like(tf.coeffs)
    m = np.arange(M, dtype=np.int64)
    chunk = max(1, min(N, int(_CHUNK_BYTES / (24 * M))))
    for n0 in range(0, N, chunk):
        n1 = min(n0 + chunk, N)
        frames = np.arange(n0, n1, dtype=np.int64)
        r = (m[:, None] * (frames[None, :] * tf.hop)) % M
        out[:, n0:n1] = tf.coeffs[:, n0:n1] * table[r]
    other = TIME_INVARIANT if tf.convention == FREQUENCY_INVARIANT else FREQUENCY_INVARIANT
    return TFMatrix(
        coeffs=out,
        convention=other,
        hop=tf.hop,
        fs=tf.fs,
        window=tf.window,
        component=tf.component,
    )
