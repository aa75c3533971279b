"""Deterministic synthesis of test signals on a uniform sample grid.

All generators return complex128 samples even when the signal is real valued,
so downstream transforms see a single dtype. Synthesis is pure numpy with no
RNG involved: identical arguments give bit-identical arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "SampledSignal",
    "ModulationLaw",
    "gen_sinusoid",
    "gen_vibrato",
    "gen_impulse",
    "gen_dirac_comb",
]


@dataclass(frozen=True)
class SampledSignal:
    """A finite uniformly sampled time series.

    samples   complex128, shape (n,), n >= 1
    sample_rate  in Hz, > 0
    is_real   marks signals whose imaginary part is exactly zero
    """

    samples: np.ndarray
    sample_rate: float
    is_real: bool = False

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1:
            raise ValueError(f"samples must be 1-D, got shape {samples.shape}")
        if samples.size == 0:
            raise ValueError("samples must be non-empty")
        if not np.isfinite(self.sample_rate) or self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        if self.is_real and np.any(samples.imag != 0.0):
            raise ValueError("is_real is set but samples carry a nonzero imaginary part")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", float(self.sample_rate))

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        """Length of the sampled interval in seconds (n / sample_rate)."""
        return self.samples.size / self.sample_rate

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.samples.size) / self.sample_rate


@dataclass(frozen=True)
class ModulationLaw:
    """Frequency-modulation law, expressed as a phase offset gamma(t) in cycles.

    The instantaneous frequency of a carrier modulated by this law is
    f0 + gamma'(t), with gamma' in Hz.

    kind is one of "none", "constant-rate", "exponential-rate", "custom".
    The built-in laws are

        constant-rate      gamma(t) = sin(2 pi rate t)
        exponential-rate   gamma(t) = sin(2 pi t (rate + e^t))

    Custom laws supply gamma (and optionally its derivative gamma_rate) as
    callables; without gamma_rate the peak-deviation check falls back to a
    finite difference on the sample grid.
    """

    kind: str
    rate: float = 0.0
    gamma: Callable[[np.ndarray], np.ndarray] | None = None
    gamma_rate: Callable[[np.ndarray], np.ndarray] | None = None

    _KINDS = ("none", "constant-rate", "exponential-rate", "custom")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown modulation kind {self.kind!r}")
        if self.kind == "custom" and self.gamma is None:
            raise ValueError("custom modulation requires a gamma callable")
        if self.kind in ("constant-rate", "exponential-rate") and self.rate <= 0:
            raise ValueError(f"{self.kind} modulation requires rate > 0, got {self.rate}")

    @classmethod
    def none(cls) -> ModulationLaw:
        return cls("none")

    @classmethod
    def constant(cls, rate: float) -> ModulationLaw:
        return cls("constant-rate", rate=rate)

    @classmethod
    def exponential(cls, rate: float) -> ModulationLaw:
        return cls("exponential-rate", rate=rate)

    @classmethod
    def custom(
        cls,
        gamma: Callable[[np.ndarray], np.ndarray],
        gamma_rate: Callable[[np.ndarray], np.ndarray] | None = None,
    ) -> ModulationLaw:
        return cls("custom", gamma=gamma, gamma_rate=gamma_rate)

    def phase_cycles(self, t: np.ndarray) -> np.ndarray:
        """gamma(t), the phase offset in cycles."""
        t = np.asarray(t, dtype=np.float64)
        if self.kind == "none":
            return np.zeros_like(t)
        if self.kind == "constant-rate":
            return np.sin(2.0 * np.pi * self.rate * t)
        if self.kind == "exponential-rate":
            return np.sin(2.0 * np.pi * t * (self.rate + np.exp(t)))
        return np.asarray(self.gamma(t), dtype=np.float64)

    def rate_hz(self, t: np.ndarray) -> np.ndarray:
        """gamma'(t), the instantaneous-frequency offset in Hz."""
        t = np.asarray(t, dtype=np.float64)
        if self.kind == "none":
            return np.zeros_like(t)
        if self.kind == "constant-rate":
            w = 2.0 * np.pi * self.rate
            return w * np.cos(w * t)
        if self.kind == "exponential-rate":
            # d/dt [t (rate + e^t)] = rate + e^t (1 + t)
            inner = self.rate + np.exp(t)
            return 2.0 * np.pi * (self.rate + np.exp(t) * (1.0 + t)) * np.cos(2.0 * np.pi * t * inner)
        if self.gamma_rate is not None:
            return np.asarray(self.gamma_rate(t), dtype=np.float64)
        return np.gradient(self.phase_cycles(t), t)


def _check_fs_n(fs: float, n: int) -> None:
    if not np.isfinite(fs) or fs <= 0:
        raise ValueError(f"fs must be positive, got {fs}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def gen_sinusoid(f0: float, fs: float, n: int) -> SampledSignal:
    """Complex exponential e^{2 pi i f0 l / fs}, l = 0..n-1.

    Rejects f0 outside [0, fs/2) so the carrier sits below Nyquist.
    """
    _check_fs_n(fs, n)
    if not 0.0 <= f0 < fs / 2.0:
        raise ValueError(f"f0 must lie in [0, fs/2), got f0={f0}, fs={fs}")
    # Reduce the phase mod 1 cycle before exponentiating; for carriers on the
    # fs grid this keeps integer cycle counts exact (sample value exactly 1).
    frac = np.mod(f0 * np.arange(n) / fs, 1.0)
    return SampledSignal(np.exp(2j * np.pi * frac), fs)


def gen_vibrato(f0: float, law: ModulationLaw, fs: float, n: int) -> SampledSignal:
    """Frequency-modulated exponential e^{2 pi i (f0 l / fs + gamma(l/fs))}.

    Rejects parameters whose peak instantaneous frequency f0 + max|gamma'|
    reaches fs/2, evaluated on the sample grid.
    """
    _check_fs_n(fs, n)
    if not 0.0 <= f0 < fs / 2.0:
        raise ValueError(f"f0 must lie in [0, fs/2), got f0={f0}, fs={fs}")
    t = np.arange(n) / fs
    peak = f0 + float(np.max(np.abs(law.rate_hz(t))))
    if peak > fs / 2.0:
        raise ValueError(
            f"peak instantaneous frequency {peak:.6g} Hz exceeds fs/2 = {fs / 2.0:.6g} Hz"
        )
    frac = np.mod(f0 * np.arange(n) / fs, 1.0) + law.phase_cycles(t)
    return SampledSignal(np.exp(2j * np.pi * frac), fs)


def gen_impulse(t0: float, fs: float, n: int) -> SampledSignal:
    """Unit impulse at sample round(t0 * fs).

    Analysis downstream is circular, so an index that rounds up to n wraps
    back to sample 0.
    """
    _check_fs_n(fs, n)
    if not 0.0 <= t0 < n / fs:
        raise ValueError(f"t0 must lie in [0, n/fs), got t0={t0}, n/fs={n / fs}")
    samples = np.zeros(n, dtype=np.complex128)
    samples[int(round(t0 * fs)) % n] = 1.0
    return SampledSignal(samples, fs, is_real=True)


def gen_dirac_comb(f0: float, fs: float, n: int) -> SampledSignal:
    """Periodic impulse train with period 1/f0 seconds.

    Unit impulses at samples round(k * fs / f0) for k = 0, 1, ... while the
    index stays below n. Successive gaps are the two integers bracketing
    fs/f0, so the train carries at most one sample of jitter per period.
    Requires fs/f0 >= 2 (at least two samples per period).
    """
    _check_fs_n(fs, n)
    if f0 <= 0:
        raise ValueError(f"f0 must be positive, got {f0}")
    if fs / f0 < 2.0:
        raise ValueError(f"fs/f0 must be >= 2, got {fs / f0}")
    k = np.arange(int(np.ceil(n * f0 / fs)) + 1)
    pos = np.rint(k * fs / f0).astype(np.int64)
    pos = pos[pos < n]
    samples = np.zeros(n, dtype=np.complex128)
    samples[pos] = 1.0
    return SampledSignal(samples, fs, is_real=True)
