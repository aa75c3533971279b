"""Sampled Gaussian window triples for time-frequency analysis.

The analysis below needs three aligned window arrays: the window itself, its
time derivative, and the window multiplied by time. Sampling the analytic
expressions (rather than differentiating numerically) keeps the derivative
exact, which the phase-derivative ratio formulas rely on.

Conventions: g(t) = e^{-pi (t/sigma)^2}, peak-normalized so g(0) = 1. Then
g'(t) = (-2 pi t / sigma^2) g(t) carries units 1/s and tg(t) = t g(t) carries
seconds, so ratios of transforms taken against these windows come out in Hz
and seconds with no extra scaling.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = ["WindowTriple", "make_gauss", "effective_support"]

TRUNCATION_WARN_LEVEL = 1e-8


@dataclass(frozen=True)
class WindowTriple:
    """Aligned samples of g, g' and t*g on a common grid.

    Sample i sits at time (i - center_index) / fs, so center_index maps to
    t = 0 exactly. Arrays are float64 and write-locked after construction.
    """

    g: np.ndarray
    g_prime: np.ndarray
    tg: np.ndarray
    sigma: float
    fs: float
    center_index: int

    def __post_init__(self) -> None:
        for name in ("g", "g_prime", "tg"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not (self.g.shape == self.g_prime.shape == self.tg.shape) or self.g.ndim != 1:
            raise ValueError("window arrays must be 1-D and share a shape")
        if not 0 <= self.center_index < self.g.size:
            raise ValueError(f"center_index {self.center_index} outside window of length {self.g.size}")

    @property
    def length(self) -> int:
        return self.g.size

    @property
    def times(self) -> np.ndarray:
        return (np.arange(self.g.size) - self.center_index) / self.fs

    def component(self, name: str) -> np.ndarray:
        if name not in ("g", "g_prime", "tg"):
            raise ValueError(f"unknown window component {name!r}")
        return getattr(self, name)


def make_gauss(sigma: float, length: int, fs: float) -> WindowTriple:
    """Sample the Gaussian triple at `length` points centered on t = 0.

    sigma is the width parameter in seconds. The center index is length // 2;
    odd lengths are symmetric, even lengths carry one extra sample on the
    negative side. Emits a RuntimeWarning when the edge samples are above
    1e-8, i.e. when the chosen length truncates the Gaussian noticeably.
    """
    if not np.isfinite(sigma) or sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if not np.isfinite(fs) or fs <= 0:
        raise ValueError(f"fs must be positive, got {fs}")
    if length < 3:
        raise ValueError(f"length must be >= 3, got {length}")
    center = length // 2
    t = (np.arange(length) - center) / fs
    g = np.exp(-np.pi * (t / sigma) ** 2)
    g_prime = (-2.0 * np.pi * t / sigma**2) * g
    tg = t * g
    trunc = max(g[0], g[-1])
    if trunc > TRUNCATION_WARN_LEVEL:
        warnings.warn(
            f"window of length {length} truncates the Gaussian at level {trunc:.3e} "
            f"(> {TRUNCATION_WARN_LEVEL:.0e}); consider length >= {default_length(sigma, fs)}",
            RuntimeWarning,
            stacklevel=2,
        )
    return WindowTriple(g=g, g_prime=g_prime, tg=tg, sigma=sigma, fs=fs, center_index=center)


def default_length(sigma: float, fs: float, cap: int | None = None) -> int:
    """Odd length covering +-6 sigma, optionally capped (e.g. at a signal length).

    At 6 sigma the Gaussian sits at e^{-36 pi} so the truncation warning stays
    quiet. When the cap bites, the caller accepts truncation at the cap.
    """
    length = int(round(12.0 * sigma * fs)) + 1
    if length % 2 == 0:
        length += 1
    length = max(length, 3)
    if cap is not None:
        length = min(length, cap)
    return length


def effective_support(w: WindowTriple, rel_threshold: float) -> tuple[float, float]:
    """Smallest centered interval (in seconds) outside which |g| falls below
    rel_threshold * max|g|.

    rel_threshold must lie strictly between 0 and 1. Returned endpoints are
    sample times, so they are accurate to one sample spacing.
    """
    if not 0.0 < rel_threshold < 1.0:
        raise ValueError(f"rel_threshold must lie in (0, 1), got {rel_threshold}")
    mag = np.abs(w.g)
    idx = np.flatnonzero(mag >= rel_threshold * mag.max())
    t = w.times
    return (float(t[idx[0]]), float(t[idx[-1]]))
