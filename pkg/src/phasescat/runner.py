"""Execution layer shared by the CLI and the HTTP service.

Each run_* function takes a validated config model and returns in-memory
objects; callers decide whether those become files (CLI) or JSON payloads
(service). resolve_* functions fill every defaulted field (window lengths,
final channel counts) so the emitted manifest pins the run completely.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import exports
from .config import (
    DEFAULT_SIGMA_DEEP,
    DEFAULT_SIGMA_FIRST,
    AnalyzeConfig,
    ScatterConfig,
    SignalSpec,
    SynthConfig,
    VerifyConfig,
    parse_path,
)
from .gabor import FREQUENCY_INVARIANT, TFMatrix, dgt
from .phasederiv import PhaseDerivMap, cif_f, lgd_t, phase_deriv_oracle
from .scattering import LayerOutput, PathStep, ScatteringPath, crossings, layer, scatter
from .signals import ModulationLaw, SampledSignal, gen_dirac_comb, gen_impulse, gen_sinusoid, gen_vibrato
from .verify import VerifyReport, run_checks
from .windows import WindowTriple, default_length, make_gauss

__all__ = [
    "build_signal",
    "build_window",
    "resolve_config",
    "run_synth",
    "run_analyze",
    "run_scatter",
    "run_verify",
    "ScatterProduct",
    "write_products",
]


def build_signal(spec: SignalSpec) -> SampledSignal:
    if spec.kind == "sinusoid":
        return gen_sinusoid(spec.f0, spec.fs, spec.n)
    if spec.kind == "vibrato":
        m = spec.modulation
        if m.kind == "none":
            law = ModulationLaw.none()
        elif m.kind == "constant-rate":
            law = ModulationLaw.constant(m.rate)
        else:
            law = ModulationLaw.exponential(m.rate)
        return gen_vibrato(spec.f0, law, spec.fs, spec.n)
    if spec.kind == "impulse":
        return gen_impulse(spec.t0, spec.fs, spec.n)
    return gen_dirac_comb(spec.f0, spec.fs, spec.n)


def build_window(sigma: float, length: int | None, fs: float, signal_n: int) -> WindowTriple:
    if length is None:
        length = default_length(sigma, fs, cap=signal_n)
    return make_gauss(sigma, length, fs)


def resolve_config(cfg, signal_n: int | None = None):
    """Return a copy with every defaulted field made explicit.

    Window lengths depend on the signal length cap, so resolution happens
    here rather than in the models.
    """
    if isinstance(cfg, AnalyzeConfig):
        w = cfg.analysis.window
        updates = {}
        if w.length is None:
            updates["window"] = w.model_copy(
                update={"length": default_length(w.sigma, cfg.signal.fs, cap=cfg.signal.n)}
            )
        if cfg.analysis.kind in ("dgt", "dgt-mag") and cfg.analysis.convention is None:
            updates["convention"] = FREQUENCY_INVARIANT
        if updates:
            return cfg.model_copy(update={"analysis": cfg.analysis.model_copy(update=updates)})
        return cfg
    if isinstance(cfg, ScatterConfig):
        if cfg.scatter.final_n_channels is None:
            return cfg.model_copy(
                update={
                    "scatter": cfg.scatter.model_copy(
                        update={"final_n_channels": cfg.scatter.n_channels}
                    )
                }
            )
        return cfg
    return cfg


def run_synth(cfg: SynthConfig) -> SampledSignal:
    return build_signal(cfg.signal)


def run_analyze(cfg: AnalyzeConfig) -> TFMatrix | PhaseDerivMap | LayerOutput:
    cfg = resolve_config(cfg)
    x = build_signal(cfg.signal)
    a = cfg.analysis
    w = build_window(a.window.sigma, a.window.length, cfg.signal.fs, cfg.signal.n)
    if a.kind == "dgt":
        return dgt(x, w, a.hop, a.n_channels, a.convention, a.component)
    if a.kind == "dgt-mag":
        tf = dgt(x, w, a.hop, a.n_channels, a.convention, a.component)
        mag = np.abs(tf.coeffs)
        return LayerOutput(
            matrix=mag,
            mask=np.ones(mag.shape, dtype=bool),
            ref_magnitude=mag,
            kind="magnitude",
            hop=a.hop,
            fs=w.fs,
            window=w,
        )
    if a.kind == "cif":
        return cif_f(x, w, a.hop, a.n_channels, a.mask_threshold, a.mode)
    if a.kind == "lgd":
        return lgd_t(x, w, a.hop, a.n_channels, a.mask_threshold, a.mode)
    kind = "cif" if a.kind == "oracle-cif" else "lgd"
    pd = phase_deriv_oracle(x, w, a.hop, a.n_channels, kind, a.mask_threshold)
    if a.mode == "absolute":
        raise ValueError("oracle maps are relative; request mode='relative'")
    return pd


@dataclass(frozen=True)
class ScatterProduct:
    """What a scatter run yields: a series (path ends at a channel) or a
    layer plus per-frame crossings (path ends in a sweep)."""

    series: SampledSignal | None = None
    layer: LayerOutput | None = None
    crossing_data: tuple | None = None


def _build_steps(cfg: ScatterConfig, x: SampledSignal):
    sc = cfg.scatter
    tokens = parse_path(sc.path)
    steps = []
    for i, tok in enumerate(tokens):
        sigma = tok.sigma if tok.sigma is not None else (
            DEFAULT_SIGMA_FIRST if i == 0 else DEFAULT_SIGMA_DEEP
        )
        is_final = i == len(tokens) - 1
        w = build_window(sigma, None, x.sample_rate, x.n)
        n_channels = sc.final_n_channels if is_final else sc.n_channels
        hop = sc.final_hop if is_final else 1
        steps.append(
            PathStep(
                kind=tok.kind,
                channel=tok.channel if tok.channel is not None else 0.0,
                window=w,
                n_channels=n_channels,
                hop=hop,
                subtract_mean=sc.subtract_mean and i > 0,
                mask_threshold=sc.mask_threshold,
            )
        )
    return tokens, steps


def run_scatter(cfg: ScatterConfig) -> ScatterProduct:
    cfg = resolve_config(cfg)
    x = build_signal(cfg.signal)
    tokens, steps = _build_steps(cfg, x)
    if tokens[-1].channel is not None:
        series = scatter(x, ScatteringPath(tuple(steps)))
        return ScatterProduct(series=series)
    final = steps[-1]
    lay = layer(
        x,
        ScatteringPath(tuple(steps[:-1])),
        final.kind,
        final.window,
        final.n_channels,
        hop=final.hop,
        subtract_mean=final.subtract_mean,
        mask_threshold=final.mask_threshold,
    )
    cross = crossings(lay) if lay.kind in ("cif", "lgd") else None
    return ScatterProduct(layer=lay, crossing_data=cross)


def run_verify(cfg: VerifyConfig) -> VerifyReport:
    return run_checks(names=cfg.checks, tolerances=cfg.tolerances)


def write_products(product, out_dir: Path, fmt: str) -> list[Path]:
    """Write a run's outputs under out_dir; returns the files created."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if isinstance(product, SampledSignal):
        return exports.write_signal(product, out_dir / "signal", fmt)
    if isinstance(product, TFMatrix):
        return exports.write_tfmatrix(product, out_dir / "grid", fmt)
    if isinstance(product, (PhaseDerivMap, LayerOutput)):
        return exports.write_grid(product, out_dir / "grid", fmt)
    if isinstance(product, ScatterProduct):
        files: list[Path] = []
        if product.series is not None:
            files += exports.write_signal(product.series, out_dir / "series", fmt)
        if product.layer is not None:
            files += exports.write_grid(product.layer, out_dir / "layer", fmt)
        if product.crossing_data is not None:
            times, vals, found = product.crossing_data
            files += exports.write_crossings_csv(times, vals, found, out_dir / "crossings.csv")
        return files
    raise TypeError(f"cannot write products of type {type(product).__name__}")
