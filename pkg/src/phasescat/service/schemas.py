"""Request and response bodies for the HTTP service.

Requests are exactly the CLI config models, so a JSON config file posts
unchanged. Responses are flat JSON-friendly mirrors of the core objects.
"""

from __future__ import annotations

from pydantic import BaseModel

from ..config import AnalyzeConfig, ScatterConfig, SynthConfig, VerifyConfig
from ..gabor import TFMatrix
from ..phasederiv import PhaseDerivMap
from ..scattering import LayerOutput
from ..signals import SampledSignal

__all__ = [
    "SynthRequest",
    "AnalyzeRequest",
    "ScatterRequest",
    "VerifyRequest",
    "SignalResponse",
    "GridResponse",
    "CrossingsResponse",
    "ScatterResponse",
    "CheckResponse",
    "VerifyResponse",
    "signal_response",
    "grid_response",
]

SynthRequest = SynthConfig
AnalyzeRequest = AnalyzeConfig
ScatterRequest = ScatterConfig
VerifyRequest = VerifyConfig


class SignalResponse(BaseModel):
    n: int
    fs: float
    is_real: bool
    re: list[float]
    im: list[float]


class GridResponse(BaseModel):
    kind: str
    n_channels: int
    n_frames: int
    hop: int
    fs: float
    map_kind: str | None = None
    mode: str | None = None
    mask_threshold: float | None = None
    convention: str | None = None
    component: str | None = None
    prefix_kinds: list[str] | None = None
    window_sigma: float
    values: list[list[float]] | None = None
    re: list[list[float]] | None = None
    im: list[list[float]] | None = None
    mask: list[list[bool]] | None = None


class CrossingsResponse(BaseModel):
    frame_times: list[float]
    crossing_hz: list[float]
    found: list[bool]


class ScatterResponse(BaseModel):
    series: SignalResponse | None = None
    layer: GridResponse | None = None
    crossings: CrossingsResponse | None = None


class CheckResponse(BaseModel):
    name: str
    passed: bool
    runtime_s: float
    measured: dict
    bounds: dict


class VerifyResponse(BaseModel):
    all_passed: bool
    checks: list[CheckResponse]


def signal_response(sig: SampledSignal) -> SignalResponse:
    return SignalResponse(
        n=sig.n,
        fs=sig.sample_rate,
        is_real=sig.is_real,
        re=sig.samples.real.tolist(),
        im=sig.samples.imag.tolist(),
    )


def grid_response(obj: TFMatrix | PhaseDerivMap | LayerOutput) -> GridResponse:
    if isinstance(obj, TFMatrix):
        return GridResponse(
            kind="tfmatrix",
            n_channels=obj.n_channels,
            n_frames=obj.n_frames,
            hop=obj.hop,
            fs=obj.fs,
            convention=obj.convention,
            component=obj.component,
            window_sigma=obj.window.sigma,
            re=obj.coeffs.real.tolist(),
            im=obj.coeffs.imag.tolist(),
        )
    if isinstance(obj, PhaseDerivMap):
        return GridResponse(
            kind="phasemap",
            n_channels=obj.n_channels,
            n_frames=obj.n_frames,
            hop=obj.hop,
            fs=obj.fs,
            map_kind=obj.kind,
            mode=obj.mode,
            mask_threshold=obj.mask_threshold,
            window_sigma=obj.window.sigma,
            values=obj.values.tolist(),
            mask=obj.mask.tolist(),
        )
    if isinstance(obj, LayerOutput):
        return GridResponse(
            kind="layer",
            n_channels=obj.n_channels,
            n_frames=obj.n_frames,
            hop=obj.hop,
            fs=obj.fs,
            map_kind=obj.kind,
            prefix_kinds=list(obj.prefix_kinds),
            window_sigma=obj.window.sigma,
            values=obj.matrix.tolist(),
            mask=obj.mask.tolist(),
        )
    raise TypeError(f"no grid response for {type(obj).__name__}")
