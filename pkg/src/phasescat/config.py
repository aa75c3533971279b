"""Validated run configuration for the CLI and the service.

Configs are pydantic models with extra="forbid": an unknown key anywhere in a
config file is a hard error, not a silent ignore. The same models back the
service request schemas, so a config file and a request body validate
identically.

Scattering paths use a compact text form:

    kind@channelHz[:sigma][,kind@channelHz[:sigma]...][,kind[:sigma]]

with kind one of mag, cif, lgd. Every step names the channel it keeps except
optionally the last: a final step without a channel means "analyze the full
channel grid" and produces a layer instead of a series. sigma defaults to
0.02 s for the first step and 0.2 s for deeper steps.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

__all__ = [
    "ModulationSpec",
    "SignalSpec",
    "WindowSpec",
    "AnalyzeSpec",
    "ScatterSpec",
    "SynthConfig",
    "AnalyzeConfig",
    "ScatterConfig",
    "VerifyConfig",
    "PathToken",
    "parse_path",
    "DEFAULT_SIGMA_FIRST",
    "DEFAULT_SIGMA_DEEP",
]

DEFAULT_SIGMA_FIRST = 0.02
DEFAULT_SIGMA_DEEP = 0.2

_KIND_ALIASES = {"mag": "magnitude", "cif": "cif", "lgd": "lgd"}


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ModulationSpec(StrictModel):
    kind: Literal["none", "constant-rate", "exponential-rate"] = "constant-rate"
    rate: float = 0.0


class SignalSpec(StrictModel):
    kind: Literal["sinusoid", "vibrato", "impulse", "dirac-comb"]
    fs: float = Field(gt=0)
    n: int = Field(ge=1)
    f0: float | None = None
    t0: float | None = None
    modulation: ModulationSpec | None = None

    @model_validator(mode="after")
    def _kind_params(self) -> SignalSpec:
        needs_f0 = self.kind in ("sinusoid", "vibrato", "dirac-comb")
        if needs_f0 and self.f0 is None:
            raise ValueError(f"signal kind {self.kind!r} requires f0")
        if not needs_f0 and self.f0 is not None:
            raise ValueError(f"signal kind {self.kind!r} takes no f0")
        if self.kind == "impulse" and self.t0 is None:
            raise ValueError("signal kind 'impulse' requires t0")
        if self.kind != "impulse" and self.t0 is not None:
            raise ValueError(f"signal kind {self.kind!r} takes no t0")
        if self.kind == "vibrato" and self.modulation is None:
            raise ValueError("signal kind 'vibrato' requires a modulation block")
        if self.kind != "vibrato" and self.modulation is not None:
            raise ValueError(f"signal kind {self.kind!r} takes no modulation block")
        return self


class WindowSpec(StrictModel):
    sigma: float = Field(gt=0)
    # None resolves to an odd length covering +-6 sigma, capped at the signal
    # length; the resolved value lands in the run manifest.
    length: int | None = Field(default=None, ge=3)


class AnalyzeSpec(StrictModel):
    kind: Literal["dgt", "dgt-mag", "cif", "lgd", "oracle-cif", "oracle-lgd"]
    window: WindowSpec
    n_channels: int = Field(ge=2)
    hop: int = Field(default=1, ge=1)
    mask_threshold: float = Field(default=1e-4, gt=0, lt=1)
    convention: Literal["frequency-invariant", "time-invariant"] | None = None
    mode: Literal["relative", "absolute"] = "relative"
    component: Literal["g", "g_prime", "tg"] = "g"

    @model_validator(mode="after")
    def _kind_params(self) -> AnalyzeSpec:
        bare_dgt = self.kind in ("dgt", "dgt-mag")
        if self.convention is not None and not bare_dgt:
            raise ValueError("convention applies to dgt/dgt-mag only; cif and lgd fix their own")
        if self.component != "g" and not bare_dgt:
            raise ValueError("component applies to dgt/dgt-mag only")
        if self.mode == "absolute" and self.kind not in ("cif", "oracle-cif"):
            raise ValueError("absolute mode exists for cif kinds only")
        return self


class PathToken(StrictModel):
    kind: Literal["magnitude", "cif", "lgd"]
    channel: float | None = None
    sigma: float | None = None


def parse_path(text: str) -> list[PathToken]:
    """Parse the path mini-language into tokens.

    Channels are required on every step except optionally the last; a final
    channel-free token requests a full-grid layer.
    """
    tokens: list[PathToken] = []
    parts = [p.strip() for p in text.split(",")]
    if parts == [""]:
        raise ValueError("empty path")
    for part in parts:
        if not part:
            raise ValueError(f"empty step in path {text!r}")
        head, sigma = part, None
        if ":" in part:
            head, sig_text = part.split(":", 1)
            try:
                sigma = float(sig_text)
            except ValueError:
                raise ValueError(f"bad sigma {sig_text!r} in path step {part!r}") from None
            if sigma <= 0:
                raise ValueError(f"sigma must be positive in path step {part!r}")
        channel = None
        kind_text = head
        if "@" in head:
            kind_text, chan_text = head.split("@", 1)
            try:
                channel = float(chan_text)
            except ValueError:
                raise ValueError(f"bad channel {chan_text!r} in path step {part!r}") from None
        if kind_text not in _KIND_ALIASES:
            raise ValueError(f"unknown step kind {kind_text!r} in path step {part!r}")
        tokens.append(PathToken(kind=_KIND_ALIASES[kind_text], channel=channel, sigma=sigma))
    for i, tok in enumerate(tokens[:-1]):
        if tok.channel is None:
            raise ValueError(f"path step {i} omits its channel; only the final step may")
    return tokens


class ScatterSpec(StrictModel):
    path: str
    n_channels: int = Field(ge=2)
    final_n_channels: int | None = Field(default=None, ge=2)
    final_hop: int = Field(default=32, ge=1)
    mask_threshold: float = Field(default=1e-4, gt=0, lt=1)
    # Demean the input of every step after the first (and of a final sweep at
    # depth >= 2). Magnitude outputs are offset-heavy; this removes the DC
    # line before the next analysis.
    subtract_mean: bool = True

    @model_validator(mode="after")
    def _path_parses(self) -> ScatterSpec:
        parse_path(self.path)
        return self


class SynthConfig(StrictModel):
    signal: SignalSpec


class AnalyzeConfig(StrictModel):
    signal: SignalSpec
    analysis: AnalyzeSpec


class ScatterConfig(StrictModel):
    signal: SignalSpec
    scatter: ScatterSpec


class VerifyConfig(StrictModel):
    # None runs every check; otherwise a subset by name.
    checks: list[str] | None = None
    # Overrides keyed by tolerance name; unknown names are rejected downstream.
    tolerances: dict[str, float] = Field(default_factory=dict)


CONFIG_TYPES = {
    "synth": SynthConfig,
    "analyze": AnalyzeConfig,
    "scatter": ScatterConfig,
    "verify": VerifyConfig,
}
