"""Config model and path mini-language tests.

The contract being defended: unknown keys anywhere in a config are hard
errors, per-kind parameter rules hold at the model layer (not at run time),
and the path parser accepts exactly the documented grammar.
"""

import pytest
from pydantic import ValidationError

from phasescat.config import (
    DEFAULT_SIGMA_DEEP,
    DEFAULT_SIGMA_FIRST,
    AnalyzeConfig,
    AnalyzeSpec,
    ScatterConfig,
    ScatterSpec,
    SignalSpec,
    SynthConfig,
    VerifyConfig,
    WindowSpec,
    parse_path,
)


class TestParsePath:
    def test_single_full_step(self):
        (tok,) = parse_path("cif@880")
        assert tok.kind == "cif" and tok.channel == 880.0 and tok.sigma is None

    def test_mag_alias_expands(self):
        (tok,) = parse_path("mag@440:0.05")
        assert tok.kind == "magnitude" and tok.channel == 440.0 and tok.sigma == 0.05

    def test_final_step_may_omit_channel(self):
        toks = parse_path("cif@880:0.02,cif")
        assert toks[0].channel == 880.0
        assert toks[1].kind == "cif" and toks[1].channel is None

    def test_final_sweep_with_sigma(self):
        toks = parse_path("mag@880,lgd:0.3")
        assert toks[1].kind == "lgd" and toks[1].channel is None and toks[1].sigma == 0.3

    def test_three_steps(self):
        toks = parse_path("mag@880:0.02, cif@20:0.2 ,lgd@5")
        assert [t.kind for t in toks] == ["magnitude", "cif", "lgd"]
        assert [t.channel for t in toks] == [880.0, 20.0, 5.0]
        assert [t.sigma for t in toks] == [0.02, 0.2, None]

    def test_non_final_step_needs_channel(self):
        with pytest.raises(ValueError, match="only the final step"):
            parse_path("mag,cif@20")

    def test_empty_path(self):
        with pytest.raises(ValueError, match="empty"):
            parse_path("")

    def test_empty_step(self):
        with pytest.raises(ValueError, match="empty step"):
            parse_path("mag@880,,cif")

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown step kind"):
            parse_path("phase@880")

    def test_magnitude_long_name_not_accepted(self):
        with pytest.raises(ValueError, match="unknown step kind"):
            parse_path("magnitude@880")

    def test_bad_channel(self):
        with pytest.raises(ValueError, match="bad channel"):
            parse_path("mag@eight")

    def test_bad_sigma(self):
        with pytest.raises(ValueError, match="bad sigma"):
            parse_path("mag@880:wide")

    def test_negative_sigma(self):
        with pytest.raises(ValueError, match="sigma must be positive"):
            parse_path("mag@880:-0.1")

    def test_defaults_exported(self):
        assert DEFAULT_SIGMA_FIRST == 0.02
        assert DEFAULT_SIGMA_DEEP == 0.2


class TestSignalSpec:
    def test_sinusoid_requires_f0(self):
        with pytest.raises(ValidationError, match="requires f0"):
            SignalSpec(kind="sinusoid", fs=4096, n=8192)

    def test_impulse_requires_t0(self):
        with pytest.raises(ValidationError, match="requires t0"):
            SignalSpec(kind="impulse", fs=4096, n=8192)

    def test_impulse_takes_no_f0(self):
        with pytest.raises(ValidationError, match="takes no f0"):
            SignalSpec(kind="impulse", fs=4096, n=8192, t0=0.5, f0=880)

    def test_sinusoid_takes_no_t0(self):
        with pytest.raises(ValidationError, match="takes no t0"):
            SignalSpec(kind="sinusoid", fs=4096, n=8192, f0=880, t0=0.5)

    def test_vibrato_requires_modulation(self):
        with pytest.raises(ValidationError, match="modulation"):
            SignalSpec(kind="vibrato", fs=4096, n=8192, f0=880)

    def test_sinusoid_takes_no_modulation(self):
        with pytest.raises(ValidationError, match="modulation"):
            SignalSpec(
                kind="sinusoid",
                fs=4096,
                n=8192,
                f0=880,
                modulation={"kind": "constant-rate", "rate": 4.0},
            )

    def test_vibrato_full(self):
        spec = SignalSpec(
            kind="vibrato",
            fs=4096,
            n=8192,
            f0=880,
            modulation={"kind": "constant-rate", "rate": 20.0},
        )
        assert spec.modulation.rate == 20.0

    def test_unknown_signal_kind(self):
        with pytest.raises(ValidationError):
            SignalSpec(kind="noise", fs=4096, n=8192)

    def test_nonpositive_fs(self):
        with pytest.raises(ValidationError):
            SignalSpec(kind="impulse", fs=0, n=8192, t0=0.5)


class TestUnknownKeys:
    def test_top_level(self):
        with pytest.raises(ValidationError, match="extra"):
            SynthConfig(
                signal={"kind": "impulse", "fs": 4096, "n": 8192, "t0": 0.5},
                verbose=True,
            )

    def test_nested_signal(self):
        with pytest.raises(ValidationError, match="extra"):
            SynthConfig(
                signal={
                    "kind": "impulse",
                    "fs": 4096,
                    "n": 8192,
                    "t0": 0.5,
                    "amplitude": 2.0,
                }
            )

    def test_nested_modulation(self):
        with pytest.raises(ValidationError, match="extra"):
            SignalSpec(
                kind="vibrato",
                fs=4096,
                n=8192,
                f0=880,
                modulation={"kind": "constant-rate", "rate": 4.0, "depth": 2.0},
            )

    def test_nested_window(self):
        with pytest.raises(ValidationError, match="extra"):
            WindowSpec(sigma=0.02, taper="hann")

    def test_nested_analysis(self):
        with pytest.raises(ValidationError, match="extra"):
            AnalyzeSpec(
                kind="cif", window={"sigma": 0.02}, n_channels=64, overlap=0.5
            )

    def test_verify_config(self):
        with pytest.raises(ValidationError, match="extra"):
            VerifyConfig(checks=None, tolerance=0.5)


class TestAnalyzeSpec:
    def window(self):
        return {"sigma": 0.02}

    def test_convention_only_for_dgt(self):
        with pytest.raises(ValidationError, match="convention"):
            AnalyzeSpec(
                kind="cif",
                window=self.window(),
                n_channels=64,
                convention="frequency-invariant",
            )

    def test_component_only_for_dgt(self):
        with pytest.raises(ValidationError, match="component"):
            AnalyzeSpec(
                kind="lgd", window=self.window(), n_channels=64, component="tg"
            )

    def test_absolute_only_for_cif(self):
        with pytest.raises(ValidationError, match="absolute"):
            AnalyzeSpec(
                kind="lgd", window=self.window(), n_channels=64, mode="absolute"
            )
        with pytest.raises(ValidationError, match="absolute"):
            AnalyzeSpec(
                kind="dgt", window=self.window(), n_channels=64, mode="absolute"
            )

    def test_absolute_cif_accepted(self):
        spec = AnalyzeSpec(
            kind="oracle-cif", window=self.window(), n_channels=64, mode="absolute"
        )
        assert spec.mode == "absolute"

    def test_dgt_with_convention_and_component(self):
        spec = AnalyzeSpec(
            kind="dgt",
            window=self.window(),
            n_channels=64,
            convention="time-invariant",
            component="g_prime",
        )
        assert spec.convention == "time-invariant"

    def test_mask_threshold_bounds(self):
        for bad in (0.0, 1.0):
            with pytest.raises(ValidationError):
                AnalyzeSpec(
                    kind="cif",
                    window=self.window(),
                    n_channels=64,
                    mask_threshold=bad,
                )


class TestScatterSpec:
    def test_path_validated_at_model_level(self):
        with pytest.raises(ValidationError, match="unknown step kind"):
            ScatterSpec(path="phase@880", n_channels=512)

    def test_defaults(self):
        spec = ScatterSpec(path="mag@880,cif", n_channels=512)
        assert spec.final_hop == 32
        assert spec.final_n_channels is None
        assert spec.subtract_mean is True
        assert spec.mask_threshold == 1e-4

    def test_full_config(self):
        cfg = ScatterConfig(
            signal={
                "kind": "vibrato",
                "fs": 4096,
                "n": 16384,
                "f0": 880,
                "modulation": {"kind": "constant-rate", "rate": 20.0},
            },
            scatter={"path": "mag@880:0.02,cif", "n_channels": 4096},
        )
        assert cfg.scatter.path == "mag@880:0.02,cif"

    def test_analyze_config(self):
        cfg = AnalyzeConfig(
            signal={"kind": "sinusoid", "fs": 4096, "n": 8192, "f0": 1000},
            analysis={"kind": "cif", "window": {"sigma": 0.02}, "n_channels": 4096},
        )
        assert cfg.analysis.window.length is None
