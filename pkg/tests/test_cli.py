"""End-to-end CLI tests, all in process through main().

The contract: four data subcommands, JSON configs (or prior manifests) in,
files plus a manifest out, exit codes 0/1/2/3 for success, I/O trouble, bad
config and failed verification. Rerunning any command from its own manifest
must reproduce the outputs byte for byte.
"""

import json

import pytest

from phasescat.cli import main


def write_json(path, data):
    path.write_text(json.dumps(data, indent=2) + "\n")
    return path


def impulse_cfg():
    return {"signal": {"kind": "impulse", "fs": 256.0, "n": 512, "t0": 0.5}}


def analyze_cfg(kind="cif", **extra):
    return {
        "signal": {"kind": "sinusoid", "fs": 256.0, "n": 512, "f0": 80.0},
        "analysis": {
            "kind": kind,
            "window": {"sigma": 0.05},
            "n_channels": 64,
            "hop": 8,
            **extra,
        },
    }


def scatter_cfg(path="mag@64:0.05,cif:0.15"):
    return {
        "signal": {
            "kind": "vibrato",
            "fs": 512.0,
            "n": 1024,
            "f0": 128.0,
            "modulation": {"kind": "constant-rate", "rate": 4.0},
        },
        "scatter": {
            "path": path,
            "n_channels": 128,
            "final_n_channels": 256,
            "final_hop": 4,
        },
    }


class TestSynth:
    def test_csv_outputs_and_manifest(self, tmp_path, capsys):
        cfg = write_json(tmp_path / "c.json", impulse_cfg())
        out = tmp_path / "out"
        assert main(["synth", "--config", str(cfg), "--out", str(out)]) == 0
        assert (out / "signal.csv").exists()
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["command"] == "synth"
        assert manifest["format"] == "csv"
        assert manifest["config"]["signal"]["t0"] == 0.5
        lines = (out / "signal.csv").read_text().splitlines()
        assert len(lines) == 513 and lines[0] == "index,re,im"
        printed = capsys.readouterr().out.splitlines()
        assert str(out / "signal.csv") in printed
        assert str(out / "manifest.json") in printed

    def test_manifest_rerun_byte_identical(self, tmp_path):
        cfg = write_json(tmp_path / "c.json", impulse_cfg())
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        assert main(["synth", "--config", str(cfg), "--out", str(out1)]) == 0
        assert main(["synth", "--config", str(out1 / "manifest.json"), "--out", str(out2)]) == 0
        for name in ("signal.csv", "manifest.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_raw_format_sticks_in_manifest(self, tmp_path):
        cfg = write_json(tmp_path / "c.json", impulse_cfg())
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        assert main(["synth", "--config", str(cfg), "--out", str(out1), "--format", "raw"]) == 0
        assert (out1 / "signal.f64").exists() and (out1 / "signal.json").exists()
        assert json.loads((out1 / "manifest.json").read_text())["format"] == "raw"
        # Rerun from the manifest with no --format: raw carries over.
        assert main(["synth", "--config", str(out1 / "manifest.json"), "--out", str(out2)]) == 0
        assert (out2 / "signal.f64").read_bytes() == (out1 / "signal.f64").read_bytes()

    def test_seed_recorded_and_carried(self, tmp_path):
        cfg = write_json(tmp_path / "c.json", impulse_cfg())
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        assert main(["synth", "--config", str(cfg), "--out", str(out1), "--seed", "7"]) == 0
        assert json.loads((out1 / "manifest.json").read_text())["seed"] == 7
        assert main(["synth", "--config", str(out1 / "manifest.json"), "--out", str(out2)]) == 0
        assert json.loads((out2 / "manifest.json").read_text())["seed"] == 7


class TestAnalyze:
    def test_cif_grid_csv(self, tmp_path):
        cfg = write_json(tmp_path / "c.json", analyze_cfg())
        out = tmp_path / "out"
        assert main(["analyze", "--config", str(cfg), "--out", str(out)]) == 0
        lines = (out / "grid.csv").read_text().splitlines()
        assert lines[0] == "channel_freq_hz,frame_time_s,value,valid"
        assert len(lines) == 1 + 64 * 64

    def test_manifest_resolves_window_length(self, tmp_path):
        cfg = write_json(tmp_path / "c.json", analyze_cfg())
        out = tmp_path / "out"
        assert main(["analyze", "--config", str(cfg), "--out", str(out)]) == 0
        manifest = json.loads((out / "manifest.json").read_text())
        length = manifest["config"]["analysis"]["window"]["length"]
        assert isinstance(length, int) and length >= 3

    def test_manifest_resolves_dgt_convention(self, tmp_path):
        cfg = write_json(tmp_path / "c.json", analyze_cfg(kind="dgt"))
        out = tmp_path / "out"
        assert main(["analyze", "--config", str(cfg), "--out", str(out)]) == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["analysis"]["convention"] == "frequency-invariant"

    def test_manifest_rerun_byte_identical(self, tmp_path):
        cfg = write_json(tmp_path / "c.json", analyze_cfg())
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        assert main(["analyze", "--config", str(cfg), "--out", str(out1), "--format", "raw"]) == 0
        assert main(["analyze", "--config", str(out1 / "manifest.json"), "--out", str(out2)]) == 0
        for name in ("grid.f64", "grid.mask.u8", "grid.json", "manifest.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_oracle_kind_runs(self, tmp_path):
        cfg = write_json(tmp_path / "c.json", analyze_cfg(kind="oracle-cif", hop=1))
        out = tmp_path / "out"
        assert main(["analyze", "--config", str(cfg), "--out", str(out)]) == 0
        assert (out / "grid.csv").exists()


class TestScatter:
    def test_sweep_writes_layer_and_crossings(self, tmp_path):
        cfg = write_json(tmp_path / "c.json", scatter_cfg())
        out = tmp_path / "out"
        assert main(["scatter", "--config", str(cfg), "--out", str(out)]) == 0
        assert (out / "layer.csv").exists()
        assert (out / "crossings.csv").exists()
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["scatter"]["final_n_channels"] == 256

    def test_pointwise_writes_series(self, tmp_path):
        cfg = write_json(tmp_path / "c.json", scatter_cfg(path="mag@64:0.05,cif@8:0.15"))
        out = tmp_path / "out"
        assert main(["scatter", "--config", str(cfg), "--out", str(out), "--format", "raw"]) == 0
        assert (out / "series.f64").exists() and (out / "series.json").exists()
        assert not (out / "crossings.csv").exists()
        meta = json.loads((out / "series.json").read_text())
        assert meta["fs"] == 512.0 / 4
        assert meta["n"] == 1024 // 4

    def test_magnitude_sweep_has_no_crossings(self, tmp_path):
        cfg = write_json(tmp_path / "c.json", scatter_cfg(path="mag@64:0.05,mag:0.15"))
        out = tmp_path / "out"
        assert main(["scatter", "--config", str(cfg), "--out", str(out)]) == 0
        assert (out / "layer.csv").exists()
        assert not (out / "crossings.csv").exists()

    def test_manifest_rerun_byte_identical(self, tmp_path):
        cfg = write_json(tmp_path / "c.json", scatter_cfg())
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        assert main(["scatter", "--config", str(cfg), "--out", str(out1)]) == 0
        assert main(["scatter", "--config", str(out1 / "manifest.json"), "--out", str(out2)]) == 0
        for name in ("layer.csv", "crossings.csv", "manifest.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


class TestExitCodes:
    def test_missing_config_file_is_io(self, tmp_path, capsys):
        code = main(["synth", "--config", str(tmp_path / "absent.json"), "--out", str(tmp_path)])
        assert code == 1
        assert "cannot read config" in capsys.readouterr().err

    def test_malformed_json_is_config_error(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text("{nope")
        assert main(["synth", "--config", str(cfg), "--out", str(tmp_path)]) == 2
        assert "not valid JSON" in capsys.readouterr().err

    def test_non_object_config(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text("[1, 2]")
        assert main(["synth", "--config", str(cfg), "--out", str(tmp_path)]) == 2
        assert "JSON object" in capsys.readouterr().err

    def test_unknown_key(self, tmp_path, capsys):
        data = impulse_cfg()
        data["signal"]["amplitude"] = 2.0
        cfg = write_json(tmp_path / "c.json", data)
        assert main(["synth", "--config", str(cfg), "--out", str(tmp_path)]) == 2
        assert "invalid config" in capsys.readouterr().err

    def test_semantic_error_at_run_time(self, tmp_path, capsys):
        data = {"signal": {"kind": "sinusoid", "fs": 256.0, "n": 512, "f0": 200.0}}
        cfg = write_json(tmp_path / "c.json", data)
        assert main(["synth", "--config", str(cfg), "--out", str(tmp_path)]) == 2
        assert "cannot run synth" in capsys.readouterr().err

    def test_grid_mismatch_at_run_time(self, tmp_path, capsys):
        data = analyze_cfg()
        data["analysis"]["n_channels"] = 100
        cfg = write_json(tmp_path / "c.json", data)
        assert main(["analyze", "--config", str(cfg), "--out", str(tmp_path)]) == 2
        assert "cannot run analyze" in capsys.readouterr().err

    def test_wrong_command_manifest(self, tmp_path, capsys):
        cfg = write_json(tmp_path / "c.json", impulse_cfg())
        out = tmp_path / "out"
        assert main(["synth", "--config", str(cfg), "--out", str(out)]) == 0
        code = main(["analyze", "--config", str(out / "manifest.json"), "--out", str(out)])
        assert code == 2
        assert "manifest is for command" in capsys.readouterr().err


class TestVerify:
    def test_subset_passes(self, tmp_path, capsys):
        cfg = write_json(tmp_path / "v.json", {"checks": ["convention-covariance"]})
        out = tmp_path / "out"
        assert main(["verify", "--config", str(cfg), "--out", str(out)]) == 0
        text = capsys.readouterr().out
        assert "PASS convention-covariance" in text
        assert "all checks passed (1/1)" in text
        report = json.loads((out / "report.json").read_text())
        assert report["all_passed"] is True
        assert report["checks"][0]["name"] == "convention-covariance"
        assert (out / "manifest.json").exists()

    def test_failed_tolerance_exits_three(self, tmp_path, capsys):
        cfg = write_json(
            tmp_path / "v.json",
            {"checks": ["convention-covariance"], "tolerances": {"covariance_rel_tol": 1e-30}},
        )
        out = tmp_path / "out"
        assert main(["verify", "--config", str(cfg), "--out", str(out)]) == 3
        text = capsys.readouterr().out
        assert "FAIL convention-covariance" in text
        assert "verification FAILED" in text
        report = json.loads((out / "report.json").read_text())
        assert report["all_passed"] is False

    def test_unknown_check_name(self, tmp_path, capsys):
        cfg = write_json(tmp_path / "v.json", {"checks": ["no-such-check"]})
        assert main(["verify", "--config", str(cfg), "--out", str(tmp_path)]) == 2
        assert "cannot run verify" in capsys.readouterr().err

    def test_unknown_tolerance_key(self, tmp_path, capsys):
        cfg = write_json(
            tmp_path / "v.json",
            {"checks": ["convention-covariance"], "tolerances": {"max_wobble": 1.0}},
        )
        assert main(["verify", "--config", str(cfg), "--out", str(tmp_path)]) == 2
        assert "cannot run verify" in capsys.readouterr().err

    def test_manifest_rerun(self, tmp_path):
        cfg = write_json(tmp_path / "v.json", {"checks": ["convention-covariance"]})
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        assert main(["verify", "--config", str(cfg), "--out", str(out1)]) == 0
        assert main(["verify", "--config", str(out1 / "manifest.json"), "--out", str(out2)]) == 0
        m2 = json.loads((out2 / "manifest.json").read_text())
        assert m2["config"]["checks"] == ["convention-covariance"]
