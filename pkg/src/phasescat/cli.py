"""Command-line front end.

Four data commands (synth, analyze, scatter, verify) plus serve. Each data
command reads a JSON config, runs in process, and writes its outputs and a
manifest.json under --out. The manifest embeds the fully resolved config and
is itself a valid --config input: rerunning from it reproduces every output
byte for byte.

Exit codes: 0 success, 1 I/O failure, 2 bad config or parameters,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from .config import CONFIG_TYPES
from .runner import resolve_config, run_analyze, run_scatter, run_synth, run_verify, write_products
from .verify import format_check_line

__all__ = ["main"]

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_VERIFY = 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _load_config(path: str, command: str):
    """Read a config file, which may be a bare config or a prior manifest.

    Returns (config, manifest_format, manifest_seed); the latter two are None
    unless the file was a manifest.
    """
    try:
        raw = Path(path).read_text()
    except OSError as e:
        raise CliError(EXIT_IO, f"cannot read config file: {e}") from e
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise CliError(EXIT_CONFIG, f"config is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise CliError(EXIT_CONFIG, "config must be a JSON object")
    fmt = seed = None
    if "command" in data:
        if data["command"] != command:
            raise CliError(
                EXIT_CONFIG,
                f"manifest is for command {data['command']!r}, not {command!r}",
            )
        fmt = data.get("format")
        seed = data.get("seed")
        data = data.get("config", {})
    try:
        cfg = CONFIG_TYPES[command].model_validate(data)
    except ValidationError as e:
        raise CliError(EXIT_CONFIG, f"invalid config: {e}") from e
    return cfg, fmt, seed


def _write_manifest(out_dir: Path, command: str, fmt: str, seed, cfg) -> Path:
    path = out_dir / "manifest.json"
    data = {
        "command": command,
        "format": fmt,
        "seed": seed,
        "config": cfg.model_dump(mode="json"),
    }
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="\n") as f:
            f.write(json.dumps(data, sort_keys=True, indent=2))
            f.write("\n")
    except OSError as e:
        raise CliError(EXIT_IO, f"cannot write manifest: {e}") from e
    return path


def _run_data_command(args, command: str, runner) -> int:
    cfg, mfmt, mseed = _load_config(args.config, command)
    fmt = args.format or mfmt or "csv"
    seed = args.seed if args.seed is not None else mseed
    try:
        product = runner(cfg)
    except (ValueError, ValidationError) as e:
        raise CliError(EXIT_CONFIG, f"cannot run {command}: {e}") from e
    out_dir = Path(args.out)
    resolved = resolve_config(cfg)
    try:
        files = write_products(product, out_dir, fmt)
    except OSError as e:
        raise CliError(EXIT_IO, f"cannot write outputs: {e}") from e
    files.append(_write_manifest(out_dir, command, fmt, seed, resolved))
    for f in files:
        print(f)
    return EXIT_OK


def cmd_synth(args) -> int:
    return _run_data_command(args, "synth", run_synth)


def cmd_analyze(args) -> int:
    return _run_data_command(args, "analyze", run_analyze)


def cmd_scatter(args) -> int:
    return _run_data_command(args, "scatter", run_scatter)


def cmd_verify(args) -> int:
    cfg, mfmt, mseed = _load_config(args.config, "verify")
    fmt = args.format or mfmt or "csv"
    seed = args.seed if args.seed is not None else mseed
    try:
        report = run_verify(cfg)
    except ValueError as e:
        raise CliError(EXIT_CONFIG, f"cannot run verify: {e}") from e
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(out_dir / "report.json", "w", newline="\n") as f:
            f.write(json.dumps(report.to_dict(), sort_keys=True, indent=2))
            f.write("\n")
    except OSError as e:
        raise CliError(EXIT_IO, f"cannot write report: {e}") from e
    _write_manifest(out_dir, "verify", fmt, seed, cfg)
    for check in report.checks:
        print(format_check_line(check))
    print(f"{'all checks passed' if report.all_passed else 'verification FAILED'} "
          f"({sum(c.passed for c in report.checks)}/{len(report.checks)})")
    return EXIT_OK if report.all_passed else EXIT_VERIFY


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="phasescat",
        description="Synthesize test signals, run Gabor phase-derivative analyses, "
        "cascade scattering paths, and verify the whole chain.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    for name, func, help_text in (
        ("synth", cmd_synth, "generate a signal and write it out"),
        ("analyze", cmd_analyze, "run one analysis (dgt, cif, lgd, or oracle) on a signal"),
        ("scatter", cmd_scatter, "run a scattering path; series or layer output"),
        ("verify", cmd_verify, "run the built-in verification battery"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", required=True, metavar="FILE", help="JSON config or a prior manifest.json")
        sp.add_argument("--out", default=".", metavar="DIR", help="output directory (default: .)")
        sp.add_argument("--format", choices=["csv", "raw"], default=None,
                        help="output format (default: csv, or the manifest's)")
        sp.add_argument("--seed", type=int, default=None,
                        help="reserved; synthesis is deterministic. Recorded in the manifest.")
        sp.set_defaults(func=func)
    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    sp.set_defaults(func=cmd_serve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
