"""HTTP face of the package: one POST endpoint per CLI command.

Request bodies are the CLI config models verbatim; malformed bodies get
FastAPI's 422, parameter combinations the core rejects get a 400 with the
core's message.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..runner import run_analyze, run_scatter, run_synth, run_verify
from .schemas import (
    AnalyzeRequest,
    CheckResponse,
    CrossingsResponse,
    GridResponse,
    ScatterRequest,
    ScatterResponse,
    SignalResponse,
    SynthRequest,
    VerifyRequest,
    VerifyResponse,
    grid_response,
    signal_response,
)

__all__ = ["create_app", "app"]


def create_app() -> FastAPI:
    app = FastAPI(title="phasescat", version=__version__)

    @app.exception_handler(ValueError)
    async def _value_error(_: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/synth", response_model=SignalResponse)
    def synth(req: SynthRequest) -> SignalResponse:
        return signal_response(run_synth(req))

    @app.post("/analyze", response_model=GridResponse)
    def analyze(req: AnalyzeRequest) -> GridResponse:
        return grid_response(run_analyze(req))

    @app.post("/scatter", response_model=ScatterResponse)
    def scatter(req: ScatterRequest) -> ScatterResponse:
        product = run_scatter(req)
        series = signal_response(product.series) if product.series is not None else None
        lay = grid_response(product.layer) if product.layer is not None else None
        cross = None
        if product.crossing_data is not None:
            times, vals, found = product.crossing_data
            cross = CrossingsResponse(
                frame_times=times.tolist(),
                crossing_hz=vals.tolist(),
                found=found.tolist(),
            )
        return ScatterResponse(series=series, layer=lay, crossings=cross)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        report = run_verify(req)
        return VerifyResponse(
            all_passed=report.all_passed,
            checks=[CheckResponse(**c.to_dict()) for c in report.checks],
        )

    return app


app = create_app()
