"""HTTP service exposing the simulator.

POST /run executes one scenario; POST /sweep replicates it across a
parameter range. Structural request problems come back as 422 (schema
validation), semantic configuration problems as 400.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__
from .core import ConfigError
from .runner import execute_run, execute_sweep
from .schemas import HealthResponse, RunRequest, RunResponse, SweepRequest, SweepResponse


def create_app() -> FastAPI:
    app = FastAPI(title="pas-sim", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/run", response_model=RunResponse)
    def run_scenario(request: RunRequest) -> RunResponse:
        try:
            return execute_run(request.scenario, trace=request.trace)
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/sweep", response_model=SweepResponse)
    def sweep_scenario(request: SweepRequest) -> SweepResponse:
        try:
            return execute_sweep(request.scenario, request.param, request.values, request.reps)
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    return app


app = create_app()
