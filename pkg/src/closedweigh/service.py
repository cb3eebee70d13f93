"""HTTP service wrapping the experiment runner.

The CLI talks to this app in-process; `closed-weigh serve` exposes the
same app over a socket. Endpoints accept raw config text so validation
lives in exactly one place.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict

from . import __version__
from .config import EXPERIMENTS, config_echo, parse_config
from .errors import ClosedWeighError, ConfigError
from .records import render_csv, render_json
from .runner import METRIC_NAMES, execute

app = FastAPI(title="closed-weigh", version=__version__)


class RunRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: str
    seed: Optional[int] = None
    threads: int = 1
    format: Optional[Literal["csv", "json"]] = None
    expect_experiment: Optional[str] = None


class RunResponse(BaseModel):
    format: Literal["csv", "json"]
    path: str
    content: str


class ValidateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: str


def _parse(text: str, expect: Optional[str] = None):
    try:
        config = parse_config(text)
    except ConfigError as err:
        detail = {"error": "config", "message": str(err)}
        if err.line is not None:
            detail["line"] = err.line
            detail["column"] = err.column
        raise HTTPException(status_code=400, detail=detail) from err
    if expect is not None and config.experiment != expect:
        raise HTTPException(status_code=400, detail={
            "error": "config",
            "message": f"config is for {config.experiment!r}, "
                       f"invoked as {expect!r}"})
    return config


@app.post("/run", response_model=RunResponse)
def run(request: RunRequest) -> RunResponse:
    config = _parse(request.config, request.expect_experiment)
    if request.seed is not None:
        config = config.model_copy(update={"seed": request.seed})
    if request.threads < 1:
        raise HTTPException(status_code=400, detail={
            "error": "config", "message": f"threads must be >= 1, got {request.threads}"})
    try:
        result = execute(config, threads=request.threads)
    except ConfigError as err:
        raise HTTPException(status_code=400, detail={
            "error": "config", "message": str(err)}) from err
    except ClosedWeighError as err:
        raise HTTPException(status_code=422, detail={
            "error": "numerical-contract", "message": str(err)}) from err
    out_format = request.format or config.output.format
    if out_format == "csv":
        content = render_csv(result.records, result.metric_names)
    else:
        content = render_json(result.records, config_echo(config), result.metric_names)
    return RunResponse(format=out_format, path=config.output.path, content=content)


@app.post("/validate")
def validate(request: ValidateRequest) -> dict:
    config = _parse(request.config)
    return {"valid": True, "experiment": config.experiment,
            "config": config_echo(config)}


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.get("/experiments")
def experiments() -> dict:
    return {"experiments": [
        {"name": name, "metrics": METRIC_NAMES[name]} for name in EXPERIMENTS]}
