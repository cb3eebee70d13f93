"""Command-line front end: a thin client of the HTTP service.

Experiment subcommands post the config to the service app in-process,
then write the returned file bytes atomically. Exit codes: 0 success,
2 config error, 3 numerical-contract failure, 4 I/O error.
"""

from __future__ import annotations

import asyncio
import json
import sys

import click
import httpx

from .records import write_atomic
from .service import app

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _fail(code: int, kind: str, message: str, **extra) -> None:
    record = {"error": kind, "message": message, "exit_code": code}
    record.update(extra)
    click.echo(json.dumps(record, sort_keys=True), err=True)
    sys.exit(code)


def _post(path: str, body: dict) -> httpx.Response:
    """Post to the service app in-process."""
    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://closed-weigh.internal",
                                     timeout=None) as client:
            return await client.post(path, json=body)
    return asyncio.run(go())


def _run_experiment(experiment: str, config_path: str, seed, out, out_format,
                    threads: int) -> None:
    try:
        with open(config_path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as err:
        _fail(EXIT_IO, "io", f"cannot read config: {err}")
    body = {"config": text, "threads": threads, "expect_experiment": experiment}
    if seed is not None:
        body["seed"] = seed
    if out_format is not None:
        body["format"] = out_format
    response = _post("/run", body)
    if response.status_code != 200:
        detail = response.json().get("detail", {})
        message = detail.get("message", response.text)
        if detail.get("error") == "numerical-contract":
            _fail(EXIT_NUMERICAL, "numerical-contract", message)
        extra = {k: detail[k] for k in ("line", "column") if k in detail}
        _fail(EXIT_CONFIG, "config", message, **extra)
    payload = response.json()
    target = out or payload["path"]
    try:
        write_atomic(target, payload["content"])
    except OSError as err:
        _fail(EXIT_IO, "io", f"cannot write {target}: {err}")
    click.echo(target)


def _experiment_command(name: str, help_text: str):
    @click.option("--threads", type=int, default=1, show_default=True,
                  help="Worker threads for sweep points.")
    @click.option("--format", "out_format", type=click.Choice(["csv", "json"]),
                  default=None, help="Override the config's output format.")
    @click.option("--out", type=click.Path(dir_okay=False), default=None,
                  help="Override the config's output path.")
    @click.option("--seed", type=int, default=None,
                  help="Override the config's RNG seed.")
    @click.option("--config", "config_path", required=True,
                  type=click.Path(dir_okay=False),
                  help="Path to the run configuration document.")
    def command(config_path, seed, out, out_format, threads):
        _run_experiment(name, config_path, seed, out, out_format, threads)

    command.__name__ = name.replace("-", "_")
    command.__doc__ = help_text
    return command


@click.group()
def main():
    """Simulations of measurements on closed systems: internal energy
    readout with clock back-reaction, gravitational weighing, and disc
    angular momentum."""


main.command(name="internal-measurement")(_experiment_command(
    "internal-measurement",
    "Clock-coupled internal energy measurement sweep."))
main.command(name="weighing")(_experiment_command(
    "weighing",
    "Gravitational weighing Monte Carlo."))
main.command(name="disc")(_experiment_command(
    "disc",
    "Rotating-disc angular momentum measurement."))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(app, host=host, port=port)


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(dir_okay=False),
              help="Path to the run configuration document.")
def validate(config_path: str) -> None:
    """Parse and validate a config without running anything."""
    try:
        with open(config_path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as err:
        _fail(EXIT_IO, "io", f"cannot read config: {err}")
    response = _post("/validate", {"config": text})
    if response.status_code != 200:
        detail = response.json().get("detail", {})
        extra = {k: detail[k] for k in ("line", "column") if k in detail}
        _fail(EXIT_CONFIG, "config", detail.get("message", response.text), **extra)
    click.echo(json.dumps(response.json(), sort_keys=True))


if __name__ == "__main__":
    main()
