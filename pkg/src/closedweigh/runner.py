"""Sweep execution: dispatch a RunConfig to the experiment modules.

Points are evaluated (possibly concurrently) and emitted in axis-major
order keyed by grid index, so output never depends on scheduling. Monte
Carlo points get their own RNG stream derived from (seed, point index).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import disc as disc_mod
from . import weighing as weighing_mod
from .config import DiscParams, InternalMeasurementParams, RunConfig, WeighingParams
from .errors import ConfigError
from .measurement import SweepBase, evaluate_sweep_point
from .records import SweepRecord

METRIC_NAMES = {
    "internal-measurement": ["mean_shift", "bias", "spread", "clock_spread",
                             "product_duration_spread", "product_backreaction_spread",
                             "success"],
    "weighing": ["return_time", "mass_mean", "mass_spread", "dilation_spread",
                 "mc_product", "identity_product"],
    "disc": ["omega_spread", "theta_spread", "delta_l", "mc_product",
             "identity_product"],
}


@dataclass
class RunResult:
    config: RunConfig
    records: list[SweepRecord]
    metric_names: list[str]


def _point_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def _grid(config: RunConfig) -> tuple[list[str], list[list[float]]]:
    """Axis names and value lists; a fixed parameter acts as a 1-point
    axis so single runs and 1-axis sweeps share the record shape."""
    params = config.parameters
    names = [axis.name for axis in config.sweep]
    values = [axis.values() for axis in config.sweep]
    defaults = {
        "internal-measurement": ("tau0", "delta_z"),
        "weighing": ("delta_z",),
        "disc": ("delta_r",),
    }[config.experiment]
    for name in defaults:
        if name not in names:
            names.append(name)
            values.append([float(getattr(params, name))])
        if len(names) == 2:
            break
    return names, values


def _points(values: list[list[float]]) -> list[tuple[tuple[int, ...], tuple[float, ...]]]:
    if len(values) == 1:
        return [((i,), (v,)) for i, v in enumerate(values[0])]
    return [((i, j), (a, b))
            for i, a in enumerate(values[0]) for j, b in enumerate(values[1])]


def _internal_point(params: InternalMeasurementParams, coords: dict) -> tuple[dict, bool]:
    base = SweepBase(box_energy=params.box_energy, total_energy=params.total_energy,
                     shape=params.shape, n_tau=params.n_tau, n_z=params.n_z,
                     pointer_center=params.pointer_center, hbar=params.hbar)
    metrics = evaluate_sweep_point(base, coords["tau0"], coords["delta_z"])
    return metrics, metrics.pop("valid")


def _weighing_point(params: WeighingParams, coords: dict, seed: int) -> tuple[dict, bool]:
    exp = params.experiment(**({"v0": coords["v0"]} if "v0" in coords else {}))
    delta_z = coords["delta_z"]
    tau = weighing_mod.return_time(exp)
    delta_p = exp.hbar / (2.0 * delta_z)
    identity = weighing_mod.product_identity(exp, delta_z, delta_p, tau)
    stats = weighing_mod.monte_carlo_weighing(exp, delta_z, params.n_samples, seed)
    return {"return_time": tau, "mass_mean": stats.mass_mean,
            "mass_spread": stats.mass_spread, "dilation_spread": stats.dilation_spread,
            "mc_product": stats.product, "identity_product": identity}, True


def _disc_point(params: DiscParams, coords: dict, seed: int) -> tuple[dict, bool]:
    exp = params.experiment(**({"T": coords["T"]} if "T" in coords else {}))
    delta_r = coords["delta_r"]
    delta_p = exp.hbar / (2.0 * delta_r)
    identity = disc_mod.angular_product(exp, delta_r, delta_p).product
    stats = disc_mod.monte_carlo_disc(exp, delta_r, params.n_samples, seed)
    return {"omega_spread": stats.omega_spread, "theta_spread": stats.theta_spread,
            "delta_l": stats.delta_l, "mc_product": stats.product,
            "identity_product": identity}, True


def _prevalidate(config: RunConfig, names: list[str],
                 points: list[tuple[tuple[int, ...], tuple[float, ...]]]) -> None:
    """Check every sweep point against the module invariants before any
    computation (clock-singularity flags are the one runtime exception:
    those become invalid rows so sweeps stay complete)."""
    params = config.parameters
    for _, coords in points:
        named = dict(zip(names, coords))
        try:
            if config.experiment == "weighing":
                params.experiment(**({"v0": named["v0"]} if "v0" in named else {}))
                if named.get("v0", params.v0) <= 0:
                    raise ValueError("v0 must be > 0 for a timed run")
                if named["delta_z"] <= 0:
                    raise ValueError(f"delta_z must be > 0, got {named['delta_z']}")
            elif config.experiment == "disc":
                params.experiment(**({"T": named["T"]} if "T" in named else {}))
                if named["delta_r"] <= 0:
                    raise ValueError(f"delta_r must be > 0, got {named['delta_r']}")
            else:
                if named["tau0"] <= 0 or named["delta_z"] <= 0:
                    raise ValueError("tau0 and delta_z must be > 0")
        except Exception as err:
            raise ConfigError(f"sweep point {named}: {err}") from err


def execute(config: RunConfig, threads: int = 1) -> RunResult:
    """Run every sweep point and return axis-major ordered records."""
    names, values = _grid(config)
    points = _points(values)
    _prevalidate(config, names, points)
    params = config.parameters

    def work(item):
        index, (grid_index, coords) = item
        named = dict(zip(names, coords))
        started = time.perf_counter()
        if config.experiment == "internal-measurement":
            metrics, valid = _internal_point(params, named)
        elif config.experiment == "weighing":
            metrics, valid = _weighing_point(params, named, _point_seed(config.seed, index))
        else:
            metrics, valid = _disc_point(params, named, _point_seed(config.seed, index))
        return SweepRecord(axis_values=coords, grid_index=grid_index, metrics=metrics,
                           valid=valid, wall_time=time.perf_counter() - started)

    items = list(enumerate(points))
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(work, items))
    else:
        records = [work(item) for item in items]
    records.sort(key=lambda r: r.grid_index)
    return RunResult(config=config, records=records,
                     metric_names=METRIC_NAMES[config.experiment])
