"""Internal energy measurement by a clock-coupled pointer.

A box with energy eigenvalue E sits in a closed system whose clock runs
at rate 1 while idle. During a coupling window g(tau) of duration tau0
the clock rate for pointer coordinate z becomes 1 + g(tau) z, and the
pointer momentum picks up the total energy of the system. This module
builds the coupling windows, the exact steady states, the real-time
propagation cross-check, the pointer readout statistics, the clock
back-reaction bookkeeping, and the duration/accuracy failure sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import (ContractViolationError, ProfileSupportError,
                     ReadoutTimingError, SingularityError)
from .numerics import (Grid1D, WaveFunction, advect_batch, gaussian_packet,
                       quadrature, running_antiderivative, spectral_derivative,
                       to_conjugate)
from .records import SweepRecord

SHAPE_RAISED_COSINE = "raised-cosine"
SHAPE_SMOOTHSTEP = "smoothstep-bump"
SHAPES = (SHAPE_RAISED_COSINE, SHAPE_SMOOTHSTEP)

PACKET_TRUNCATION = 5.0  # pointer packets are cut to zero beyond this many widths

# antisymmetric part of the degree-15 smoothstep: S(x) = x^8 * P(x),
# S(1) = 1 exactly with these integer coefficients
_SMOOTHSTEP_P = np.array(
    [-3432.0, 25740.0, -83160.0, 150150.0, -163800.0, 108108.0, -40040.0, 6435.0])
_SMOOTHSTEP_NORM = 51480.0  # 1 / beta(8, 8)

AREA_TOL = 1e-10


def _smoothstep_cdf(u: np.ndarray) -> np.ndarray:
    # evaluate on [0, 1/2] and mirror; avoids cancellation near u = 1
    lo = np.minimum(u, 1.0 - u)
    s_lo = lo ** 8 * np.polyval(_SMOOTHSTEP_P, lo)
    return np.where(u <= 0.5, s_lo, 1.0 - s_lo)


@dataclass(frozen=True)
class CouplingProfile:
    """Switching function g(tau): smooth, one bump, zero outside its window.

    samples and derivative_samples hold g and g' on the grid, both from
    closed forms. area is the time integral (1 for calibrated windows).
    """

    t_start: float
    duration: float
    shape: str
    grid: Grid1D
    area: float
    samples: np.ndarray
    derivative_samples: np.ndarray

    @property
    def support_end(self) -> float:
        return self.t_start + self.duration

    @property
    def peak(self) -> float:
        """Analytic maximum of g."""
        if self.shape == SHAPE_RAISED_COSINE:
            return 2.0 * self.area / self.duration
        return _SMOOTHSTEP_NORM / 2.0 ** 14 * self.area / self.duration

    def cumulative(self, t):
        """Closed-form integral of g from far before the window up to t."""
        u = np.clip((np.asarray(t, dtype=np.float64) - self.t_start) / self.duration, 0.0, 1.0)
        if self.shape == SHAPE_RAISED_COSINE:
            cdf = u - np.sin(2.0 * np.pi * u) / (2.0 * np.pi)
        else:
            cdf = _smoothstep_cdf(u)
        out = self.area * cdf
        return float(out) if np.isscalar(t) else out


def _sample_window(t_start: float, duration: float, shape: str, area: float,
                   grid: Grid1D) -> tuple[np.ndarray, np.ndarray]:
    u = (grid.points - t_start) / duration
    inside = (u >= 0.0) & (u <= 1.0)
    uc = np.clip(u, 0.0, 1.0)
    if shape == SHAPE_RAISED_COSINE:
        g = (1.0 - np.cos(2.0 * np.pi * uc)) / duration
        dg = (2.0 * np.pi / duration ** 2) * np.sin(2.0 * np.pi * uc)
    else:
        g = (_SMOOTHSTEP_NORM / duration) * uc ** 7 * (1.0 - uc) ** 7
        dg = (7.0 * _SMOOTHSTEP_NORM / duration ** 2) * uc ** 6 * (1.0 - uc) ** 6 * (1.0 - 2.0 * uc)
    return np.where(inside, area * g, 0.0), np.where(inside, area * dg, 0.0)


def _build_profile(t_start: float, duration: float, shape: str, grid: Grid1D,
                   area: float) -> CouplingProfile:
    g, dg = _sample_window(t_start, duration, shape, area, grid)
    return CouplingProfile(t_start=float(t_start), duration=float(duration), shape=shape,
                           grid=grid, area=float(area), samples=g, derivative_samples=dg)


def make_profile(t_start: float, duration: float, shape: str, grid: Grid1D,
                 area: float = 1.0) -> CouplingProfile:
    """Build a coupling window on a clock grid.

    The window must fit with a margin of at least one duration on each
    side and take up at most a quarter of the period, so the periodic
    spectral machinery never sees the bump near the seam. Calibrated
    windows have unit area; other areas are allowed for diagnostics.
    """
    if duration <= 0:
        raise ContractViolationError(f"duration must be > 0, got {duration}")
    if shape not in SHAPES:
        raise ContractViolationError(f"unknown shape {shape!r}, expected one of {SHAPES}")
    left = t_start - grid.origin
    right = (grid.origin + grid.length) - (t_start + duration)
    if left < duration or right < duration:
        raise ProfileSupportError(
            f"window [{t_start}, {t_start + duration}] needs a margin of {duration} "
            f"inside the grid [{grid.origin}, {grid.origin + grid.length}]")
    if duration > 0.25 * grid.length:
        raise ProfileSupportError(
            f"window duration {duration} exceeds a quarter of the grid period {grid.length}")

    profile = _build_profile(t_start, duration, shape, grid, area)
    discrete_area = quadrature(profile.samples, grid)
    if abs(discrete_area - area) > AREA_TOL * max(1.0, abs(area)):
        raise ContractViolationError(
            f"grid resolves the window area only to {abs(discrete_area - area):.2e}; "
            "use a finer grid or a window commensurate with the spacing")
    return profile


@dataclass(frozen=True)
class MeasurementScenario:
    """One energy measurement: box level E, total energy E0, coupling
    window, pointer packet over z, and the clock grid. The optional
    clock packet is the initial clock state for real-time evolution."""

    box_energy: float
    total_energy: float
    profile: CouplingProfile
    pointer_packet: WaveFunction
    tau_grid: Grid1D
    hbar: float = 1.0
    clock_packet: WaveFunction | None = None

    def __post_init__(self):
        if self.profile.grid != self.tau_grid:
            raise ContractViolationError("profile and scenario must share the clock grid")
        if self.hbar <= 0:
            raise ContractViolationError(f"hbar must be > 0, got {self.hbar}")
        if not self.pointer_packet.is_normalized(1e-12):
            raise ContractViolationError("pointer packet must be normalized")
        if self.clock_packet is not None and self.clock_packet.grid != self.tau_grid:
            raise ContractViolationError("clock packet must live on the clock grid")
        z = self.pointer_support_values()
        if z.size:
            reach = self.profile.peak * float(np.max(np.abs(z)))
            if reach >= 1.0:
                raise SingularityError(
                    f"max |g z| = {reach:.6g} over the pointer support reaches 1; "
                    "the clock rate 1 + g z would touch zero")

    def pointer_support_values(self) -> np.ndarray:
        amps = self.pointer_packet.amplitudes
        return self.pointer_packet.grid.points[np.abs(amps) > 0.0]


@dataclass(frozen=True)
class ReadoutReport:
    """Pointer momentum statistics after the measurement window."""

    mean_shift: float
    bias: float
    spread: float
    success: bool
    product: float  # duration * spread


def stationary_solution(scenario: MeasurementScenario, z: float) -> WaveFunction:
    """Steady clock state at fixed pointer value z.

    psi(tau) = (1 + g z)^(-1/2) exp(-i E tau / hbar)
               * exp(i (E0/hbar) * integral to tau of dtau' / (1 + g(tau') z)).
    Not normalized; the inverse square root amplitude is part of the form.
    """
    grid = scenario.tau_grid
    v = 1.0 + z * scenario.profile.samples
    if np.min(v) <= 0.0:
        raise SingularityError(f"1 + g z reaches {np.min(v):.6g} at z = {z}")
    phase_integral = running_antiderivative(1.0 / v, grid)
    tau = grid.points
    hbar = scenario.hbar
    amps = (v ** -0.5
            * np.exp(-1j * scenario.box_energy * tau / hbar)
            * np.exp(1j * scenario.total_energy * phase_integral / hbar))
    return WaveFunction(grid, amps)


def ode_residual(psi: WaveFunction, scenario: MeasurementScenario, z: float) -> float:
    """Max-norm defect of psi against the steady-state equation
    d psi / d tau = [-(z g'/2)/(1+zg) - i E/hbar + i (E0/hbar)/(1+zg)] psi,
    with the left side taken spectrally. Relative to max |psi|."""
    if psi.grid != scenario.tau_grid:
        raise ContractViolationError("psi must live on the scenario clock grid")
    v = 1.0 + z * scenario.profile.samples
    if np.min(v) <= 0.0:
        raise SingularityError(f"1 + g z reaches {np.min(v):.6g} at z = {z}")
    hbar = scenario.hbar
    coeff = (-0.5 * z * scenario.profile.derivative_samples / v
             - 1j * scenario.box_energy / hbar
             + 1j * scenario.total_energy / (hbar * v))
    defect = spectral_derivative(psi).amplitudes - coeff * psi.amplitudes
    return float(np.max(np.abs(defect)) / np.max(np.abs(psi.amplitudes)))


def grid_harmonic_energy(grid: Grid1D, k: int) -> float:
    """Energy whose clock phase winds exactly k times per grid period."""
    return 2.0 * np.pi * k / grid.length


def dilated_period(profile: CouplingProfile, z: float) -> float:
    """Internal time elapsed over one grid period at pointer value z."""
    v = 1.0 + z * profile.samples
    if np.min(v) <= 0.0:
        raise SingularityError(f"1 + g z reaches {np.min(v):.6g} at z = {z}")
    return quadrature(1.0 / v, profile.grid)

def matched_total_energy(profile: CouplingProfile, z: float, target: float) -> float:
    """Nearest total energy whose steady state is periodic on the grid."""
    period = dilated_period(profile, z)
    k = max(1.0, np.round(target * period / (2.0 * np.pi)))
    return 2.0 * np.pi * k / period


def accumulated_clock_shift(profile: CouplingProfile, z) -> np.ndarray | float:
    """Asymptotic clock offset z*kappa(z) = integral of z g / (1 + z g)
    after a full crossing of the window. Computed by grid quadrature."""
    grid = profile.grid
    z_arr = np.atleast_1d(np.asarray(z, dtype=np.float64))
    v = 1.0 + z_arr[:, np.newaxis] * profile.samples[np.newaxis, :]
    if np.min(v) <= 0.0:
        raise SingularityError("1 + g z reaches zero inside the window")
    shift = np.sum(1.0 - 1.0 / v, axis=1) * grid.spacing
    return float(shift[0]) if np.isscalar(z) else shift


def internal_clock_reading(z: float, profile: CouplingProfile, t: float) -> float:
    """Clock reading for pointer value z at external time t, linear response:
    tau(t) = t + z * integral of g up to t. After the window the offset is
    exactly z times the window area."""
    return t + z * profile.cumulative(t)


@dataclass(frozen=True)
class StationaryPhaseState:
    """Post-window pointer factors from the steady-state phases: each
    pointer value z keeps its amplitude and gains exp(-i E0 shift / hbar)
    where shift is the accumulated clock offset at z."""

    scenario: MeasurementScenario
    clock_shifts: np.ndarray  # z*kappa(z) on the pointer grid, 0 off support


@dataclass(frozen=True)
class EvolvedJointState:
    """Clock wavefunctions per pointer grid point after real evolution."""

    scenario: MeasurementScenario
    t_total: float
    slices: np.ndarray  # (n_z, n_tau)


def _refined_profile(profile: CouplingProfile, factor: float) -> CouplingProfile:
    grid = profile.grid
    new = Grid1D(int(grid.n_points * factor), grid.origin, grid.length)
    return _build_profile(profile.t_start, profile.duration, profile.shape, new, profile.area)


def _support_clock_shifts(profile: CouplingProfile, z_grid: Grid1D,
                          support_mask: np.ndarray) -> np.ndarray:
    shifts = np.zeros(z_grid.n_points)
    z_vals = z_grid.points[support_mask]
    if z_vals.size:
        shifts[support_mask] = accumulated_clock_shift(profile, z_vals)
    return shifts


def stationary_phases(scenario: MeasurementScenario,
                      refine_tol: float = 1e-8) -> StationaryPhaseState:
    """Asymptotic readout factors from the exact steady-state phases.

    The clock-shift quadrature is checked against a half-resolution grid
    and the clock grid is doubled (at most twice) until the two agree.
    """
    profile = scenario.profile
    z_grid = scenario.pointer_packet.grid
    mask = np.abs(scenario.pointer_packet.amplitudes) > 0.0
    shifts = _support_clock_shifts(profile, z_grid, mask)
    for _ in range(2):
        coarse = _support_clock_shifts(_refined_profile(profile, 0.5), z_grid, mask)
        if np.max(np.abs(shifts - coarse)) <= refine_tol * (1.0 + np.max(np.abs(shifts))):
            break
        profile = _refined_profile(profile, 2)
        shifts = _support_clock_shifts(profile, z_grid, mask)
    return StationaryPhaseState(scenario=scenario, clock_shifts=shifts)


def evolve_clock_slice(scenario: MeasurementScenario, z: float, initial: WaveFunction,
                       t_total: float, dt: float) -> WaveFunction:
    """Propagate one clock state at fixed pointer value z for t_total."""
    out = _evolve_slices(scenario, np.array([z]), initial.amplitudes[np.newaxis, :],
                         t_total, dt)
    return WaveFunction(scenario.tau_grid, out[0])


def _evolve_slices(scenario: MeasurementScenario, z_values: np.ndarray,
                   initial: np.ndarray, t_total: float, dt: float) -> np.ndarray:
    grid = scenario.tau_grid
    g = scenario.profile.samples[np.newaxis, :]
    dg = scenario.profile.derivative_samples[np.newaxis, :]
    z = z_values[:, np.newaxis]
    speeds = 1.0 + z * g
    if np.min(speeds) <= 0.0:
        raise SingularityError("clock rate 1 + g z reaches zero on a pointer slice")
    dampings = 0.5 * z * dg
    phases = scenario.box_energy * speeds / scenario.hbar
    n_steps = max(1, int(round(t_total / dt)))
    return advect_batch(initial, grid, np.ascontiguousarray(speeds), phases,
                        np.ascontiguousarray(dampings), dt, n_steps)


def evolve_scenario(scenario: MeasurementScenario, t_total: float, dt: float,
                    threads: int = 1) -> EvolvedJointState:
    """Evolve the scenario's clock packet against every pointer grid point.

    The pointer value is conserved, so the joint state stays a family of
    independent clock slices weighted by the pointer packet.
    """
    if scenario.clock_packet is None:
        raise ContractViolationError("scenario carries no clock packet to evolve")
    mean, sigma = _packet_moments(scenario.clock_packet)
    if mean + PACKET_TRUNCATION * sigma > scenario.profile.t_start:
        raise ContractViolationError(
            "clock packet must start fully before the coupling window")
    z_grid = scenario.pointer_packet.grid
    z_values = z_grid.points
    mask = np.abs(scenario.pointer_packet.amplitudes) > 0.0
    init = np.broadcast_to(scenario.clock_packet.amplitudes,
                           (z_grid.n_points, scenario.tau_grid.n_points)).copy()
    slices = np.zeros_like(init)
    idx = np.flatnonzero(mask)
    if threads > 1 and idx.size > 1:
        chunks = np.array_split(idx, min(threads, idx.size))
        def work(chunk):
            return chunk, _evolve_slices(scenario, z_values[chunk], init[chunk], t_total, dt)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for chunk, out in pool.map(work, chunks):
                slices[chunk] = out
    else:
        slices[idx] = _evolve_slices(scenario, z_values[idx], init[idx], t_total, dt)
    return EvolvedJointState(scenario=scenario, t_total=t_total, slices=slices)


def _packet_moments(packet: WaveFunction) -> tuple[float, float]:
    w = np.abs(packet.amplitudes) ** 2 * packet.grid.spacing
    w = w / w.sum()
    x = packet.grid.points
    mean = float(np.sum(w * x))
    var = float(np.sum(w * (x - mean) ** 2))
    return mean, np.sqrt(max(var, 0.0))


def joint_norm(state: EvolvedJointState) -> float:
    """Norm of the full clock-pointer state."""
    z_grid = state.scenario.pointer_packet.grid
    w = np.abs(state.scenario.pointer_packet.amplitudes) ** 2
    slice_norms = np.sum(np.abs(state.slices) ** 2, axis=1) * state.scenario.tau_grid.spacing
    return float(np.sqrt(np.sum(w * slice_norms) * z_grid.spacing))


def slice_energy(scenario: MeasurementScenario, z: float, psi: WaveFunction) -> float:
    """Expectation of the fixed-z generator in psi (needs unit norm at z).

    H_z = -i hbar (1+gz) d/dtau - i hbar (z g'/2) + E (1+gz).
    """
    v = 1.0 + z * scenario.profile.samples
    dpsi = spectral_derivative(psi).amplitudes
    hpsi = (-1j * scenario.hbar * (v * dpsi + 0.5 * z * scenario.profile.derivative_samples
                                   * psi.amplitudes)
            + scenario.box_energy * v * psi.amplitudes)
    val = np.sum(np.conj(psi.amplitudes) * hpsi) * scenario.tau_grid.spacing
    return float(val.real) / psi.norm_squared()


def readout_factors(state) -> np.ndarray:
    """Per-pointer-point complex factor the measurement leaves on the packet.

    For steady-state phases this is the pure dial kick. For an evolved
    state it is the overlap with the undisturbed clock, whose reference
    is exact: at z = 0 the clock rate is 1 everywhere, so the free state
    is the initial packet translated by t_total with phase -E t / hbar.
    """
    if isinstance(state, StationaryPhaseState):
        scenario = state.scenario
        return np.exp(-1j * scenario.total_energy * state.clock_shifts / scenario.hbar)
    if not isinstance(state, EvolvedJointState):
        raise ContractViolationError(f"cannot read out a {type(state).__name__}")
    scenario = state.scenario
    _require_complete(state)
    grid = scenario.tau_grid
    mover = np.exp(-1j * grid.wavenumbers * state.t_total)
    free = np.fft.ifft(np.fft.fft(scenario.clock_packet.amplitudes) * mover) \
        * np.exp(-1j * scenario.box_energy * state.t_total / scenario.hbar)
    return np.sum(np.conj(free)[np.newaxis, :] * state.slices, axis=1) * grid.spacing


def _require_complete(state: EvolvedJointState) -> None:
    scenario = state.scenario
    mean, sigma = _packet_moments(scenario.clock_packet)
    z = scenario.pointer_support_values()
    shifts = accumulated_clock_shift(scenario.profile, z) if z.size else np.zeros(1)
    needed = (scenario.profile.support_end + PACKET_TRUNCATION * sigma - mean) \
        - float(np.min(shifts))
    if state.t_total < needed:
        raise ReadoutTimingError(
            f"readout needs t_total >= {needed:.6g} for every slice to clear "
            f"the window, got {state.t_total:.6g}")


def pointer_readout(state) -> ReadoutReport:
    """Momentum statistics of the pointer after the measurement.

    The conjugate distribution of the re-weighted packet is compared
    with the initial one; the dial reports minus the momentum change,
    which recovers +E0 per unit window area in the ideal regime.
    """
    scenario = state.scenario
    factors = readout_factors(state)
    packet = scenario.pointer_packet
    final = WaveFunction(packet.grid, packet.amplitudes * factors).normalized()
    before = to_conjugate(packet)
    after = to_conjugate(final)
    mean_shift = -(after.mean() - before.mean())
    spread = after.std()
    bias = mean_shift - scenario.total_energy
    success = bool(abs(bias) <= spread)
    return ReadoutReport(mean_shift=mean_shift, bias=bias, spread=spread,
                         success=success,
                         product=scenario.profile.duration * spread)


@dataclass(frozen=True)
class SweepBase:
    """Shared parameters for a duration/accuracy sweep."""

    box_energy: float = 0.0
    total_energy: float = 0.5
    shape: str = SHAPE_RAISED_COSINE
    n_tau: int = 1024
    n_z: int = 256
    pointer_center: float = 0.0
    hbar: float = 1.0


def build_sweep_scenario(base: SweepBase, tau0: float, delta_z: float) -> MeasurementScenario:
    """Scenario for one sweep point: clock period 8 tau0 with the window
    in the middle, pointer grid spanning 8 packet widths either side."""
    tau_grid = Grid1D(base.n_tau, 0.0, 8.0 * tau0)
    profile = make_profile(3.5 * tau0, tau0, base.shape, tau_grid)
    z_grid = Grid1D(base.n_z, base.pointer_center - 8.0 * delta_z, 16.0 * delta_z)
    packet = gaussian_packet(z_grid, base.pointer_center, delta_z,
                             truncate=PACKET_TRUNCATION)
    return MeasurementScenario(box_energy=base.box_energy, total_energy=base.total_energy,
                               profile=profile, pointer_packet=packet, tau_grid=tau_grid,
                               hbar=base.hbar)


def evaluate_sweep_point(base: SweepBase, tau0: float, delta_z: float,
                         success_rule=None) -> dict:
    """Readout metrics at one (tau0, delta_z) point; singular points come
    back flagged invalid with NaN metrics instead of raising."""
    if success_rule is None:
        success_rule = default_success_rule
    nan = float("nan")
    try:
        scenario = build_sweep_scenario(base, tau0, delta_z)
        report = pointer_readout(stationary_phases(scenario))
    except SingularityError:
        return {"valid": False, "success": False, "mean_shift": nan, "bias": nan,
                "spread": nan, "clock_spread": nan, "product_duration_spread": nan,
                "product_backreaction_spread": nan}
    _, sigma_z = _packet_moments(scenario.pointer_packet)
    clock_spread = scenario.profile.area * sigma_z
    success = success_rule(report.bias, report.spread)
    return {"valid": True, "success": bool(success), "mean_shift": report.mean_shift,
            "bias": report.bias, "spread": report.spread, "clock_spread": clock_spread,
            "product_duration_spread": tau0 * report.spread,
            "product_backreaction_spread": clock_spread * report.spread}


def default_success_rule(bias: float, spread: float) -> bool:
    return abs(bias) <= spread


def duration_sweep(base: SweepBase, tau0_values, delta_z_values,
                   success_rule=default_success_rule, threads: int = 1) -> list[SweepRecord]:
    """Evaluate the readout over a (tau0, delta_z) grid.

    Records come back in tau0-major, delta_z-minor order whatever the
    thread count. Singular pairs are flagged invalid, never dropped.
    """
    tau0_values = [float(t) for t in tau0_values]
    delta_z_values = [float(d) for d in delta_z_values]
    pairs = [(i, j, t, d) for i, t in enumerate(tau0_values)
             for j, d in enumerate(delta_z_values)]

    def work(pair):
        i, j, tau0, dz = pair
        return i, j, tau0, dz, evaluate_sweep_point(base, tau0, dz, success_rule)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, pairs))
    else:
        results = [work(p) for p in pairs]

    records = []
    for i, j, tau0, dz, metrics in sorted(results, key=lambda r: (r[0], r[1])):
        valid = metrics.pop("valid")
        records.append(SweepRecord(axis_values=(tau0, dz), grid_index=(i, j),
                                   metrics=metrics, valid=valid))
    return records


@dataclass(frozen=True)
class FrontierPoint:
    delta_z: float
    tau0_cross: float
    spread: float
    product: float  # tau0_cross * spread at the boundary


def fit_frontier(records: list[SweepRecord]) -> list[FrontierPoint]:
    """Success/failure boundary of a duration sweep, one point per
    delta_z column that shows a transition. The crossing duration is the
    geometric mean of the bracketing tau0 values; the accuracy at the
    boundary is read from the successful side."""
    columns: dict[float, list[SweepRecord]] = {}
    for rec in records:
        columns.setdefault(rec.axis_values[1], []).append(rec)
    frontier = []
    for delta_z, rows in sorted(columns.items()):
        rows = sorted(rows, key=lambda r: r.axis_values[0])
        flags = [bool(r.valid and r.metrics["success"]) for r in rows]
        crossings = [k for k in range(len(rows) - 1) if flags[k] != flags[k + 1]]
        if len(crossings) != 1:
            continue
        k = crossings[0]
        lo, hi = rows[k], rows[k + 1]
        winner = hi if flags[k + 1] else lo
        tau0_cross = float(np.sqrt(lo.axis_values[0] * hi.axis_values[0]))
        spread = winner.metrics["spread"]
        frontier.append(FrontierPoint(delta_z=delta_z, tau0_cross=tau0_cross,
                                      spread=spread, product=tau0_cross * spread))
    return frontier
