"""Weighing a shell by timing a test shell's ballistic return.

A light test shell is launched outward from the surface of a heavy
shell, decelerates in the constant field GM/R^2, and its return time
gives the mass. Quantum launch-point and momentum spreads propagate to
a mass spread and to a spread of the clock dilation accumulated from
the test shell's own potential, whose product is bounded by the action
of the launch packet.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError

MASS_RATIO_LIMIT = 1e-3
EXCURSION_LIMIT = 1e-2
WEAK_FIELD_LIMIT = 1e-3
MIN_SAMPLES = 1000


@dataclass(frozen=True)
class ShellExperiment:
    """Heavy shell of mass M and radius R weighed with a test shell m
    launched outward at v0. Constants are configurable; the default set
    is dimensionless G = c = hbar = 1."""

    M: float
    R: float
    m: float
    v0: float
    G: float = 1.0
    c: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if min(self.M, self.R, self.m) <= 0 or self.v0 < 0:
            raise ContractViolationError("M, R, m must be > 0 and v0 >= 0")
        if min(self.G, self.c, self.hbar) <= 0:
            raise ContractViolationError("G, c, hbar must be > 0")
        if self.m / self.M > MASS_RATIO_LIMIT:
            raise ContractViolationError(
                f"test shell too heavy: m/M = {self.m / self.M:.3g} "
                f"violates m/M <= {MASS_RATIO_LIMIT}")
        if self.excursion / self.R > EXCURSION_LIMIT:
            raise ContractViolationError(
                f"excursion too large: z_max/R = {self.excursion / self.R:.3g} "
                f"violates z_max/R <= {EXCURSION_LIMIT}")
        phi = self.G * self.M / (self.R * self.c ** 2)
        if phi > WEAK_FIELD_LIMIT:
            raise ContractViolationError(
                f"field too strong: GM/(R c^2) = {phi:.3g} "
                f"violates GM/(R c^2) <= {WEAK_FIELD_LIMIT}")

    @property
    def surface_gravity(self) -> float:
        return self.G * self.M / self.R ** 2

    @property
    def excursion(self) -> float:
        """Peak height z_max = v0^2 R^2 / (2 G M) above the surface."""
        return self.v0 ** 2 / (2.0 * self.surface_gravity)


@dataclass(frozen=True)
class PhaseSample:
    """One draw of the test shell's launch point and momentum offset."""

    z0: float
    p0: float
    weight: float


def draw_phase_samples(delta_z: float, n_samples: int, seed: int,
                       hbar: float = 1.0) -> list[PhaseSample]:
    """Minimum-uncertainty launch ensemble: independent Gaussians with
    position spread delta_z and momentum spread hbar/(2 delta_z)."""
    z0, p0 = _draw_arrays(delta_z, n_samples, seed, hbar)
    w = 1.0 / n_samples
    return [PhaseSample(z0=float(z), p0=float(p), weight=w) for z, p in zip(z0, p0)]


def _draw_arrays(delta_z: float, n_samples: int, seed: int,
                 hbar: float) -> tuple[np.ndarray, np.ndarray]:
    if delta_z <= 0:
        raise ContractViolationError(f"delta_z must be > 0, got {delta_z}")
    if n_samples < MIN_SAMPLES:
        raise ContractViolationError(
            f"need at least {MIN_SAMPLES} samples, got {n_samples}")
    rng = np.random.default_rng(seed)
    z0 = rng.normal(0.0, delta_z, n_samples)
    p0 = rng.normal(0.0, hbar / (2.0 * delta_z), n_samples)
    return z0, p0


def return_time(exp: ShellExperiment) -> float:
    """Ballistic return time 2 R^2 v0 / (G M) in the constant field."""
    return 2.0 * exp.R ** 2 * exp.v0 / (exp.G * exp.M)


def infer_mass(tau_obs: float, exp: ShellExperiment) -> float:
    """Mass read off an observed return time: M_est = 2 R^2 v0 / (G tau)."""
    if tau_obs <= 0:
        raise ContractViolationError(
            f"observed return time must be > 0, got {tau_obs}")
    return 2.0 * exp.R ** 2 * exp.v0 / (exp.G * tau_obs)


def dilation_spread(exp: ShellExperiment, delta_z: float, tau: float) -> float:
    """Clock dilation spread from the test shell's differential potential:
    delta_tau = tau * (G m / R^2) * delta_z / c^2."""
    if delta_z < 0 or tau < 0:
        raise ContractViolationError("delta_z and tau must be >= 0")
    return tau * exp.G * exp.m * delta_z / (exp.R ** 2 * exp.c ** 2)


def impulse_threshold(exp: ShellExperiment, delta_m: float, tau: float) -> float:
    """Momentum imparted by the force difference between masses M and
    M + delta_m over time tau: (G m delta_m / R^2) tau. A mass step is
    resolvable only when this exceeds the launch momentum spread."""
    return exp.G * exp.m * delta_m * tau / exp.R ** 2


def product_identity(exp: ShellExperiment, delta_z: float, delta_p: float,
                     tau: float) -> float:
    """Action product delta_tau * delta_M * c^2 at the impulse threshold.

    The threshold mass step delta_M = delta_p R^2 / (G m tau) and the
    dilation spread combine so every experiment parameter cancels,
    leaving exactly delta_z * delta_p. The reduction is verified here.
    """
    if delta_z <= 0 or delta_p <= 0:
        raise ContractViolationError("delta_z and delta_p must be > 0")
    if tau <= 0:
        raise ContractViolationError(f"tau must be > 0, got {tau}")
    delta_m = delta_p * exp.R ** 2 / (exp.G * exp.m * tau)
    product = dilation_spread(exp, delta_z, tau) * delta_m * exp.c ** 2
    reference = delta_z * delta_p
    if abs(product / reference - 1.0) > 1e-12:
        raise ContractViolationError(
            f"action product deviates from delta_z*delta_p by "
            f"{abs(product / reference - 1.0):.3e}")
    return product


@dataclass(frozen=True)
class WeighingStatistics:
    """Monte Carlo summary of one weighing run."""

    n_samples: int
    return_time_mean: float
    mass_mean: float
    mass_spread: float
    dilation_spread: float
    product: float  # mass_spread * dilation_spread * c^2


def monte_carlo_weighing(exp: ShellExperiment, delta_z: float, n_samples: int,
                         seed: int) -> WeighingStatistics:
    """Sample launches, time each return, infer each mass, accumulate
    each flight's clock dilation, and report the spreads.

    Each sample starts at height z0 with speed v0 + p0/m and returns to
    its launch height after t = 2(v0 + p0/m)/g_s exactly (constant
    field). The dilation offset integrates the test shell's potential
    (G m / R^2) z(t) / c^2 along the flight; the common M-field dilation
    cancels in spreads. The observer converts times to masses with the
    nominal v0.
    """
    z0, p0 = _draw_arrays(delta_z, n_samples, seed, exp.hbar)
    g_s = exp.surface_gravity
    v = exp.v0 + p0 / exp.m
    if np.min(v) <= 0:
        raise ContractViolationError(
            "momentum spread drives some launches inward; "
            "increase delta_z, m, or v0")
    t_flight = 2.0 * v / g_s
    masses = 2.0 * exp.R ** 2 * exp.v0 / (exp.G * t_flight)
    # integral of z(t) = z0 + v t - g t^2/2 over a full flight
    path_area = z0 * t_flight + (2.0 / 3.0) * v ** 3 / g_s ** 2
    dilations = exp.G * exp.m * path_area / (exp.R ** 2 * exp.c ** 2)
    mass_spread = float(np.std(masses))
    dil_spread = float(np.std(dilations))
    return WeighingStatistics(
        n_samples=n_samples,
        return_time_mean=float(np.mean(t_flight)),
        mass_mean=float(np.mean(masses)),
        mass_spread=mass_spread,
        dilation_spread=dil_spread,
        product=mass_spread * dil_spread * exp.c ** 2)
