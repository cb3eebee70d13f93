"""Measuring a disc's angular momentum with a sliding test particle.

The particle rides a co-rotating radial track; its centrifugal
acceleration reads off omega. The particle's radial position spread
feeds back on the disc: angular momentum conservation ties a shift of
the moment of inertia to a shift of omega, so the orientation angle
diffuses while the readout sharpens, and the angle-action product is
pinned to the radial packet's action.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError

INERTIA_RATIO_LIMIT = 1e-3
MIN_SAMPLES = 1000
_CHUNK = 1 << 20  # fixed so chunked accumulation is reproducible


@dataclass(frozen=True)
class DiscExperiment:
    """Disc of inertia I spinning at omega, probed for time T by a test
    particle of mass m on a radial track at radius r."""

    I: float
    omega: float
    m: float
    r: float
    T: float
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("I", "omega", "m", "r", "T", "hbar"):
            if getattr(self, name) <= 0:
                raise ContractViolationError(f"{name} must be > 0")
        ratio = self.m * self.r ** 2 / self.I
        if ratio > INERTIA_RATIO_LIMIT:
            raise ContractViolationError(
                f"test particle too heavy: m r^2 / I = {ratio:.3g} "
                f"violates m r^2 / I <= {INERTIA_RATIO_LIMIT}")


@dataclass(frozen=True)
class AngularReport:
    """Orientation spread, resolvable angular momentum, their product."""

    delta_theta: float
    delta_l: float
    product: float

    def __post_init__(self):
        if self.product < 0:
            raise ContractViolationError("product must be >= 0")


def back_reaction_spread(exp: DiscExperiment, delta_r: float) -> tuple[float, float]:
    """Angular velocity and orientation spreads induced by a radial
    position spread: delta_I = 2 m r delta_r shifts omega by
    (omega/I) delta_I at fixed angular momentum, and the angle drifts
    for the full duration."""
    if delta_r < 0:
        raise ContractViolationError(f"delta_r must be >= 0, got {delta_r}")
    delta_omega = 2.0 * exp.m * exp.omega * exp.r * delta_r / exp.I
    return delta_omega, exp.T * delta_omega


def resolvable_accuracy(exp: DiscExperiment, delta_p: float) -> float:
    """Smallest resolvable angular momentum step for a pointer with
    momentum spread delta_p: the centrifugal impulse difference
    2 m omega r T delta_omega must exceed delta_p, and delta_L =
    I delta_omega at the threshold."""
    if delta_p <= 0:
        raise ContractViolationError(f"delta_p must be > 0, got {delta_p}")
    return exp.I * delta_p / (2.0 * exp.m * exp.omega * exp.r * exp.T)


def angular_product(exp: DiscExperiment, delta_r: float, delta_p: float) -> AngularReport:
    """Combine back reaction and resolvable accuracy; everything about
    the disc cancels and the product is exactly delta_r * delta_p.
    The cancellation is verified numerically."""
    if delta_r <= 0 or delta_p <= 0:
        raise ContractViolationError("delta_r and delta_p must be > 0")
    _, delta_theta = back_reaction_spread(exp, delta_r)
    delta_l = resolvable_accuracy(exp, delta_p)
    product = delta_theta * delta_l
    reference = delta_r * delta_p
    if abs(product / reference - 1.0) > 1e-12:
        raise ContractViolationError(
            f"angle-action product deviates from delta_r*delta_p by "
            f"{abs(product / reference - 1.0):.3e}")
    return AngularReport(delta_theta=delta_theta, delta_l=delta_l, product=product)


@dataclass(frozen=True)
class DiscStatistics:
    """Monte Carlo summary of one angular momentum measurement."""

    n_samples: int
    omega_spread: float
    theta_spread: float
    delta_l: float
    product: float  # theta_spread * delta_l


def monte_carlo_disc(exp: DiscExperiment, delta_r: float, n_samples: int,
                     seed: int) -> DiscStatistics:
    """Sample the particle's radial position and momentum, recompute
    omega per sample from exact angular momentum conservation, and
    report the orientation spread together with the threshold-resolvable
    angular momentum for the sampled momentum spread.

    Samples stream through fixed-size chunks with running moments, so
    large ensembles stay in constant memory and results depend only on
    the seed.
    """
    if delta_r <= 0:
        raise ContractViolationError(f"delta_r must be > 0, got {delta_r}")
    if n_samples < MIN_SAMPLES:
        raise ContractViolationError(
            f"need at least {MIN_SAMPLES} samples, got {n_samples}")
    total_l = (exp.I + exp.m * exp.r ** 2) * exp.omega
    rng = np.random.default_rng(seed)
    sigma_p = exp.hbar / (2.0 * delta_r)
    count = 0
    s_w = s_ww = 0.0   # moments of omega_i - omega
    s_p = s_pp = 0.0   # moments of p_i
    while count < n_samples:
        size = min(_CHUNK, n_samples - count)
        r_i = rng.normal(exp.r, delta_r, size)
        p_i = rng.normal(0.0, sigma_p, size)
        d_omega = total_l / (exp.I + exp.m * r_i ** 2) - exp.omega
        s_w += float(np.sum(d_omega))
        s_ww += float(np.sum(d_omega ** 2))
        s_p += float(np.sum(p_i))
        s_pp += float(np.sum(p_i ** 2))
        count += size
    omega_spread = float(np.sqrt(max(s_ww / count - (s_w / count) ** 2, 0.0)))
    p_spread = float(np.sqrt(max(s_pp / count - (s_p / count) ** 2, 0.0)))
    theta_spread = exp.T * omega_spread
    delta_l = resolvable_accuracy(exp, p_spread)
    return DiscStatistics(n_samples=n_samples, omega_spread=omega_spread,
                          theta_spread=theta_spread, delta_l=delta_l,
                          product=theta_spread * delta_l)
