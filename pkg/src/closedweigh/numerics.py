"""Numerical substrate: periodic grids, wavefunctions, spectral calculus.

Everything here works on uniform periodic grids. Derivatives, integrals
and conjugate-variable (momentum) representations are all spectral, so
they are exact for band-limited data. Units are hbar = 1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolationError, NumericalContractError, StabilityError

NORMALIZATION_TOL = 1e-12
NORM_DRIFT_TOL = 1e-8

# spectral modes at or above this fraction of the Nyquist wavenumber are
# discarded during time stepping; keeps the RK4 imaginary-axis stability
# bound dt*v*k < 2*sqrt(2) satisfied whenever dt*v < spacing
FILTER_FRACTION = 0.9


@dataclass(frozen=True)
class Grid1D:
    """Uniform periodic grid: point n_points wraps back to point 0."""

    n_points: int
    origin: float
    length: float

    def __post_init__(self):
        if self.n_points < 8 or self.n_points % 2 != 0:
            raise ContractViolationError(
                f"grid needs an even point count >= 8, got {self.n_points}")
        if not self.length > 0:
            raise ContractViolationError(f"grid length must be > 0, got {self.length}")

    @property
    def spacing(self) -> float:
        return self.length / self.n_points

    @property
    def points(self) -> np.ndarray:
        return self.origin + self.spacing * np.arange(self.n_points)

    @property
    def wavenumbers(self) -> np.ndarray:
        """Conjugate values in FFT ordering (hbar = 1, so also momenta)."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.spacing)

    @property
    def conjugate_spacing(self) -> float:
        return 2.0 * np.pi / self.length


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class WaveFunction:
    """Complex amplitudes on a Grid1D with the L2 inner product."""

    grid: Grid1D
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen_array(self.amplitudes, np.complex128)
        if amps.shape != (self.grid.n_points,):
            raise ContractViolationError(
                f"amplitude count {amps.shape} does not match grid size {self.grid.n_points}")
        object.__setattr__(self, "amplitudes", amps)

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.grid.spacing)

    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared()))

    def inner(self, other: "WaveFunction") -> complex:
        if other.grid != self.grid:
            raise ContractViolationError("inner product needs a shared grid")
        return complex(np.sum(np.conj(self.amplitudes) * other.amplitudes) * self.grid.spacing)

    def is_normalized(self, tol: float = NORMALIZATION_TOL) -> bool:
        return abs(self.norm_squared() - 1.0) <= tol

    def normalized(self) -> "WaveFunction":
        n = self.norm()
        if n == 0.0:
            raise ContractViolationError("cannot normalize the zero function")
        return WaveFunction(self.grid, self.amplitudes / n)


def fidelity(a: WaveFunction, b: WaveFunction) -> float:
    """Squared normalized overlap |<a|b>|^2 / (|a|^2 |b|^2)."""
    return abs(a.inner(b)) ** 2 / (a.norm_squared() * b.norm_squared())


@dataclass(frozen=True)
class Spectrum:
    """Distribution over the conjugate (momentum) variable.

    conjugate_values are sorted ascending. weights integrate to one
    against conjugate_spacing when built from a normalized wavefunction.
    amplitudes (same ordering) are kept so the transform can be inverted.
    """

    grid: Grid1D
    conjugate_values: np.ndarray
    weights: np.ndarray
    amplitudes: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "conjugate_values",
                           _frozen_array(self.conjugate_values, np.float64))
        object.__setattr__(self, "weights", _frozen_array(self.weights, np.float64))
        if self.amplitudes is not None:
            object.__setattr__(self, "amplitudes",
                               _frozen_array(self.amplitudes, np.complex128))

    def total(self) -> float:
        return float(np.sum(self.weights) * self.grid.conjugate_spacing)

    def mean(self) -> float:
        return float(np.sum(self.weights * self.conjugate_values)
                     * self.grid.conjugate_spacing / self.total())

    def variance(self) -> float:
        m = self.mean()
        return float(np.sum(self.weights * (self.conjugate_values - m) ** 2)
                     * self.grid.conjugate_spacing / self.total())

    def std(self) -> float:
        return float(np.sqrt(max(self.variance(), 0.0)))


def spectral_derivative(f: WaveFunction) -> WaveFunction:
    """d/dx via the conjugate representation; exact for band-limited f.

    The Nyquist mode is dropped from the derivative multiplier, which
    keeps the operator exactly anti-Hermitian on the even-sized grid.
    """
    n = f.grid.n_points
    mult = 1j * f.grid.wavenumbers
    mult[n // 2] = 0.0
    return WaveFunction(f.grid, np.fft.ifft(mult * np.fft.fft(f.amplitudes)))


def quadrature(values, grid: Grid1D):
    """Periodic-grid integral: sum(values) * spacing.

    Exact for trigonometric polynomials below the Nyquist limit.
    """
    arr = np.asarray(values)
    if arr.shape != (grid.n_points,):
        raise ContractViolationError(
            f"value count {arr.shape} does not match grid size {grid.n_points}")
    total = arr.sum() * grid.spacing
    return complex(total) if np.iscomplexobj(arr) else float(total)


def running_antiderivative(values, grid: Grid1D) -> np.ndarray:
    """F(x_j) = integral from the grid origin to x_j of the band-limited
    interpolant of values. The mean contributes a linear ramp, the rest
    is integrated mode by mode."""
    arr = np.asarray(values)
    if arr.shape != (grid.n_points,):
        raise ContractViolationError(
            f"value count {arr.shape} does not match grid size {grid.n_points}")
    n = grid.n_points
    vh = np.fft.fft(arr)
    mean = vh[0] / n
    inv = np.zeros(n, dtype=np.complex128)
    k = grid.wavenumbers
    inv[1:] = 1.0 / (1j * k[1:])
    inv[n // 2] = 0.0
    periodic = np.fft.ifft(vh * inv)
    out = mean * (grid.points - grid.origin) + (periodic - periodic[0])
    return out if np.iscomplexobj(arr) else out.real


def to_conjugate(f: WaveFunction) -> Spectrum:
    """Probability distribution over the conjugate variable.

    Parseval holds exactly for the discrete pair, so the weights sum to
    one against the conjugate spacing. Requires a normalized input.
    """
    if not f.is_normalized():
        raise ContractViolationError(
            f"to_conjugate needs a normalized wavefunction, norm^2 = {f.norm_squared():.3e}")
    p = f.grid.wavenumbers
    phases = np.exp(-1j * p * f.grid.origin)
    amps = f.grid.spacing / np.sqrt(2.0 * np.pi) * phases * np.fft.fft(f.amplitudes)
    order = np.argsort(p)
    return Spectrum(grid=f.grid, conjugate_values=p[order],
                    weights=np.abs(amps[order]) ** 2, amplitudes=amps[order])


def from_conjugate(spectrum: Spectrum) -> WaveFunction:
    """Invert to_conjugate. Needs the complex amplitudes."""
    if spectrum.amplitudes is None:
        raise ContractViolationError("spectrum carries no amplitudes to invert")
    grid = spectrum.grid
    p = grid.wavenumbers
    order = np.argsort(p)
    amps_fft_order = np.empty(grid.n_points, dtype=np.complex128)
    amps_fft_order[order] = spectrum.amplitudes
    phases = np.exp(1j * p * grid.origin)
    psi = np.fft.ifft(amps_fft_order * phases) * np.sqrt(2.0 * np.pi) / grid.spacing
    return WaveFunction(grid, psi)


def gaussian_packet(grid: Grid1D, center: float, width: float,
                    momentum: float = 0.0, truncate: float | None = None) -> WaveFunction:
    """Normalized Gaussian of position spread `width`, optionally cut to
    zero beyond `truncate` widths from the center."""
    if width <= 0:
        raise ContractViolationError(f"packet width must be > 0, got {width}")
    x = grid.points
    amps = np.exp(-((x - center) ** 2) / (4.0 * width ** 2) + 1j * momentum * x)
    if truncate is not None:
        amps = np.where(np.abs(x - center) <= truncate * width, amps, 0.0)
    return WaveFunction(grid, amps).normalized()


def _profile_samples(profile, grid: Grid1D) -> np.ndarray:
    arr = np.asarray(profile(grid.points) if callable(profile) else profile, dtype=np.float64)
    if arr.shape != (grid.n_points,):
        raise ContractViolationError(
            f"profile sample count {arr.shape} does not match grid size {grid.n_points}")
    return arr


def advect_batch(amplitudes: np.ndarray, grid: Grid1D, speeds: np.ndarray,
                 phases: np.ndarray, dampings: np.ndarray,
                 dt: float, n_steps: int) -> np.ndarray:
    """RK4 time stepping of d/dt psi = -v d/dx psi - d psi - i phi psi
    for a batch of rows sharing one grid, each row with its own profiles.

    All arrays are (n_rows, n_points). Modes at or above FILTER_FRACTION
    of Nyquist are zeroed after every step. Norm drift is checked at the
    end; rows are expected to use damping = v'/2 (anti-Hermitian case).
    """
    vmax = float(np.max(np.abs(speeds)))
    if not dt * vmax < grid.spacing:
        raise StabilityError(
            f"dt*max|speed| = {dt * vmax:.6g} must stay below the grid spacing "
            f"{grid.spacing:.6g}; shrink dt or refine the grid")

    n = grid.n_points
    ik = 1j * grid.wavenumbers
    ik[n // 2] = 0.0
    keep = np.abs(grid.wavenumbers) < FILTER_FRACTION * np.pi / grid.spacing

    decay_phase = dampings + 1j * phases

    def rhs(psi):
        dpsi = np.fft.ifft(ik * np.fft.fft(psi, axis=-1), axis=-1)
        return -speeds * dpsi - decay_phase * psi

    psi = np.array(amplitudes, dtype=np.complex128, copy=True)
    initial_norms = np.sum(np.abs(psi) ** 2, axis=-1) * grid.spacing
    for _ in range(n_steps):
        k1 = rhs(psi)
        k2 = rhs(psi + 0.5 * dt * k1)
        k3 = rhs(psi + 0.5 * dt * k2)
        k4 = rhs(psi + dt * k3)
        psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        psi = np.fft.ifft(np.where(keep, np.fft.fft(psi, axis=-1), 0.0), axis=-1)

    final_norms = np.sum(np.abs(psi) ** 2, axis=-1) * grid.spacing
    drift = np.max(np.abs(final_norms - initial_norms) / initial_norms)
    if drift > NORM_DRIFT_TOL:
        raise NumericalContractError(
            f"norm drift {drift:.3e} exceeds the {NORM_DRIFT_TOL:.0e} contract")
    return psi


def propagate_advection(f: WaveFunction, speed_profile, phase_profile,
                        damping_profile, dt: float, n_steps: int) -> WaveFunction:
    """Norm-preserving integration of
    d/dt psi = -speed(x) d/dx psi - damping(x) psi - i phase(x) psi.

    With damping = speed'/2 the generator is anti-Hermitian; the final
    norm is checked against the initial one to 1e-8 relative.
    """
    grid = f.grid
    v = _profile_samples(speed_profile, grid)
    phi = _profile_samples(phase_profile, grid)
    d = _profile_samples(damping_profile, grid)
    out = advect_batch(f.amplitudes[np.newaxis, :], grid,
                       v[np.newaxis, :], phi[np.newaxis, :], d[np.newaxis, :],
                       dt, n_steps)
    return WaveFunction(grid, out[0])
