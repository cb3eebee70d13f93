"""Grid, wavefunction, transform, and propagation primitives."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from closedweigh.errors import (ContractViolationError, NumericalContractError,
                                StabilityError)
from closedweigh.numerics import (Grid1D, Spectrum, WaveFunction, advect_batch,
                                  fidelity, gaussian_packet, propagate_advection,
                                  quadrature, running_antiderivative,
                                  spectral_derivative, to_conjugate,
                                  from_conjugate)
from oracles import dft_derivative

_TOL = 1e-12


@st.composite
def grids(draw):
    n = draw(st.sampled_from([8, 16, 32, 64, 128]))
    origin = draw(st.floats(-10.0, 10.0))
    length = draw(st.floats(0.5, 50.0))
    return Grid1D(n, origin, length)


def _band_limited(draw, grid, st_module):
    x = 2.0 * np.pi * (grid.points - grid.origin) / grid.length
    values = np.zeros(grid.n_points, dtype=complex)
    for _ in range(draw(st_module.integers(1, 3))):
        k = draw(st_module.integers(-2, 2))
        amp = draw(st_module.complex_numbers(max_magnitude=2.0, allow_nan=False,
                                             allow_infinity=False))
        values += amp * np.exp(1j * k * x)
    return values


@st.composite
def field_pairs(draw):
    """A grid with two band-limited random periodic fields on it, so
    spectral operations are exact for them."""
    grid = draw(grids())
    return grid, _band_limited(draw, grid, st), _band_limited(draw, grid, st)


class TestGrid:
    def test_basic_properties(self):
        grid = Grid1D(16, -2.0, 8.0)
        assert grid.spacing == 0.5
        assert grid.points[0] == -2.0
        assert grid.points[-1] == pytest.approx(5.5)  # half-open interval
        assert grid.conjugate_spacing == pytest.approx(2 * np.pi / 8.0)

    def test_rejects_bad_sizes(self):
        with pytest.raises(ContractViolationError):
            Grid1D(7, 0.0, 1.0)
        with pytest.raises(ContractViolationError):
            Grid1D(6, 0.0, 1.0)
        with pytest.raises(ContractViolationError):
            Grid1D(16, 0.0, -1.0)

    def test_wavenumbers_cover_nyquist(self):
        grid = Grid1D(8, 0.0, 4.0)
        assert np.max(np.abs(grid.wavenumbers)) == pytest.approx(np.pi / grid.spacing)


class TestWaveFunction:
    def test_norm_and_inner(self):
        grid = Grid1D(64, 0.0, 10.0)
        psi = gaussian_packet(grid, 5.0, 0.8)
        assert psi.norm() == pytest.approx(1.0, abs=_TOL)
        assert psi.inner(psi).real == pytest.approx(1.0, abs=_TOL)

    def test_amplitudes_are_copied(self):
        grid = Grid1D(8, 0.0, 1.0)
        raw = np.ones(8, dtype=complex)
        psi = WaveFunction(grid, raw)
        raw[0] = 5.0
        assert psi.amplitudes[0] == 1.0
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 3.0  # read-only view

    def test_normalized(self):
        grid = Grid1D(16, 0.0, 2.0)
        psi = WaveFunction(grid, 3.0 * np.ones(16, dtype=complex))
        assert psi.normalized().norm() == pytest.approx(1.0, abs=_TOL)

    def test_fidelity_phase_invariant(self):
        grid = Grid1D(64, 0.0, 10.0)
        psi = gaussian_packet(grid, 5.0, 0.8)
        rotated = WaveFunction(grid, np.exp(0.7j) * psi.amplitudes)
        assert fidelity(psi, rotated) == pytest.approx(1.0, abs=_TOL)


class TestSpectralDerivative:
    def test_matches_direct_dft(self):
        # independent O(n^2) oracle on a random band-limited field
        rng = np.random.default_rng(3)
        grid = Grid1D(32, -1.0, 6.0)
        x = 2 * np.pi * (grid.points - grid.origin) / grid.length
        values = (rng.normal(size=3) @ np.array([np.cos(x), np.sin(2 * x), np.cos(3 * x)])
                  + 0.5j * np.sin(x))
        psi = WaveFunction(grid, values.astype(complex))
        expected = dft_derivative(values.astype(complex), grid.length)
        assert np.max(np.abs(spectral_derivative(psi).amplitudes - expected)) < 1e-10

    def test_harmonic_exact(self):
        grid = Grid1D(128, 0.0, 2 * np.pi)
        psi = WaveFunction(grid, np.exp(3j * grid.points))
        deriv = spectral_derivative(psi).amplitudes
        assert np.max(np.abs(deriv - 3j * psi.amplitudes)) < 1e-12


class TestQuadratureAndAntiderivative:
    @given(field_pairs())
    @settings(max_examples=50, deadline=None)
    def test_quadrature_linear(self, pair):
        grid, fa, fb = pair
        lhs = quadrature(2.0 * fa.real + 3.0 * fb.real, grid)
        rhs = 2.0 * quadrature(fa.real, grid) + 3.0 * quadrature(fb.real, grid)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    @given(field_pairs())
    @settings(max_examples=50, deadline=None)
    def test_antiderivative_inverts_derivative(self, pair):
        grid, values, _ = pair
        # subtract the mean so the antiderivative is itself periodic and
        # the spectral derivative recovers the field exactly
        field = values.real - quadrature(values.real, grid) / grid.length
        ramp = running_antiderivative(field, grid)
        recovered = spectral_derivative(WaveFunction(grid, ramp.astype(complex)))
        scale = max(1.0, np.max(np.abs(field)))
        assert np.max(np.abs(recovered.amplitudes.real - field)) / scale < 1e-9

    def test_antiderivative_of_cosine(self):
        grid = Grid1D(256, 0.0, 2 * np.pi)
        ramp = running_antiderivative(np.cos(grid.points), grid)
        assert np.max(np.abs(ramp - np.sin(grid.points))) < 1e-12

    def test_quadrature_shape_check(self):
        grid = Grid1D(16, 0.0, 1.0)
        with pytest.raises(ContractViolationError):
            quadrature(np.ones(8), grid)


class TestConjugateTransform:
    def test_parseval_and_roundtrip(self):
        grid = Grid1D(256, -8.0, 16.0)
        psi = gaussian_packet(grid, 0.0, 1.0, momentum=2.0)
        spec = to_conjugate(psi)
        assert spec.total() == pytest.approx(1.0, abs=1e-12)
        back = from_conjugate(spec)
        assert np.max(np.abs(back.amplitudes - psi.amplitudes)) < 1e-12

    def test_gaussian_moments(self):
        # sigma_x = 0.8 => sigma_p = 1/(2*0.8) = 0.625, mean p = 2.0
        grid = Grid1D(512, -10.0, 20.0)
        psi = gaussian_packet(grid, 0.0, 0.8, momentum=2.0)
        spec = to_conjugate(psi)
        assert spec.mean() == pytest.approx(2.0, abs=1e-9)
        assert spec.std() == pytest.approx(0.625, rel=1e-9)

    def test_requires_normalized(self):
        grid = Grid1D(32, 0.0, 4.0)
        psi = WaveFunction(grid, 2.0 * np.ones(32, dtype=complex))
        with pytest.raises(ContractViolationError):
            to_conjugate(psi)

    @given(st.floats(-3.0, 3.0), st.floats(0.3, 1.5))
    @settings(max_examples=30, deadline=None)
    def test_boost_shifts_mean(self, momentum, width):
        grid = Grid1D(256, -12.0, 24.0)
        psi = gaussian_packet(grid, 0.0, width, momentum=momentum)
        assert to_conjugate(psi).mean() == pytest.approx(momentum, abs=1e-8)


class TestSpectrumStatistics:
    def test_weighted_moments(self):
        grid = Grid1D(8, 0.0, 8.0)
        values = np.array([-1.0, 0.0, 1.0])
        weights = np.array([0.25, 0.5, 0.25])
        spec = Spectrum(grid, values, weights)
        assert spec.mean() == 0.0
        assert spec.std() == pytest.approx(np.sqrt(0.5))


class TestAdvection:
    def test_rigid_translation(self):
        # constant unit speed for time 3 => exact translation by 3
        grid = Grid1D(256, 0.0, 20.0)
        psi = gaussian_packet(grid, 5.0, 0.7)
        moved = propagate_advection(psi, lambda tau: np.ones_like(tau),
                                    lambda tau: np.zeros_like(tau),
                                    lambda tau: np.zeros_like(tau),
                                    dt=0.01, n_steps=300)
        shifted = gaussian_packet(grid, 8.0, 0.7)
        assert fidelity(moved, shifted) == pytest.approx(1.0, abs=1e-9)

    def test_cfl_guard(self):
        grid = Grid1D(64, 0.0, 4.0)  # spacing 0.0625
        psi = gaussian_packet(grid, 2.0, 0.3)
        with pytest.raises(StabilityError):
            propagate_advection(psi, lambda tau: np.full_like(tau, 2.0),
                                lambda tau: np.zeros_like(tau),
                                lambda tau: np.zeros_like(tau),
                                dt=0.05, n_steps=20)

    def test_norm_drift_guard(self):
        # damping without compensating speed change destroys the norm
        grid = Grid1D(64, 0.0, 8.0)
        psi = gaussian_packet(grid, 4.0, 0.5)
        with pytest.raises(NumericalContractError):
            propagate_advection(psi, lambda tau: np.ones_like(tau),
                                lambda tau: np.zeros_like(tau),
                                lambda tau: np.full_like(tau, 0.4),
                                dt=0.01, n_steps=100)

    def test_batch_matches_single(self):
        grid = Grid1D(128, 0.0, 10.0)
        psi = gaussian_packet(grid, 3.0, 0.5)
        speeds = np.vstack([np.ones(128), 1.0 + 0.1 * np.ones(128)])
        phases = np.zeros_like(speeds)
        dampings = np.zeros_like(speeds)
        batch = advect_batch(np.vstack([psi.amplitudes, psi.amplitudes]), grid,
                             speeds, phases, dampings, dt=0.01, n_steps=100)
        single = advect_batch(psi.amplitudes[np.newaxis, :], grid,
                              speeds[1:], phases[1:], dampings[1:], dt=0.01,
                              n_steps=100)
        assert np.max(np.abs(batch[1] - single[0])) < 1e-13
