import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lorentz_heom import models
from lorentz_heom.bath import LorentzBath
from lorentz_heom.observables import concurrence
from lorentz_heom.reference import (FockOracleConfig, cavity_hamiltonian, rwa_concurrence,
                                    rwa_density, rwa_evolve, rwa_series,
                                    rwa_steady_concurrence, single_mode_oracle)

S5 = np.sqrt(5)


def closed_form_symmetric(t, lam, gamma):
    """c+(t)/c+(0) for c+ = c1 + c2 from the damped-oscillator solution."""
    d = np.sqrt(complex(gamma ** 2 - 8 * lam))
    return np.real(np.exp(-gamma * t / 2) * (np.cosh(d * t / 2) + gamma / d * np.sinh(d * t / 2)))


def volterra_symmetric(t_end, lam, gamma, h):
    """Trapezoid product-integration of dc/dt = -2 lam int_0^t exp(-gamma(t-s)) c(s) ds."""
    n = int(round(t_end / h))
    c = np.empty(n + 1)
    c[0] = 1.0
    mem = 0.0  # int_0^t exp(-gamma(t-s)) c(s) ds
    for i in range(n):
        # predictor-corrector on the pair (c, mem)
        c_pred = c[i] - h * 2 * lam * mem
        mem_pred = np.exp(-gamma * h) * mem + 0.5 * h * (np.exp(-gamma * h) * c[i] + c_pred)
        c[i + 1] = c[i] - 0.5 * h * 2 * lam * (mem + mem_pred)
        mem = np.exp(-gamma * h) * mem + 0.5 * h * (np.exp(-gamma * h) * c[i] + c[i + 1])
    return np.arange(n + 1) * h, c


def test_steady_concurrence_analytic():
    assert rwa_steady_concurrence(1 / S5, 2 / S5) == pytest.approx(0.1, abs=1e-15)
    assert rwa_steady_concurrence(1 / np.sqrt(2), -1 / np.sqrt(2)) == pytest.approx(1.0)
    assert rwa_steady_concurrence(1 / np.sqrt(2), 1 / np.sqrt(2)) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        rwa_steady_concurrence(1, 1)


@pytest.mark.parametrize("lam,gamma", [(0.01, 0.05), (0.01, 0.5), (0.001, 0.01), (0.1, 0.0)])
def test_rwa_matches_closed_form(lam, gamma):
    t = np.linspace(0, 60, 301)
    amps = rwa_evolve(1 / S5, 2 / S5, LorentzBath(lam, gamma), t)
    np.testing.assert_allclose((amps.c1 + amps.c2) / (3 / S5), closed_form_symmetric(t, lam, gamma),
                               atol=1e-9)
    # the antisymmetric part never moves
    np.testing.assert_allclose(amps.c2 - amps.c1, 1 / S5, atol=1e-12)


def test_closed_form_against_volterra_quadrature():
    lam, gamma = 0.02, 0.1
    t, c = volterra_symmetric(40, lam, gamma, 0.002)
    np.testing.assert_allclose(c, closed_form_symmetric(t, lam, gamma), atol=1e-5)


def test_dark_state_is_frozen():
    t = np.linspace(0, 2000, 201)
    amps = rwa_evolve(1 / np.sqrt(2), -1 / np.sqrt(2), LorentzBath(0.1, 0.05), t)
    np.testing.assert_allclose(amps.concurrence, 1, atol=1e-12)


@pytest.mark.parametrize("gamma", [0.01, 0.05, 0.1])
@pytest.mark.parametrize("lam", [1e-3, 1e-2])
def test_long_time_value(lam, gamma):
    amps = rwa_evolve(1 / S5, 2 / S5, LorentzBath(lam, gamma), [50 / gamma])
    assert amps.concurrence[0] == pytest.approx(0.1, abs=1e-4)


def test_weak_coupling_limit():
    t = np.linspace(0, 50, 11)
    amps = rwa_evolve(1 / S5, 2 / S5, LorentzBath(1e-12, 0.05), t)
    np.testing.assert_allclose(amps.concurrence, 0.8, atol=1e-9)


def test_max_step_refinement():
    bath, t = LorentzBath(0.05, 0.02), np.linspace(0, 30, 31)
    coarse = rwa_evolve(1 / S5, 2 / S5, bath, t, max_step=0.1)
    fine = rwa_evolve(1 / S5, 2 / S5, bath, t, max_step=0.05)
    err = np.max(np.abs(coarse.c1 - fine.c1))
    assert 0 < err < 1e-5


def test_rwa_density_valid_and_consistent():
    for c1, c2 in ((0.3, 0.4j), (0.6, -0.1), (0, 0.5)):
        rho = rwa_density(c1, c2)
        models.validate_density_matrix(rho)
        assert concurrence(rho) == pytest.approx(rwa_concurrence(c1, c2), abs=1e-7)
    with pytest.raises(ValueError):
        rwa_density(1, 1)


@settings(max_examples=25, deadline=None)
@given(st.floats(0, 2 * np.pi), st.floats(0.01, 1.5))
def test_rwa_series_trace_and_positivity(phase, theta):
    c1, c2 = np.cos(theta), np.sin(theta) * np.exp(1j * phase)
    s = rwa_series(c1, c2, LorentzBath(0.02, 0.1), np.linspace(0, 40, 41))
    assert np.max(s.trace_error) < 1e-12
    assert np.min(s.min_eigenvalue) > -1e-12


def test_rwa_grid_validation():
    with pytest.raises(ValueError):
        rwa_evolve(1, 0, LorentzBath(0.1, 0.1), [1, 0.5])
    with pytest.raises(ValueError):
        rwa_evolve(1, 0, LorentzBath(0.1, 0.1), [-1, 0])


def test_cavity_hamiltonian_hermitian_and_jc_sector():
    m = models.single_qubit()
    h = cavity_hamiltonian(m, 0.04, 6)
    np.testing.assert_allclose(h, h.conj().T)
    assert h.shape == (14, 14)


def test_oracle_single_qubit_vacuum_rabi():
    # resonant weak coupling: excited-state population follows cos^2(g t) to O(g / omega)
    lam = 1e-4
    m = models.single_qubit()
    run = single_mode_oracle(m, lam, models.qubit_state(True),
                             FockOracleConfig(t_end=200, sample_stride=200))
    p_up = run.series.rho[:, 0, 0].real
    np.testing.assert_allclose(p_up, np.cos(np.sqrt(lam) * run.series.t) ** 2, atol=5e-3)


def test_oracle_conservation_and_cutoff():
    run = single_mode_oracle(models.two_qubit_common_bath(), 0.1, models.ground_state_pair(),
                             FockOracleConfig(t_end=20))
    assert run.top_population < 1e-8
    assert run.norm_error < 1e-9
    assert run.energy_error < 1e-8
    assert np.max(run.series.trace_error) < 1e-9


def test_oracle_step_refinement():
    cfg = dict(t_end=20, sample_stride=20)
    a = single_mode_oracle(models.two_qubit_common_bath(), 0.1, models.ground_state_pair(),
                           FockOracleConfig(dt=0.005, **cfg))
    b = single_mode_oracle(models.two_qubit_common_bath(), 0.1, models.ground_state_pair(),
                           FockOracleConfig(dt=0.0025, sample_stride=40, t_end=20))
    assert np.max(np.abs(a.series.concurrence - b.series.concurrence)) < 1e-6


def test_oracle_mixed_state_is_mixture():
    m = models.two_qubit_common_bath()
    cfg = FockOracleConfig(t_end=5)
    up = single_mode_oracle(m, 0.1, models.named_state("fig2"), cfg).series.rho
    down = single_mode_oracle(m, 0.1, models.ground_state_pair(), cfg).series.rho
    mix = 0.25 * models.named_state("fig2").rho0 + 0.75 * models.ground_state_pair().rho0
    both = single_mode_oracle(m, 0.1, mix, cfg).series.rho
    np.testing.assert_allclose(both, 0.25 * up + 0.75 * down, atol=1e-10)


def test_oracle_cutoff_cap():
    with pytest.raises(RuntimeError):
        single_mode_oracle(models.two_qubit_common_bath(), 0.1, models.ground_state_pair(),
                           FockOracleConfig(n_fock=2, fock_cap=3, t_end=20))


def test_oracle_matches_adaptive_integrator():
    from scipy.integrate import solve_ivp

    q = models.single_qubit()
    run = single_mode_oracle(q, 0.04, models.qubit_state(True),
                             FockOracleConfig(t_end=30, sample_stride=20))
    nf = run.n_fock + 1
    h = cavity_hamiltonian(q, 0.04, run.n_fock)
    psi0 = np.kron([1, 0], np.eye(nf)[0]).astype(complex)
    sol = solve_ivp(lambda t, y: -1j * (h @ y), (0, 30), psi0, t_eval=run.series.t,
                    method="DOP853", rtol=1e-12, atol=1e-13)
    p_up = np.sum(np.abs(sol.y[:nf]) ** 2, axis=0)
    np.testing.assert_allclose(run.series.rho[:, 0, 0].real, p_up, atol=1e-8)


@pytest.mark.parametrize("gamma", [0.01, 0.1, 1.0])
@pytest.mark.parametrize("lam", [1e-4, 1e-3, 0.05])
def test_steady_value_reached_by_fifty_over_gamma(lam, gamma):
    amps = rwa_evolve(*(1 / S5, 2 / S5), LorentzBath(lam, gamma), [50 / gamma])
    assert amps.concurrence[0] == pytest.approx(rwa_steady_concurrence(1 / S5, 2 / S5), abs=1e-4)
