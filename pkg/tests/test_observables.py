import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from lorentz_heom.models import single_excitation_state
from lorentz_heom.observables import (TimeSeries, concurrence, concurrence_raw, diagnostics,
                                      steady_state_extract)
from lorentz_heom.operators import kron

from conftest import random_density


def _pure(psi):
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def _pure_state_concurrence(psi):
    # for |psi> = a|11> + b|10> + c|01> + d|00>, C = 2|ad - bc|
    a, b, c, d = psi / np.linalg.norm(psi)
    return 2 * abs(a * d - b * c)


def test_bell_states():
    s = 1 / np.sqrt(2)
    for psi in ([s, 0, 0, s], [s, 0, 0, -s], [0, s, s, 0], [0, s, -s, 0]):
        assert concurrence(_pure(psi)) == pytest.approx(1, abs=1e-12)


def test_product_and_mixed_examples():
    assert concurrence(_pure([1, 0, 0, 0])) == pytest.approx(0, abs=1e-12)
    assert concurrence(_pure(np.kron([1, 1], [1, -1j]))) == pytest.approx(0, abs=1e-7)
    assert concurrence(np.eye(4) / 4) == 0
    assert concurrence_raw(np.eye(4) / 4) == pytest.approx(-0.5)


def test_werner_states():
    # p |Bell><Bell| + (1 - p) I/4 has C = max(0, (3p - 1)/2)
    bell = _pure([0, 1, 1, 0])
    for p in (0.0, 0.2, 1 / 3, 0.5, 0.8, 1.0):
        rho = p * bell + (1 - p) * np.eye(4) / 4
        assert concurrence(rho) == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-7)


def test_single_excitation_formula():
    # Wootters reduces to 2|c1 c2*| for the single-excitation sector
    for c1, c2 in ((1, 2), (1j, 1), (0.3, -0.4 + 0.2j)):
        n = np.hypot(abs(c1), abs(c2))
        s = single_excitation_state(c1 / n, c2 / n)
        assert concurrence(s.rho0) == pytest.approx(2 * abs(c1 * np.conj(c2)) / n ** 2, abs=1e-7)


def test_x_state_bridge():
    # states with rho_11,00 and rho_10,01 coherences: C = 2 max(0, |z| - sqrt(a d), |w| - sqrt(b c))
    a, b, c, d, z, w = 0.3, 0.25, 0.2, 0.25, 0.05, 0.2 * np.exp(0.7j)
    rho = np.diag([a, b, c, d]).astype(complex)
    rho[0, 3], rho[3, 0] = z, np.conj(z)
    rho[1, 2], rho[2, 1] = w, np.conj(w)
    expected = 2 * max(0, abs(z) - np.sqrt(b * c), abs(w) - np.sqrt(a * d))
    assert concurrence(rho) == pytest.approx(expected, abs=1e-7)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=1, allow_nan=False, allow_infinity=False),
                min_size=4, max_size=4))
def test_pure_state_formula(amps):
    psi = np.array(amps)
    if np.linalg.norm(psi) < 1e-3:
        return
    expected = _pure_state_concurrence(psi)
    assert concurrence(_pure(psi)) == pytest.approx(expected, abs=1e-6)


def test_local_unitary_invariance(rng):
    for seed in range(10):
        rho = random_density(rng, 4)
        u = kron(unitary_group.rvs(2, random_state=seed), unitary_group.rvs(2, random_state=100 + seed))
        assert concurrence(u @ rho @ u.conj().T) == pytest.approx(concurrence(rho), abs=1e-7)


def test_bounds_on_random_states(rng):
    for _ in range(50):
        c = concurrence(random_density(rng, 4))
        assert 0 <= c <= 1


def test_concurrence_validation():
    with pytest.raises(ValueError):
        concurrence(np.eye(2) / 2)
    with pytest.raises(ValueError):
        concurrence(np.eye(4) / 2)


def test_diagnostics():
    d = diagnostics(np.diag([0.5, 0.5, 0, 0]))
    np.testing.assert_allclose(d.populations, [0.5, 0.5, 0, 0])
    assert d.trace_error == 0
    assert d.purity == pytest.approx(0.5)
    assert d.min_eigenvalue == pytest.approx(0, abs=1e-15)
    assert d.hermiticity_error == 0


def test_diagnostics_examples():
    d = diagnostics(np.eye(4) / 4)
    assert (d.purity, d.min_eigenvalue, d.trace_error) == (0.25, 0.25, 0.0)
    assert diagnostics(_pure([1, 2j, 0, -1])).purity == pytest.approx(1, abs=1e-12)


def test_time_series_from_states():
    rho = np.diag([0, 1, 0, 0]).astype(complex)
    s = TimeSeries.from_states([0, 1, 2], [rho] * 3, {"p10": lambda t, r: r[1, 1].real})
    assert len(s) == 3
    np.testing.assert_array_equal(s.extra["p10"], [1, 1, 1])
    np.testing.assert_array_equal(s.concurrence, 0)
    with pytest.raises(ValueError):
        TimeSeries.from_states([0, 1, 1], [rho] * 3)


def test_steady_state_settled_signal():
    t = np.linspace(0, 100, 2001)
    v = 0.07 + 0.03 * np.exp(-t / 5) * np.cos(t)
    s = steady_state_extract((t, v), 10, 1e-4)
    assert s.converged
    assert s.value == pytest.approx(0.07, abs=1e-6)


def test_steady_state_unsettled_signal():
    t = np.linspace(0, 100, 2001)
    s = steady_state_extract((t, 0.05 * np.cos(t)), 10, 1e-4)
    assert not s.converged
    assert s.spread == pytest.approx(0.1, rel=1e-3)


def test_steady_state_needs_three_windows():
    t = np.linspace(0, 20, 11)
    with pytest.raises(ValueError):
        steady_state_extract((t, t), 10, 1e-4)
