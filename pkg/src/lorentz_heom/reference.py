"""Independent reference solvers.

* The rotating-wave, single-excitation dynamics of two resonant qubits in a
  common Lorentzian bath. With kernel f(tau) = lam * exp(-gamma*tau) the
  memory integral collapses to one auxiliary amplitude z(t):

      dc_j/dt = -z,    dz/dt = -gamma z + lam (c1 + c2),    z(0) = 0,

  written in the interaction picture.
* The single-mode (gamma = 0) limit, where the bath is one undamped cavity
  mode with coupling sqrt(lam) and the qubits plus a truncated Fock space can
  be propagated as a closed system.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .models import I00, I01, I10, InitialState, validate_density_matrix
from .observables import TimeSeries
from .operators import as_matrix, partial_trace_second

logger = logging.getLogger(__name__)

FOCK_CAP = 256


def _check_normalized(c1, c2, tol=1e-10):
    norm = abs(c1) ** 2 + abs(c2) ** 2
    if abs(norm - 1) > tol:
        raise ValueError(f"|c1|^2 + |c2|^2 = {norm:.12g}, expected 1")


def _rk4_transfer(a, h):
    """One RK4 step of y' = a y as a matrix: sum_{k<=4} (h a)^k / k!."""
    n = a.shape[0]
    term = np.eye(n, dtype=complex)
    total = term.copy()
    for order in range(1, 5):
        term = term @ (h * a) / order
        total = total + term
    return total


@dataclass
class RwaAmplitudes:
    t: np.ndarray
    c1: np.ndarray
    c2: np.ndarray

    @property
    def concurrence(self):
        return 2 * np.abs(self.c1 * np.conj(self.c2))


def rwa_evolve(c1_0, c2_0, bath, t_grid, max_step=0.01):
    """RWA single-excitation amplitudes on ``t_grid`` (starting at 0 or later).

    Integrates the three-amplitude linear system with fixed-step RK4; each
    grid interval is split into equal sub-steps no longer than ``max_step``.
    Resonance between the qubits and the cavity centre is assumed.
    """
    _check_normalized(c1_0, c2_0)
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) == 0 or t_grid[0] < 0 or np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be non-negative and strictly increasing")
    lam, gamma = bath.lam, bath.gamma
    a = np.array([[0, 0, -1],
                  [0, 0, -1],
                  [lam, lam, -gamma]], dtype=complex)
    y = np.array([c1_0, c2_0, 0], dtype=complex)
    out = np.empty((len(t_grid), 3), dtype=complex)
    transfers = {}
    t_prev = 0.0
    for i, t in enumerate(t_grid):
        span = t - t_prev
        if span > 0:
            n_sub = max(1, int(np.ceil(span / max_step - 1e-9)))
            h = span / n_sub
            key = (n_sub, round(h, 15))
            if key not in transfers:
                transfers[key] = np.linalg.matrix_power(_rk4_transfer(a, h), n_sub)
            y = transfers[key] @ y
        out[i] = y
        t_prev = t
    return RwaAmplitudes(t_grid, out[:, 0], out[:, 1])


def rwa_density(c1, c2):
    """Two-qubit density matrix of the single-excitation RWA state."""
    p1, p2 = abs(c1) ** 2, abs(c2) ** 2
    if p1 + p2 > 1 + 1e-9:
        raise ValueError("|c1|^2 + |c2|^2 exceeds 1")
    rho = np.zeros((4, 4), dtype=complex)
    rho[I10, I10] = p1
    rho[I01, I01] = p2
    rho[I10, I01] = c1 * np.conj(c2)
    rho[I01, I10] = c2 * np.conj(c1)
    rho[I00, I00] = 1 - p1 - p2
    return rho


def rwa_concurrence(c1, c2):
    return 2 * abs(c1 * np.conj(c2))


def rwa_steady_concurrence(c1_0, c2_0):
    """Squared overlap with (|0>|1> - |1>|0>)/sqrt(2), the dark state under RWA."""
    _check_normalized(c1_0, c2_0)
    return abs((c2_0 - c1_0) / np.sqrt(2)) ** 2


def rwa_series(c1_0, c2_0, bath, t_grid, max_step=0.01):
    """RWA amplitudes packaged as a TimeSeries of two-qubit density matrices."""
    amps = rwa_evolve(c1_0, c2_0, bath, t_grid, max_step)
    states = [rwa_density(a, b) for a, b in zip(amps.c1, amps.c2)]
    return TimeSeries.from_states(amps.t, states)


@dataclass(frozen=True)
class FockOracleConfig:
    n_fock: int = 8
    dt: float = 0.005
    t_end: float = 10.0
    sample_stride: int = 10
    leak_tol: float = 1e-8
    fock_cap: int = FOCK_CAP

    def __post_init__(self):
        if self.n_fock < 2:
            raise ValueError("n_fock must be >= 2")
        if not (self.dt > 0 and self.t_end > 0):
            raise ValueError("dt and t_end must be positive")


def cavity_hamiltonian(model, lam, n_fock, omega0=1.0):
    """H_S + omega0 b^dag b + sqrt(lam) V (b + b^dag) on system x Fock(0..n_fock)."""
    nf = n_fock + 1
    b = np.diag(np.sqrt(np.arange(1, nf)), 1).astype(complex)
    eye_s = np.eye(model.dim)
    eye_f = np.eye(nf)
    return (np.kron(model.h_sys, eye_f)
            + omega0 * np.kron(eye_s, b.conj().T @ b)
            + np.sqrt(lam) * np.kron(model.coupling, b + b.conj().T))


@dataclass
class OracleRun:
    series: TimeSeries
    n_fock: int
    top_population: float
    norm_error: float
    energy_error: float


def _propagate_closed(model, lam, psi_s, cfg, n_fock, omega0):
    nf = n_fock + 1
    h = cavity_hamiltonian(model, lam, n_fock, omega0)
    vac = np.zeros(nf, dtype=complex)
    vac[0] = 1
    psi = np.kron(psi_s, vac)
    step = _rk4_transfer(-1j * h, cfg.dt)
    stride = np.linalg.matrix_power(step, cfg.sample_stride)
    n_steps = int(round(cfg.t_end / cfg.dt))
    n_samples = n_steps // cfg.sample_stride
    top = np.kron(np.eye(model.dim), np.diag(np.eye(nf)[-1]))

    def reduced(p):
        return partial_trace_second(np.outer(p, p.conj()), model.dim, nf)

    e0 = np.vdot(psi, h @ psi).real
    times, states = [0.0], [reduced(psi)]
    top_pop = norm_err = energy_err = 0.0
    for i in range(1, n_samples + 1):
        psi = stride @ psi
        times.append(i * cfg.sample_stride * cfg.dt)
        states.append(reduced(psi))
        top_pop = max(top_pop, np.vdot(psi, top @ psi).real)
        norm_err = max(norm_err, abs(np.vdot(psi, psi).real - 1))
        energy_err = max(energy_err, abs(np.vdot(psi, h @ psi).real - e0))
    return times, states, top_pop, norm_err, energy_err


def single_mode_oracle(model, lam, rho0, cfg, omega0=1.0):
    """Reduced dynamics for the gamma = 0 bath by brute-force propagation.

    The qubits start in ``rho0`` (any density matrix; mixed states are handled
    through their eigen-decomposition) and the cavity in vacuum. ``n_fock`` is
    doubled until the highest retained Fock level never holds more than
    ``cfg.leak_tol`` population.

    Raises
    ------
    RuntimeError
        If the Fock cutoff would exceed ``cfg.fock_cap``.
    """
    if isinstance(rho0, InitialState):
        rho0 = rho0.rho0
    rho0 = validate_density_matrix(as_matrix(rho0))
    weights, vecs = np.linalg.eigh(0.5 * (rho0 + rho0.conj().T))
    parts = [(w, vecs[:, i]) for i, w in enumerate(weights) if w > 1e-14]

    n_fock = cfg.n_fock
    while True:
        if n_fock > cfg.fock_cap:
            raise RuntimeError(f"Fock cutoff exceeded cap {cfg.fock_cap}")
        total = None
        top = norm_err = energy_err = 0.0
        for w, vec in parts:
            times, states, tp, ne, ee = _propagate_closed(model, lam, vec, cfg, n_fock, omega0)
            states = w * np.array(states)
            total = states if total is None else total + states
            top, norm_err, energy_err = max(top, tp), max(norm_err, ne), max(energy_err, ee)
        if top < cfg.leak_tol:
            break
        logger.info("n_fock=%d leaks %.3g into the top level; doubling", n_fock, top)
        n_fock *= 2
    series = TimeSeries.from_states(times, total)
    return OracleRun(series, n_fock, top, norm_err, energy_err)
