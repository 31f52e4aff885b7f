"""Hierarchical equations of motion for a zero-temperature Lorentzian bath.

Every auxiliary density operator (ADO) rho_n carries a two-component index
n = (n1, n2), one component per exponential of the bath correlation function.
rho_(0,0) is the reduced density matrix; all other ADOs start at zero and are
bookkeeping devices, not density matrices. The equation for rho_n is

    d/dt rho_n = -(i[H_S, .] + n.nu) rho_n
                 - i sum_k [V, rho_{n+e_k}]
                 + sum_k n_k Theta_k rho_{n-e_k},

    Theta_k X = -i (cR_k [V, X] + i cI_k {V, X}),

with (cR_k, cI_k, nu_k) taken from :func:`lorentz_heom.bath.decompose`.
The hierarchy is truncated on the triangle n1 + n2 <= depth and the ADOs on
the boundary simply drop their coupling to the next tier.
"""

import logging
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from .bath import decompose
from .models import validate_density_matrix
from .observables import TimeSeries

logger = logging.getLogger(__name__)

DEPTH_CAP = 40
# above this many unknowns the RK4 transfer matrix stays sparse
DENSE_LIMIT = 1500
# a physical reduced state has Frobenius norm <= 1; past this the truncated
# hierarchy is growing without bound and the run is stopped
BLOWUP_NORM = 2.0


class InstabilityError(FloatingPointError):
    """The hierarchy produced non-finite or unbounded values."""

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"non-finite ADO entries after step {step}; "
                                    "reduce dt or increase depth")


class ConvergenceError(RuntimeError):
    def __init__(self, depth, delta):
        self.depth = depth
        self.delta = delta
        super().__init__(f"hierarchy did not converge below depth cap {depth} "
                         f"(last delta {delta:.3g})")


def enumerate_indices(depth):
    """All (n1, n2) with n1 + n2 <= depth, ordered by (n1 + n2, n1)."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return [(tier - n2, n2) for tier in range(depth + 1) for n2 in range(tier, -1, -1)]


class IndexTable:
    """Canonical ADO ordering plus O(1) neighbour lookup.

    ``up[k][m]`` is the position of index m + e_k and ``down[k][m]`` that of
    m - e_k. Missing neighbours point at ``size``, a padding slot that always
    holds a zero matrix.
    """

    def __init__(self, depth):
        self.depth = depth
        self.indices = enumerate_indices(depth)
        self.size = len(self.indices)
        self.position = {n: i for i, n in enumerate(self.indices)}
        self.n = np.array(self.indices, dtype=int).reshape(-1, 2)
        pad = self.size
        self.up = np.full((2, self.size), pad, dtype=int)
        self.down = np.full((2, self.size), pad, dtype=int)
        for i, (n1, n2) in enumerate(self.indices):
            for k, (d1, d2) in enumerate(((1, 0), (0, 1))):
                self.up[k, i] = self.position.get((n1 + d1, n2 + d2), pad)
                self.down[k, i] = self.position.get((n1 - d1, n2 - d2), pad)


_TABLES = {}


def index_table(depth):
    if depth not in _TABLES:
        _TABLES[depth] = IndexTable(depth)
    return _TABLES[depth]


@dataclass(frozen=True)
class HierarchyState:
    """ADO stack of shape (n_ados, dim, dim) in canonical order, at ``time``."""

    depth: int
    ados: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        expected = (self.depth + 1) * (self.depth + 2) // 2
        if self.ados.ndim != 3 or self.ados.shape[0] != expected:
            raise ValueError(f"depth {self.depth} needs {expected} ADOs, "
                             f"got array of shape {self.ados.shape}")

    @classmethod
    def initial(cls, rho0, depth):
        rho0 = validate_density_matrix(rho0)
        ados = np.zeros((index_table(depth).size,) + rho0.shape, dtype=complex)
        ados[0] = rho0
        return cls(depth, ados, 0.0)

    @property
    def rho(self):
        return self.ados[0]

    @property
    def dim(self):
        return self.ados.shape[1]

    def ado(self, n1, n2):
        return self.ados[index_table(self.depth).position[(n1, n2)]]


@dataclass(frozen=True)
class SolverConfig:
    """Fixed-step RK4 settings.

    ``sample_stride`` is the number of RK4 steps between recorded samples.
    """

    dt: float = 0.01
    t_end: float = 10.0
    sample_stride: int = 10
    depth: int = 8
    convergence_tol: float = 1e-4
    depth_cap: int = DEPTH_CAP

    def __post_init__(self):
        if not (self.dt > 0 and np.isfinite(self.dt)):
            raise ValueError("dt must be positive")
        if not (self.t_end > 0 and np.isfinite(self.t_end)):
            raise ValueError("t_end must be positive")
        if self.sample_stride < 1:
            raise ValueError("sample_stride must be >= 1")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if not self.convergence_tol > 0:
            raise ValueError("convergence_tol must be positive")

    @property
    def n_steps(self):
        return int(round(self.t_end / self.dt))


def default_depth(lam):
    """Starting depth for :func:`converge` by coupling strength."""
    if lam <= 0.01:
        return 8
    return 12


def _liouville_parts(model):
    h, v = model.h_sys, model.coupling
    eye = np.eye(model.dim)
    # row-major vec: vec(A X) = (A kron I) vec X, vec(X B) = (I kron B^T) vec X
    left_v, right_v = np.kron(v, eye), np.kron(eye, v.T)
    free = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    comm_v = left_v - right_v
    anti_v = left_v + right_v
    return free, comm_v, anti_v


def heom_derivative(state, model, decomp):
    """Time derivative of every ADO, returned as an array shaped like ``state.ados``."""
    x = state.ados
    if x.shape[1:] != (model.dim, model.dim):
        raise ValueError(f"ADO dimension {x.shape[1:]} does not match model "
                         f"dimension {model.dim}")
    table = index_table(state.depth)
    h, v = model.h_sys, model.coupling
    nu = np.asarray(decomp.nu)
    cr = np.asarray(decomp.real_coeffs)
    ci = np.asarray(decomp.imag_coeffs)

    padded = np.concatenate([x, np.zeros((1,) + x.shape[1:], dtype=complex)])
    out = -1j * (h @ x - x @ h) - (table.n @ nu)[:, None, None] * x

    up = padded[table.up[0]] + padded[table.up[1]]
    out -= 1j * (v @ up - up @ v)

    for k in range(2):
        lower = table.n[:, k, None, None] * padded[table.down[k]]
        vl, lv = v @ lower, lower @ v
        out += -1j * cr[k] * (vl - lv) + ci[k] * (vl + lv)
    return out


def generator(depth, model, decomp):
    """Sparse matrix L with d/dt vec(ADOs) = L vec(ADOs).

    Equivalent to :func:`heom_derivative` on the flattened (row-major) stack.
    """
    table = index_table(depth)
    size = table.size
    free, comm_v, anti_v = (sp.csr_matrix(m) for m in _liouville_parts(model))
    ident = sp.identity(model.dim ** 2, format="csr")
    damping = sp.diags(table.n @ np.asarray(decomp.nu))

    def select(targets, weights):
        rows = np.nonzero(targets < size)[0]
        return sp.csr_matrix((weights[rows], (rows, targets[rows])), shape=(size, size))

    ones = np.ones(size)
    up = select(table.up[0], ones) + select(table.up[1], ones)
    L = sp.kron(sp.identity(size), free) - sp.kron(damping, ident)
    L = L + sp.kron(up, -1j * comm_v)
    for k in range(2):
        theta = -1j * decomp.real_coeffs[k] * comm_v + decomp.imag_coeffs[k] * anti_v
        down = select(table.down[k], table.n[:, k].astype(float))
        L = L + sp.kron(down, theta)
    return L.tocsr()


def rk4_step(state, dt, model, decomp):
    """One classic fourth-order Runge-Kutta step of the full ADO stack."""
    if not dt > 0:
        raise ValueError("dt must be positive")

    def f(ados):
        return heom_derivative(replace(state, ados=ados), model, decomp)

    x = state.ados
    k1 = f(x)
    k2 = f(x + 0.5 * dt * k1)
    k3 = f(x + 0.5 * dt * k2)
    k4 = f(x + dt * k3)
    new = x + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    if not np.all(np.isfinite(new)):
        raise InstabilityError(0)
    return HierarchyState(state.depth, new, state.time + dt)


def rk4_propagator(L, dt):
    """Transfer matrix of one RK4 step for the linear system y' = L y.

    RK4 applied to a linear autonomous system is exactly
    y -> (1 + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24) y.
    """
    n = L.shape[0]
    hl = (dt * L).tocsr()
    term = sp.identity(n, dtype=complex, format="csr")
    total = term.copy()
    for order in range(1, 5):
        term = (term @ hl) / order
        total = total + term
    total = total.tocsr()
    total.eliminate_zeros()
    return total


def check_stability(cfg, decomp, depth):
    nu_max = max(abs(n) for n in decomp.nu)
    if cfg.dt * depth * nu_max >= 0.5:
        raise ValueError(f"dt={cfg.dt:g} too large for depth {depth}: "
                         f"dt*depth*|nu|max = {cfg.dt * depth * nu_max:.3g} >= 0.5")


def _check_bounded(ados, rho, step):
    if not np.all(np.isfinite(ados)):
        raise InstabilityError(step)
    norm = np.linalg.norm(rho)
    if norm > BLOWUP_NORM:
        raise InstabilityError(step, f"reduced state norm {norm:.3g} after step {step}: "
                                     "the truncated hierarchy is growing without bound")


def evolve(rho0, model, bath, cfg, observers=None, method="propagator"):
    """Integrate the truncated hierarchy from an uncorrelated initial state.

    Parameters
    ----------
    rho0 : array_like
        Initial reduced density matrix; all other ADOs start at zero.
    model : ModelSpec
    bath : LorentzBath
    cfg : SolverConfig
        ``cfg.depth`` sets the truncation tier.
    observers : dict, optional
        ``name -> f(t, rho)`` evaluated on every sample; results land in
        ``TimeSeries.extra``.
    method : {"propagator", "stepwise"}
        "propagator" applies the precomputed sparse RK4 transfer matrix,
        "stepwise" calls :func:`rk4_step`. Both are the same integrator.

    Returns
    -------
    TimeSeries
        Samples every ``cfg.sample_stride`` steps starting at t = 0, with the
        final hierarchy state attached as ``final_state``.
    """
    rho0 = validate_density_matrix(np.asarray(rho0, dtype=complex))
    if rho0.shape[0] != model.dim:
        raise ValueError("rho0 dimension does not match the model")
    decomp = decompose(bath)
    check_stability(cfg, decomp, cfg.depth)
    state = HierarchyState.initial(rho0, cfg.depth)
    n_steps = cfg.n_steps
    stride = cfg.sample_stride

    times = [0.0]
    samples = [state.rho.copy()]
    if method == "propagator":
        prop = rk4_propagator(generator(cfg.depth, model, decomp), cfg.dt)
        if prop.shape[0] <= DENSE_LIMIT:
            prop = prop.toarray()
            advance = {stride: np.linalg.matrix_power(prop, stride)}
        else:
            advance = {}
        y = state.ados.reshape(-1).copy()
        step = 0
        while step < n_steps:
            chunk = min(stride, n_steps - step)
            if chunk in advance:
                y = advance[chunk] @ y
            else:
                for _ in range(chunk):
                    y = prop @ y
            step += chunk
            rho = y[: model.dim ** 2].reshape(model.dim, model.dim).copy()
            _check_bounded(y, rho, step)
            times.append(step * cfg.dt)
            samples.append(rho)
        state = HierarchyState(cfg.depth, y.reshape(state.ados.shape), n_steps * cfg.dt)
    elif method == "stepwise":
        for step in range(1, n_steps + 1):
            try:
                state = rk4_step(state, cfg.dt, model, decomp)
            except InstabilityError:
                raise InstabilityError(step) from None
            if step % stride == 0 or step == n_steps:
                _check_bounded(state.ados, state.rho, step)
                times.append(step * cfg.dt)
                samples.append(state.rho.copy())
        state = replace(state, time=n_steps * cfg.dt)
    else:
        raise ValueError(f"unknown method {method!r}")

    series = TimeSeries.from_states(times, samples, observers)
    series.final_state = state
    series.depth = cfg.depth
    return series


def _concurrence_signal(series):
    return series.concurrence_raw


def _rho_signal(series):
    return series.rho.reshape(len(series), -1)


class ConvergedRun(NamedTuple):
    series: TimeSeries
    depth: int
    delta: float


def converge(rho0, model, bath, cfg, observable=None, step=2):
    """Raise the depth by ``step`` until the observable stops changing.

    ``observable`` maps a TimeSeries to an array; by default the unclamped
    concurrence for two-qubit models and the full reduced state otherwise.
    The returned depth is the first one whose result moves by less than
    ``cfg.convergence_tol`` when the depth is raised by ``step`` (the last
    raise stops at ``cfg.depth_cap``); ``delta`` is that change.
    """
    if observable is None:
        observable = _concurrence_signal if model.dim == 4 else _rho_signal
    depth = cfg.depth
    previous = evolve(rho0, model, bath, cfg)
    delta = np.inf
    while depth < cfg.depth_cap:
        deeper = min(depth + step, cfg.depth_cap)
        current = evolve(rho0, model, bath, replace(cfg, depth=deeper))
        delta = float(np.max(np.abs(observable(current) - observable(previous))))
        if not np.isfinite(delta):
            delta = np.inf
        logger.info("depth %d -> %d: delta %.3g", depth, deeper, delta)
        if delta < cfg.convergence_tol:
            return ConvergedRun(previous, depth, delta)
        previous, depth = current, deeper
    raise ConvergenceError(depth, delta)
