"""Run drivers shared by the command line and the demo scripts."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import heom, reference
from .config import initial_amplitudes, initial_state
from .observables import TimeSeries, steady_state_extract

logger = logging.getLogger(__name__)

# cap on recorded samples for long sweep horizons
MAX_SAMPLES = 5000


@dataclass
class RunResult:
    series: TimeSeries
    depth: int = None
    delta: float = None

    @property
    def max_trace_error(self):
        return float(np.max(self.series.trace_error))


def run_heom(cfg):
    rho0 = initial_state(cfg).rho0
    solver = cfg.solver()
    if cfg.converge:
        series, depth, delta = heom.converge(rho0, cfg.model, cfg.bath, solver)
        return RunResult(series, depth, delta)
    return RunResult(heom.evolve(rho0, cfg.model, cfg.bath, solver), solver.depth)


def rwa_reference(cfg, t_grid):
    """RWA series on ``t_grid``; the ground pair is stationary under RWA."""
    amps = initial_amplitudes(cfg)
    t_grid = np.asarray(t_grid, dtype=float)
    if amps is None:
        rho = initial_state(cfg).rho0
        return TimeSeries.from_states(t_grid, [rho] * len(t_grid))
    return reference.rwa_series(*amps, cfg.bath, t_grid)


def run_rwa(cfg):
    n = cfg.solver().n_steps // cfg.sample_stride
    t_grid = np.arange(n + 1) * cfg.sample_stride * cfg.dt
    return RunResult(rwa_reference(cfg, t_grid))


def oracle_config(cfg):
    """Fock oracle sampled on the same grid as the hierarchy run."""
    stride = max(1, int(round(cfg.sample_stride * cfg.dt / cfg.oracle_dt)))
    return reference.FockOracleConfig(dt=cfg.oracle_dt, t_end=cfg.t_end,
                                      sample_stride=stride)


def run_oracle(cfg):
    if cfg.gamma != 0:
        raise ValueError("the single-mode oracle needs gamma = 0")
    run = reference.single_mode_oracle(cfg.model, cfg.lam, initial_state(cfg),
                                       oracle_config(cfg), cfg.omega0)
    return RunResult(run.series)


def run_simulation(cfg):
    runner = {"heom": run_heom, "rwa": run_rwa, "oracle": run_oracle}
    if cfg.mode not in runner:
        raise ValueError(f"simulate does not support mode {cfg.mode!r}")
    return runner[cfg.mode](cfg)


@dataclass
class SweepRow:
    gamma: float
    steady_concurrence: float
    converged: bool
    depth: int
    unstable: bool = False
    message: str = ""
    result: RunResult = None  # the underlying run, kept for diagnostics

    def as_csv(self):
        return (self.gamma, self.steady_concurrence, self.converged, self.depth)


def sweep_point(cfg, gamma):
    """Steady concurrence for one gamma; the horizon grows like 1/gamma."""
    if gamma <= 0:
        raise ValueError("sweep gammas must be positive")
    point = cfg.with_gamma(gamma)
    t_end = max(cfg.t_end, cfg.horizon_factor / gamma)
    n_steps = int(round(t_end / cfg.dt))
    stride = max(cfg.sample_stride, -(-n_steps // MAX_SAMPLES))
    point = replace(point, t_end=t_end, sample_stride=stride, mode="heom")
    depth = point.solver().depth
    try:
        result = run_heom(point)
    except (heom.InstabilityError, heom.ConvergenceError) as exc:
        unstable = isinstance(exc, heom.InstabilityError)
        return SweepRow(gamma, float("nan"), False, getattr(exc, "depth", depth),
                        unstable=unstable, message=str(exc))
    steady = steady_state_extract(result.series, t_end / 10, cfg.steady_tol)
    return SweepRow(gamma, steady.value, steady.converged, result.depth, result=result)


def _sweep_point_star(args):
    return sweep_point(*args)


def run_sweep(cfg, gammas):
    """One row per gamma, returned in input order."""
    jobs = [(cfg, g) for g in gammas]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(_sweep_point_star, jobs))
    return [sweep_point(*job) for job in jobs]


def run_compare(cfg):
    """HEOM next to RWA (and the oracle when gamma = 0) on one time grid.

    Returns ``(header, rows, heom_result)``.
    """
    heom_run = run_heom(replace(cfg, mode="heom"))
    t = heom_run.series.t
    rwa = rwa_reference(cfg, t)
    header = ["t", "heom", "rwa", "abs_diff_rwa"]
    columns = [t, heom_run.series.concurrence, rwa.concurrence,
               np.abs(heom_run.series.concurrence - rwa.concurrence)]
    if cfg.gamma == 0:
        oracle = run_oracle(cfg).series
        if len(oracle.t) != len(t) or np.max(np.abs(oracle.t - t)) > 1e-9:
            raise ValueError("oracle and hierarchy time grids do not line up")
        header += ["oracle", "abs_diff_oracle"]
        columns += [oracle.concurrence,
                    np.abs(heom_run.series.concurrence - oracle.concurrence)]
    rows = list(zip(*columns))
    return header, rows, heom_run
