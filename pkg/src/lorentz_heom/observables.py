"""Concurrence, populations and density-matrix diagnostics.

``TimeSeries`` is the sampled record shared by the solvers and the CSV layer.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .operators import SIGMA_Y, as_matrix, dag, hermitian_eigenvalues, kron

_YY = kron(SIGMA_Y, SIGMA_Y)


def _check_two_qubit_state(rho, tol=1e-6):
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 density matrix, got {rho.shape}")
    if np.max(np.abs(rho - dag(rho))) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError("density matrix does not have unit trace")
    return rho


def concurrence_raw(rho):
    """Wootters combination sqrt(mu1) - sqrt(mu2) - sqrt(mu3) - sqrt(mu4), unclamped.

    The mu are eigenvalues of rho (sy x sy) rho* (sy x sy), with the complex
    conjugate taken in the product basis of :mod:`lorentz_heom.models`.
    """
    rho = _check_two_qubit_state(rho)
    r = rho @ _YY @ rho.conj() @ _YY
    mu = np.sort(np.clip(np.linalg.eigvals(r).real, 0.0, None))[::-1]
    s = np.sqrt(mu)
    return float(s[0] - s[1] - s[2] - s[3])


def concurrence(rho):
    """Two-qubit concurrence in [0, 1]."""
    return min(1.0, max(0.0, concurrence_raw(rho)))


def _safe_concurrence(rho):
    try:
        return concurrence_raw(rho)
    except (ValueError, np.linalg.LinAlgError):
        return np.nan


class Diagnostics(NamedTuple):
    populations: np.ndarray
    trace_error: float
    min_eigenvalue: float
    purity: float
    hermiticity_error: float


def diagnostics(rho):
    rho = as_matrix(rho)
    herm = 0.5 * (rho + dag(rho))
    return Diagnostics(
        populations=np.real(np.diag(rho)).copy(),
        trace_error=float(abs(np.trace(rho) - 1)),
        min_eigenvalue=float(hermitian_eigenvalues(herm)[-1]),
        purity=float(np.real(np.trace(rho @ rho))),
        hermiticity_error=float(np.max(np.abs(rho - dag(rho)))),
    )


@dataclass
class TimeSeries:
    """Sampled reduced states plus the per-sample observable record.

    ``rho`` holds the Hermitian-symmetrised reduced density matrices; the
    diagnostics (``trace_error``, ``hermiticity_error``...) are computed from
    the raw, unsymmetrised samples so they expose integrator drift.
    """

    t: np.ndarray
    rho: np.ndarray
    concurrence: np.ndarray
    concurrence_raw: np.ndarray
    populations: np.ndarray
    trace_error: np.ndarray
    min_eigenvalue: np.ndarray
    purity: np.ndarray
    hermiticity_error: np.ndarray
    extra: dict = field(default_factory=dict)
    final_state: object = None
    depth: int = None

    def __len__(self):
        return len(self.t)

    @classmethod
    def from_states(cls, t, states, observers=None):
        t = np.asarray(t, dtype=float)
        states = np.asarray(states, dtype=complex)
        if np.any(np.diff(t) <= 0):
            raise ValueError("time grid must be strictly increasing")
        diags = [diagnostics(r) for r in states]
        sym = 0.5 * (states + np.conj(np.swapaxes(states, -1, -2)))
        if states.shape[-1] == 4:
            raw = np.array([_safe_concurrence(r) for r in sym])
            conc = np.clip(raw, 0.0, 1.0)
        else:
            raw = conc = np.full(len(t), np.nan)
        extra = {name: np.array([f(ti, r) for ti, r in zip(t, sym)])
                 for name, f in (observers or {}).items()}
        return cls(
            t=t,
            rho=sym,
            concurrence=conc,
            concurrence_raw=raw,
            populations=np.array([d.populations for d in diags]),
            trace_error=np.array([d.trace_error for d in diags]),
            min_eigenvalue=np.array([d.min_eigenvalue for d in diags]),
            purity=np.array([d.purity for d in diags]),
            hermiticity_error=np.array([d.hermiticity_error for d in diags]),
            extra=extra,
        )


class SteadyState(NamedTuple):
    value: float
    converged: bool
    spread: float


def steady_state_extract(series, window, tol):
    """Long-time value of a sampled signal.

    Parameters
    ----------
    series : TimeSeries or (t, values) pair
        For a TimeSeries the reported concurrence is used.
    window : float
        Width of the averaging window at the end of the series.
    tol : float
        The signal counts as settled when max - min over the final two
        windows is below ``tol``.

    Returns
    -------
    SteadyState
        Mean over the final window, whether it settled, and the spread.
    """
    if isinstance(series, TimeSeries):
        t, values = series.t, series.concurrence
    else:
        t, values = series
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    if window <= 0 or len(t) < 2 or t[-1] - t[0] < 3 * window:
        raise ValueError("series must span at least three windows")
    last = t >= t[-1] - window
    last_two = t >= t[-1] - 2 * window
    spread = float(np.ptp(values[last_two]))
    return SteadyState(float(np.mean(values[last])), spread < tol, spread)
