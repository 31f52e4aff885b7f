"""Hierarchical equations of motion for qubits in a zero-temperature
Lorentz-broadened cavity bath, with RWA and single-mode reference solvers."""

from .bath import LorentzBath, correlation, decompose, spectral_density
from .heom import (ConvergenceError, HierarchyState, InstabilityError,
                   SolverConfig, converge, evolve)
from .models import (ModelSpec, ground_state_pair, named_state, single_excitation_state,
                     single_qubit, two_qubit_common_bath)
from .observables import TimeSeries, concurrence, diagnostics, steady_state_extract
from .reference import (FockOracleConfig, rwa_concurrence, rwa_density, rwa_evolve,
                        rwa_steady_concurrence, single_mode_oracle)

__version__ = "0.1.0"
