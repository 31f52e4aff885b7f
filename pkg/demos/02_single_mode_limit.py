"""Two qubits and one undamped cavity mode.

With gamma = 0 the bath is a single mode, so a brute-force Fock-space
propagation gives the exact reduced dynamics. Starting from both qubits in
the ground state, counter-rotating terms create photon pairs and entangle
the qubits; the entanglement dies and comes back.

The same setting is a hard case for the hierarchy: its truncation keeps
modes that grow in time, and past a few Rabi periods the run is stopped
with an InstabilityError. The script shows the agreement up to that point.
"""

import numpy as np

from lorentz_heom import models
from lorentz_heom.bath import LorentzBath
from lorentz_heom.heom import InstabilityError, SolverConfig, evolve
from lorentz_heom.reference import FockOracleConfig, single_mode_oracle

two = models.two_qubit_common_bath()
ground = models.ground_state_pair()

oracle = single_mode_oracle(two, 0.1, ground, FockOracleConfig(t_end=50, sample_stride=20))
c = oracle.series.concurrence
print(f"Fock cutoff used: {oracle.n_fock}, top-level population {oracle.top_population:.1e}")
print("oracle concurrence every 2.5 time units:")
for t, value in zip(oracle.series.t[::25], c[::25]):
    print(f"  t = {t:5.1f}  C = {value:.4f}")

dead = np.nonzero(c < 1e-3)[0]
print(f"C drops below 1e-3 at {len(dead)} of {len(c)} samples; max C = {c.max():.3f}")

short = evolve(ground.rho0, two, LorentzBath(0.1, 0.0), SolverConfig(t_end=5, depth=12))
diff = np.abs(short.concurrence - oracle.series.concurrence[: len(short.t)])
print(f"hierarchy (depth 12) vs oracle on [0, 5]: max |dC| = {diff.max():.1e}")

try:
    evolve(ground.rho0, two, LorentzBath(0.1, 0.0), SolverConfig(t_end=50, depth=12))
except InstabilityError as exc:
    print(f"over [0, 50] the truncated hierarchy fails: {exc}")
