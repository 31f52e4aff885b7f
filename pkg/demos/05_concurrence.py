"""Concurrence on a few textbook states.

The general Wootters formula is used everywhere. For states that only mix
|10> and |01> it collapses to 2|c1 c2*|, the closed form used with the
rotating-wave amplitudes.
"""

import numpy as np

from lorentz_heom.models import single_excitation_state
from lorentz_heom.observables import concurrence
from lorentz_heom.reference import rwa_concurrence, rwa_density

bell = np.zeros(4)
bell[[1, 2]] = 1 / np.sqrt(2)
for p in (1.0, 0.6, 1 / 3, 0.2):
    werner = p * np.outer(bell, bell) + (1 - p) * np.eye(4) / 4
    print(f"Werner p = {p:.3f}: C = {concurrence(werner):.4f}")

for c1, c2 in ((1, 2), (1, 1j), (3, -1)):
    norm = np.hypot(abs(c1), abs(c2))
    c1, c2 = c1 / norm, c2 / norm
    general = concurrence(single_excitation_state(c1, c2).rho0)
    print(f"(c1, c2) = ({c1:.3f}, {c2:.3f}): Wootters {general:.6f}, "
          f"2|c1 c2*| {rwa_concurrence(c1, c2):.6f}")

# partially decayed: some weight sits in |00>
rho = rwa_density(0.3, 0.5)
print(f"decayed amplitudes (0.3, 0.5): C = {concurrence(rho):.4f}")
