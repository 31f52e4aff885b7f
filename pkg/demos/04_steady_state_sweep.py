"""Steady-state concurrence as the cavity line broadens.

Each point runs the hierarchy for max(t_end, 50/gamma), raises the depth
until the concurrence stops changing, and averages the last tenth of the
run. Wider cavities wash the entanglement out; past a critical width the
steady state is separable.
"""

import time

from lorentz_heom import config, experiments

cfg = config.build({"lambda": "0.01", "initial": "fig2", "t_end": "300", "depth": "8"})
gammas = (0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5)

start = time.perf_counter()
for row in experiments.run_sweep(cfg, gammas):
    if row.unstable:
        print(f"gamma = {row.gamma:<6g} unstable: {row.message}")
    else:
        flag = "" if row.converged else "  (not settled)"
        print(f"gamma = {row.gamma:<6g} C_ss = {row.steady_concurrence:.5f}  depth {row.depth}{flag}")
print(f"{time.perf_counter() - start:.0f} s")
