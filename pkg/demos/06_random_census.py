#%% ten thousand random states

import time

import numpy as np

from complementarity.states import ginibre_matrices
from complementarity.invariants import full_invariant_arrays

t = time.perf_counter()
rho = ginibre_matrices(10_000, seed=42)
values = full_invariant_arrays(rho)
print(f"{time.perf_counter() - t:.2f} s")

for key in ("residual_main", "residual_full", "residual_pdelta"):
    print(f"{key:16s} max {values[key].max():.2e}")

gap = np.sqrt(values["I2"]) - values["C"]
print("min I - C", gap.min(), " entangled fraction", np.mean(values["C"] > 0))

#%% how the budget is split on average

for key in ("V", "P", "I2", "C", "P_delta"):
    print(f"{key:8s} mean {values[key].mean():.4f}")
