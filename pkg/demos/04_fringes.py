#%% simulate a phase-stepped fringe and read the state back

import numpy as np

from complementarity import PathState
from complementarity.interferometry import CANONICAL_PHASES, extract_four_point, extract_least_squares, synth_fringes

truth = PathState.from_bloch((0.3, 0.5, -0.2))
rec = synth_fringes(truth, CANONICAL_PHASES, I0=2.0)
print(rec.to_csv())

res = extract_four_point(rec, truth.populations())
print("four-point   ", res)
print("residual", res.residual())

#%% a denser grid and a least-squares fit

rec = synth_fringes(truth, np.linspace(0, 2 * np.pi, 24, endpoint=False), noise_sigma=0.005, seed=1)
print("least-squares", extract_least_squares(rec, truth.populations()))

#%% with noise the estimate can leave the Bloch ball

edge = PathState.from_bloch((1.0, 0.0, 0.0))
for seed in range(5):
    res = extract_four_point(synth_fringes(edge, CANONICAL_PHASES, noise_sigma=0.01, seed=seed), edge.populations())
    print(f"seed {seed}: I2={res.I2:+.2e} flagged={res.positivity_violated}")
