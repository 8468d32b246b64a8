#%% dephasing moves weight from visibility to mixedness

import numpy as np

from complementarity import from_preset, sweep

start = from_preset("polarized", phi=np.pi / 3, theta=0.2)
traj = sweep(start, "dephasing", np.linspace(0, 0.5, 6))
for gamma, rep in zip(traj.grid, traj.reports):
    print(f"gamma={gamma:.1f}  V^2={rep.V**2:.4f}  I2={rep.I2:.4f}  P={rep.P:+.1e}")

#%% a phase shift only rotates the visibility

traj = sweep(from_preset("path", alpha=0.4, beta=0.0), "phase", np.linspace(0, 2 * np.pi, 9))
for phi, rep in zip(traj.grid, traj.reports):
    print(f"phi={phi:.3f}  (V_A, V_N)=({rep.V_A:+.4f}, {rep.V_N:+.4f})  V={rep.V:.12f}")

#%% the same trajectory as CSV for plotting elsewhere

print(traj.to_csv().splitlines()[0])
