#%% four numbers that always add up to one

import numpy as np

from complementarity import full_invariants, from_preset

# a few states, from a single path to a maximally entangled pair
for name, params in [
    ("product", {}),
    ("path", {"alpha": np.pi / 4, "beta": 0.0}),
    ("path", {"alpha": np.pi / 4, "beta": np.pi / 2}),
    ("path", {"alpha": 0.3, "beta": 1.0}),
    ("partial", {"chi": 0.4}),
    ("bell", {}),
    ("maxmixed", {}),
]:
    rep = full_invariants(from_preset(name, **params))
    total = rep.V_A**2 + rep.V_N**2 + rep.P**2 + rep.I2
    print(f"{name:9s} V_A={rep.V_A:+.3f} V_N={rep.V_N:+.3f} P={rep.P:+.3f} I2={rep.I2:.3f}  sum={total:.15f}")

#%% the entanglement floor

# C never exceeds the mixedness amplitude I = sqrt(I2); pure states sit on the line
for chi in np.linspace(0, np.pi / 4, 5):
    rep = full_invariants(from_preset("partial", chi=chi))
    print(f"chi={chi:.3f}  C={rep.C:.6f}  I={np.sqrt(rep.I2):.6f}")

# Werner mixtures keep I = 1 while C drops to zero below p = 1/3
for p in (1.0, 0.6, 1 / 3, 0.1):
    rep = full_invariants(from_preset("werner", p=p))
    print(f"p={p:.3f}  C={rep.C:.6f}  I={np.sqrt(rep.I2):.6f}")

#%% the full budget including polarization

rep = full_invariants(from_preset("partial", chi=0.4))
lhs = rep.V_A**2 + rep.V_N**2 + rep.P**2 + rep.P_pol**2 + rep.T_frob**2
print("five-term sum", lhs, " 4 mu^2 - 1 =", 4 * rep.mu2 - 1, " 3 P_delta^2 =", 3 * rep.P_delta**2)
print("purity indices", rep.P1, rep.P2, rep.P3)
