#%% the least-committal state behind a few numbers

import numpy as np

from complementarity import Constraint, Observable, from_preset, solve, to_fano
from complementarity.maxent import sector_verdict

data = {"s10": 0.3, "s20": -0.2, "s30": 0.5}
constraints = [Constraint(Observable.from_name(k), v) for k, v in data.items()]
sol = solve(constraints)
np.set_printoptions(precision=4, suppress=True)
print(sol.state.matrix.real)
print("iterations", sol.iterations, " max residual", sol.max_residual)

# polarization is left maximally mixed
f = to_fano(sol.state)
print("r_pol", f.r_pol, " |T|", np.linalg.norm(f.T))

#%% real data in, real state out

sym_only = [Constraint(Observable.from_name("s10"), 0.5), Constraint(Observable.from_name("s33"), 0.2)]
print(sector_verdict(solve(sym_only), sym_only))

quad = [Constraint(Observable.from_name("s20"), 0.4)]
print(sector_verdict(solve(quad), quad))

#%% pinning every observable reproduces the state

rho = from_preset("werner", p=0.7).matrix
full = [
    Constraint(Observable.tensor(m, n), float(np.trace(rho @ Observable.tensor(m, n).matrix).real))
    for m in range(4)
    for n in range(4)
    if (m, n) != (0, 0)
]
print("tomography error", np.linalg.norm(solve(full).state.matrix - rho))

#%% targets on the sphere are flagged

edge = [Constraint(Observable.from_name(k), v) for k, v in {"s10": 0.6, "s20": 0.0, "s30": 0.8}.items()]
print("on boundary:", solve(edge).on_boundary)
