#%% splitting a coherence matrix into its real and imaginary parts

import numpy as np

from complementarity import Observable, expectation, from_preset
from complementarity.matcore import hermitian_split
from complementarity.observables import PAULI_TENSORS
from complementarity.observables import decoupled_expectation, sector_components

rho = from_preset("path", alpha=np.pi / 4, beta=np.pi / 2).matrix
pair = hermitian_split(rho)
np.set_printoptions(precision=3, suppress=True)
print("A (real symmetric)\n", pair.sym)
print("N (real antisymmetric)\n", pair.antisym)

#%% which of the 16 product observables see N

# rows: path Pauli index, columns: polarization Pauli index
for mu in range(4):
    print(" ".join(PAULI_TENSORS[mu, nu].sector for nu in range(4)))

#%% expectations only mix like with like

o = Observable.from_coefficients(np.random.default_rng(0).normal(size=(4, 4)))
o_s, o_a = sector_components(o)
print("direct   ", np.trace(rho @ o.matrix).real)
print("decoupled", decoupled_expectation(rho, o))
print("Tr(A O_S) =", np.trace(pair.sym @ o_s), " -Tr(N O_A) =", -np.trace(pair.antisym @ o_a))

# this state is all quadrature: sigma_2 on the path is the only visibility it shows
print("<s10> =", expectation(rho, Observable.from_name("s10")), " <s20> =", expectation(rho, Observable.from_name("s20")))
