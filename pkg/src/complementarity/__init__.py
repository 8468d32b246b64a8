"""Path-polarization complementarity invariants for the polarized double slit.

Submodules:

- ``matcore``: Hermitian split, partial trace, Jacobi eigensolver, matrix functions
- ``states``: joint and reduced states, presets, Fano form, random states
- ``observables``: Pauli tensor basis and its symmetric/antisymmetric sectors
- ``invariants``: visibilities, predictability, mixedness, concurrence, purity indices
- ``channels``: preparatory phase, path dephasing, Werner mixing, sweeps
- ``interferometry``: fringe synthesis and phase-shifting extraction
- ``maxent``: maximum-entropy inference from expectation constraints
"""

from .channels import ChannelSpec, apply, sweep
from .invariants import InvariantReport, concurrence, full_invariants, main_identity_residual, path_invariants
from .maxent import Constraint, solve
from .observables import Observable, expectation, pauli_tensor
from .states import JointState, PathState, from_fano, from_preset, reduce_path, sample_ginibre, to_fano, validate

__version__ = "0.1.0"

__all__ = [
    "ChannelSpec",
    "Constraint",
    "InvariantReport",
    "JointState",
    "Observable",
    "PathState",
    "apply",
    "concurrence",
    "expectation",
    "from_fano",
    "from_preset",
    "full_invariants",
    "main_identity_residual",
    "path_invariants",
    "pauli_tensor",
    "reduce_path",
    "sample_ginibre",
    "solve",
    "sweep",
    "to_fano",
    "validate",
]
