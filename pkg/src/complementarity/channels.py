"""Preparatory phase, path dephasing and Werner mixing, plus parameter sweeps."""

from dataclasses import dataclass

import numpy as np

from .errors import BadParameter
from .invariants import full_invariants, reports_to_csv
from .matcore import SIGMA
from .states import JointState, validate

KINDS = ("phase", "dephasing", "werner")
PARAMETER_NAMES = {"phase": "phi", "dephasing": "gamma", "werner": "p"}
_ALIASES = {
    "PreparatoryPhase": "phase",
    "PathDephasing": "dephasing",
    "WernerMix": "werner",
}

PATH_Z = np.kron(SIGMA[3], SIGMA[0])


@dataclass(frozen=True)
class ChannelSpec:
    kind: str
    value: float

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        object.__setattr__(self, "kind", kind)
        check_parameter(kind, self.value)


def check_parameter(kind, value):
    if kind not in KINDS:
        raise BadParameter(f"unknown channel {kind!r}; choose from {KINDS}")
    if not np.isfinite(value):
        raise BadParameter(f"{PARAMETER_NAMES[kind]} must be finite")
    if kind == "dephasing" and not 0.0 <= value <= 0.5:
        raise BadParameter(f"dephasing strength gamma must lie in [0, 1/2], got {value}")
    if kind == "werner" and not 0.0 <= value <= 1.0:
        raise BadParameter(f"Werner weight p must lie in [0, 1], got {value}")


def phase_unitary(phi):
    """Phase ``e^{i phi}`` on slit 2, which rotates ``(V_A, V_N)`` by ``+phi``."""
    return np.diag([1.0, 1.0, np.exp(1j * phi), np.exp(1j * phi)])


def apply_matrix(m, spec):
    if spec.kind == "phase":
        u = phase_unitary(spec.value)
        return u @ m @ u.conj().T
    if spec.kind == "dephasing":
        g = spec.value
        return (1 - g) * m + g * (PATH_Z @ m @ PATH_Z)
    p = spec.value
    return p * m + (1 - p) * np.eye(4) / 4


def apply(s, spec):
    m = s.matrix if isinstance(s, JointState) else s
    return validate(apply_matrix(np.asarray(m, dtype=complex), spec))


@dataclass(frozen=True)
class Trajectory:
    kind: str
    grid: tuple
    reports: tuple

    @property
    def parameter(self):
        return PARAMETER_NAMES[self.kind]

    def column(self, name):
        return np.array([getattr(r, name) for r in self.reports])

    def to_csv(self):
        return reports_to_csv(self.reports, prefix=(self.parameter, self.grid))


def sweep(s, kind, grid):
    """Apply each grid value independently to the same input ``s``."""
    kind = _ALIASES.get(kind, kind)
    grid = tuple(float(x) for x in grid)
    specs = []
    for i, value in enumerate(grid):
        try:
            specs.append(ChannelSpec(kind, value))
        except BadParameter as exc:
            if kind not in KINDS:
                raise
            raise BadParameter(str(exc), index=i) from exc
    reports = tuple(full_invariants(apply(s, spec)) for spec in specs)
    return Trajectory(kind, grid, reports)
