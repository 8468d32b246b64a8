"""Closed-form state suite and random-state census behind ``verify``.

Each check compares computed invariants with the analytic values of a
family of preset states over a parameter grid and records the worst
absolute error.
"""

import itertools
from dataclasses import asdict, dataclass

import numpy as np

from . import channels, invariants
from .states import from_preset, ginibre_matrices

CASE_TOL = 1e-12
PURE_C_TOL = 1e-8
WERNER_C_TOL = 1e-10
ORDER_SLACK = 1e-10

GRID5 = np.linspace(0.0, np.pi, 5, endpoint=False) + 0.1
ANGLE_GRID = np.linspace(-np.pi, np.pi, 7)
GAMMA_GRID = np.linspace(0.0, 0.5, 6)
P_GRID = np.linspace(0.0, 1.0, 21)


@dataclass(frozen=True)
class Check:
    name: str
    max_error: float
    tol: float
    points: int

    def __post_init__(self):
        object.__setattr__(self, "max_error", float(self.max_error))

    @property
    def passed(self):
        return bool(self.max_error <= self.tol)

    def to_dict(self):
        return {**asdict(self), "passed": self.passed}


def _tuple(report):
    return np.array([report.V_A, report.V_N, report.P, report.I2])


def _family(name, states_and_expected, tol=CASE_TOL):
    worst = 0.0
    count = 0
    for state, expected in states_and_expected:
        got = _tuple(invariants.full_invariants(state))
        worst = max(worst, float(np.max(np.abs(got - np.asarray(expected)))))
        count += 1
    return Check(name, worst, tol, count)


def closed_form_checks():
    """Checks for the nine analytic state families, plus their concurrences."""
    checks = [
        _family("product state", [(from_preset("product"), (0, 0, 1, 0))]),
        _family("balanced path superposition", [(from_preset("path", alpha=np.pi / 4, beta=0.0), (1, 0, 0, 0))]),
        _family("quadrature superposition", [(from_preset("path", alpha=np.pi / 4, beta=np.pi / 2), (0, 1, 0, 0))]),
        _family(
            "unbalanced superposition",
            [
                (
                    from_preset("path", alpha=a, beta=b),
                    (np.sin(2 * a) * np.cos(b), np.sin(2 * a) * np.sin(b), np.cos(2 * a), 0.0),
                )
                for a, b in itertools.product(GRID5, ANGLE_GRID)
            ],
        ),
        _family("Bell state", [(from_preset("bell"), (0, 0, 0, 1))]),
        _family(
            "partially entangled",
            [(from_preset("partial", chi=c), (0, 0, np.cos(2 * c), np.sin(2 * c) ** 2)) for c in ANGLE_GRID],
        ),
        _family("maximally mixed", [(from_preset("maxmixed"), (0, 0, 0, 1))]),
        _family(
            "dephased superposition",
            [
                (
                    channels.apply(from_preset("polarized", phi=f, theta=t), channels.ChannelSpec("dephasing", g)),
                    ((1 - 2 * g) * np.cos(f), (1 - 2 * g) * np.sin(f), 0.0, 4 * g * (1 - g)),
                )
                for g, f, t in itertools.product(GAMMA_GRID, ANGLE_GRID, GRID5)
            ],
        ),
        _family("Werner mixture", [(from_preset("werner", p=p), (0, 0, 0, 1)) for p in P_GRID]),
    ]

    bell_c = abs(invariants.concurrence(from_preset("bell")) - 1.0)
    checks.append(Check("Bell concurrence", bell_c, PURE_C_TOL, 1))
    partial_c = max(abs(invariants.concurrence(from_preset("partial", chi=c)) - abs(np.sin(2 * c))) for c in ANGLE_GRID)
    checks.append(Check("partially entangled concurrence", partial_c, PURE_C_TOL, len(ANGLE_GRID)))
    werner_c = max(
        abs(invariants.concurrence(from_preset("werner", p=p)) - max(0.0, (3 * p - 1) / 2)) for p in P_GRID
    )
    checks.append(Check("Werner concurrence", werner_c, WERNER_C_TOL, len(P_GRID)))
    return checks


@dataclass(frozen=True)
class Census:
    samples: int
    seed: int
    max_residual_main: float
    max_residual_full: float
    max_residual_pdelta: float
    max_concurrence_excess: float
    concurrence_violations: int

    def checks(self, tol=CASE_TOL):
        return [
            Check("random main identity", self.max_residual_main, tol, self.samples),
            Check("random full identity", self.max_residual_full, tol, self.samples),
            Check("random P_delta identity", self.max_residual_pdelta, tol, self.samples),
            Check("random C <= I ordering", max(self.max_concurrence_excess, 0.0), ORDER_SLACK, self.samples),
        ]


def ginibre_census(n, seed=0, chunk=2500):
    """Worst identity residuals and ``C <= sqrt(I2)`` violations over ``n`` random states."""
    rho_all = ginibre_matrices(n, seed)
    worst = np.zeros(4)
    violations = 0
    worst[3] = -np.inf
    for start in range(0, n, chunk):
        rho = rho_all[start : start + chunk]
        values = invariants.full_invariant_arrays(rho)
        excess = values["C"] - np.sqrt(values["I2"])
        worst = np.maximum(
            worst,
            [
                values["residual_main"].max(),
                values["residual_full"].max(),
                values["residual_pdelta"].max(),
                excess.max(),
            ],
        )
        violations += int(np.count_nonzero(excess > ORDER_SLACK))
    return Census(n, int(seed), *(float(w) for w in worst[:3]), float(worst[3]), violations)
