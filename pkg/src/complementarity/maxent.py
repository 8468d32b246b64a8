"""Maximum-entropy state inference from expectation-value constraints.

The Gibbs state ``exp(-sum_k lam_k O_k) / Z`` is found by minimizing the
convex dual ``F(lam) = ln Z(lam) + sum_k lam_k o_k`` with a damped Newton
iteration. Derivatives of ``ln Z`` are evaluated in the eigenbasis of the
exponent, using divided differences of ``exp`` for the Hessian.
"""

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import matcore
from .errors import DependentConstraints, Infeasible, NotConverged
from .observables import Observable
from .states import JointState, matrix_from_dict, matrix_to_dict, validate

FEASIBILITY_SLACK = 1e-9
NULL_TOL = 1e-10


@dataclass(frozen=True)
class Constraint:
    observable: Observable
    target: float

    @property
    def sector(self):
        return self.observable.sector

    def to_dict(self):
        name = self.observable.name
        obs = name if name is not None else self.observable.coefficients.ravel().tolist()
        return {"observable": obs, "target": self.target}

    @classmethod
    def from_dict(cls, d):
        obs = d["observable"]
        if isinstance(obs, str):
            observable = Observable.from_name(obs)
        else:
            if len(obs) != 16:
                raise ValueError("observable coefficient list must have 16 entries")
            observable = Observable.from_coefficients(obs)
        target = float(d["target"])
        if not np.isfinite(target):
            raise ValueError("constraint target must be finite")
        return cls(observable, target)


@dataclass(frozen=True)
class SolverSettings:
    grad_tol: float = 1e-11
    max_iter: int = 200
    divergence_bound: float = 1e6
    max_halvings: int = 30
    cond_limit: float = 1e12
    # a Gibbs state is full rank; a smallest eigenvalue below this marks a boundary target
    boundary_eig: float = 1e-9


@dataclass(frozen=True)
class MaxEntSolution:
    lambdas: np.ndarray
    state: JointState
    logZ: float
    residuals: np.ndarray
    iterations: int
    converged: bool
    on_boundary: bool = False

    @property
    def max_residual(self):
        return float(np.max(self.residuals)) if self.residuals.size else 0.0


@dataclass(frozen=True)
class SectorVerdict:
    n_frob: float
    V_N: float
    a_constrained: bool
    a_nonzero_target: bool
    holds: bool


@dataclass
class _Gibbs:
    """Exponent eigendata at one multiplier vector."""

    log_z: float
    rho: np.ndarray
    eigenvalues: np.ndarray
    weights: np.ndarray
    vectors: np.ndarray
    means: np.ndarray = field(default=None)


def _operators(constraints):
    if not constraints:
        return np.zeros((0, 4, 4), dtype=complex)
    return np.stack([c.observable.matrix for c in constraints])


def _gibbs(lambdas, ops):
    exponent = -np.einsum("k,kij->ij", lambdas, ops) if len(ops) else np.zeros((4, 4), dtype=complex)
    spec = matcore.eig_hermitian(exponent, check=False)
    h = spec.eigenvalues
    top = h[0]
    shifted = np.exp(h - top)
    total = shifted.sum()
    weights = shifted / total
    u = spec.eigenvectors
    rho = (u * weights) @ u.conj().T
    g = _Gibbs(top + np.log(total), rho, h, weights, u)
    g.means = np.einsum("ij,kji->k", rho, ops).real
    return g


def log_partition(lambdas, constraints):
    return _gibbs(np.asarray(lambdas, dtype=float), _operators(constraints)).log_z


def _divided_exp(h, weights):
    """Divided differences of exp over the spectrum, scaled by 1/Z."""
    d = h[:, None] - h[None, :]
    wi = np.broadcast_to(weights[:, None], d.shape)
    wj = np.broadcast_to(weights[None, :], d.shape)
    near = np.abs(d) < 1.0
    safe = np.where(d == 0, 1.0, d)
    with np.errstate(over="ignore", invalid="ignore"):
        close = wj * np.where(d == 0, 1.0, np.expm1(np.where(near, d, 0.0)) / safe)
    far = (wi - wj) / safe
    return np.where(near, close, far)


def _hessian(g, ops):
    rotated = np.einsum("ai,kab,bj->kij", g.vectors.conj(), ops, g.vectors)
    kernel = _divided_exp(g.eigenvalues, g.weights)
    second = np.einsum("kji,lij,ij->kl", rotated, rotated, kernel).real
    hess = second - np.outer(g.means, g.means)
    return 0.5 * (hess + hess.T)


def dual_objective(lambdas, constraints):
    lambdas = np.asarray(lambdas, dtype=float)
    targets = np.array([c.target for c in constraints], dtype=float)
    return log_partition(lambdas, constraints) + float(lambdas @ targets)


def _check_feasible(constraints):
    for k, c in enumerate(constraints):
        bound = c.observable.op_norm()
        if abs(c.target) > bound + FEASIBILITY_SLACK:
            raise Infeasible(f"constraint {k}: |target| {abs(c.target):.6g} exceeds operator norm {bound:.6g}")


def _newton_step(lam, g, ops, targets, objective, slack, settings):
    grad = targets - g.means
    try:
        step = np.linalg.solve(_hessian(g, ops), -grad)
    except np.linalg.LinAlgError:
        return None
    # near a pure Gibbs state the Hessian is singular and the step useless
    if not np.all(np.isfinite(step)) or step @ grad >= 0:
        return None
    t = 1.0
    for _ in range(settings.max_halvings):
        trial = lam + t * step
        g_trial = _gibbs(trial, ops)
        obj_trial = g_trial.log_z + trial @ targets
        if obj_trial <= objective + slack:
            return trial, g_trial, obj_trial
        t *= 0.5
    return None


def _descent_step(lam, grad, ops, targets, objective, slack, max_doublings=60):
    """Steepest descent with step doubling, used when Newton stalls.

    Outside the state space the dual falls without bound along a ray, so
    doubling carries the multipliers to the divergence bound quickly.
    """
    best = None
    t = 1.0
    for _ in range(max_doublings):
        trial = lam - t * grad
        g_trial = _gibbs(trial, ops)
        obj_trial = g_trial.log_z + trial @ targets
        if obj_trial > (best[2] if best else objective + slack):
            break
        best = (trial, g_trial, obj_trial)
        t *= 2.0
    return best


def solve(constraints, settings=None):
    """Fit the maximum-entropy state to ``constraints`` (a list of :class:`Constraint`).

    Raises :class:`Infeasible` when the multipliers run past
    ``settings.divergence_bound`` (targets outside the state space),
    :class:`DependentConstraints` when the constraint operators are linearly
    dependent modulo the identity, and :class:`NotConverged` when the
    iteration cap is reached otherwise. Targets on the boundary of the state
    space converge to a nearly rank-deficient state and are reported with
    ``on_boundary=True``.
    """
    settings = settings or SolverSettings()
    constraints = list(constraints)
    ops = _operators(constraints)
    targets = np.array([c.target for c in constraints], dtype=float)
    n = len(constraints)
    _check_feasible(constraints)

    lam = np.zeros(n)
    g = _gibbs(lam, ops)
    if n:
        hess0 = _hessian(g, ops)
        cond = np.linalg.cond(hess0)
        if not np.isfinite(cond) or cond > settings.cond_limit:
            raise DependentConstraints(f"constraint covariance at the maximally mixed state has condition {cond:.3e}")

    objective = g.log_z + lam @ targets
    converged = False
    iterations = 0
    for iterations in range(settings.max_iter + 1):
        grad = targets - g.means
        if not n or np.max(np.abs(grad)) <= settings.grad_tol:
            converged = True
            break
        if iterations == settings.max_iter:
            break
        slack = 4 * np.finfo(float).eps * max(1.0, abs(objective))
        accepted = _newton_step(lam, g, ops, targets, objective, slack, settings)
        if accepted is None:
            accepted = _descent_step(lam, grad, ops, targets, objective, slack)
        if accepted is None:
            raise NotConverged(f"line search failed at iteration {iterations} (gradient {np.max(np.abs(grad)):.3e})")
        trial, g_trial, obj_trial = accepted
        lam, g, objective = trial, g_trial, obj_trial
        if np.max(np.abs(lam)) > settings.divergence_bound:
            raise Infeasible(
                f"multipliers diverged past {settings.divergence_bound:.1e} with gradient {np.max(np.abs(targets - g.means)):.3e}"
            )

    if not converged:
        raise NotConverged(f"no convergence in {settings.max_iter} Newton steps")
    state = validate(g.rho)
    lowest = matcore.eig_hermitian(state.matrix, check=False).eigenvalues[-1]
    return MaxEntSolution(
        lambdas=lam,
        state=state,
        logZ=float(g.log_z),
        residuals=np.abs(g.means - targets),
        iterations=iterations,
        converged=True,
        on_boundary=bool(lowest < settings.boundary_eig),
    )


def sector_verdict(sol, constraints):
    pair = matcore.hermitian_split(sol.state.matrix)
    n_frob = float(np.linalg.norm(pair.antisym))
    rho_cam = matcore.partial_trace_pol(sol.state.matrix)
    v_n = float(-2.0 * rho_cam[0, 1].imag + 0.0)
    a_constrained = any(c.sector != "S" for c in constraints)
    a_nonzero = any(c.sector == "A" and c.target != 0 for c in constraints)
    if not a_constrained:
        holds = n_frob <= NULL_TOL
    elif a_nonzero:
        holds = n_frob > 0
    else:
        holds = True
    return SectorVerdict(n_frob, v_n, a_constrained, a_nonzero, holds)


def logZ_gradient_check(lambdas, constraints, step=1e-6):
    """Max deviation between ``d ln Z / d lam_k = -<O_k>`` and central differences."""
    lam = np.asarray(lambdas, dtype=float)
    ops = _operators(constraints)
    if not len(ops):
        return 0.0
    analytic = -_gibbs(lam, ops).means
    numeric = np.empty_like(analytic)
    for k in range(len(lam)):
        e = np.zeros_like(lam)
        e[k] = step
        numeric[k] = (_gibbs(lam + e, ops).log_z - _gibbs(lam - e, ops).log_z) / (2 * step)
    return float(np.max(np.abs(analytic - numeric)))


def logZ_hessian(lambdas, constraints):
    """Analytic Hessian of ``ln Z`` (exposed for tests)."""
    ops = _operators(constraints)
    return _hessian(_gibbs(np.asarray(lambdas, dtype=float), ops), ops)


# problem and solution files


def parse_problem(text):
    """Parse a problem file: a list of constraints, or ``{"constraints": [...], "settings": {...}}``."""
    data = json.loads(text)
    settings = SolverSettings()
    if isinstance(data, dict):
        settings = SolverSettings(**data.get("settings", {}))
        data = data.get("constraints", [])
    if not isinstance(data, list):
        raise ValueError("problem must be a list of constraints")
    try:
        return [Constraint.from_dict(d) for d in data], settings
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed constraint: {exc}") from exc


def solution_to_dict(sol, constraints):
    verdict = sector_verdict(sol, constraints)
    return {
        "constraints": [c.to_dict() for c in constraints],
        "lambdas": sol.lambdas.tolist(),
        "state": matrix_to_dict(sol.state.matrix),
        "logZ": sol.logZ,
        "residuals": sol.residuals.tolist(),
        "iterations": sol.iterations,
        "converged": sol.converged,
        "on_boundary": sol.on_boundary,
        "verdict": asdict(verdict),
    }


def solution_from_dict(d):
    return MaxEntSolution(
        lambdas=np.asarray(d["lambdas"], dtype=float),
        state=validate(matrix_from_dict(d["state"])),
        logZ=float(d["logZ"]),
        residuals=np.asarray(d["residuals"], dtype=float),
        iterations=int(d["iterations"]),
        converged=bool(d["converged"]),
        on_boundary=bool(d["on_boundary"]),
    )
