"""Joint path-polarization states, reduced path states and the Fano form.

The ordered basis is ``{|1,H>, |1,V>, |2,H>, |2,V>}``: path is the outer
(slow) index and polarization the inner one, so ``kron(path, pol)`` gives
matrices in this basis.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import matcore
from .errors import BadParameter, BadTrace, DimensionMismatch, NotPositive
from .matcore import SIGMA
from .rng import GaussianSource

TRACE_RENORM_TOL = 1e-6

# PAULI_PAIRS[mu, nu] = sigma_mu (path) (x) sigma_nu (polarization)
PAULI_PAIRS = np.einsum("aij,bkl->abikjl", SIGMA, SIGMA).reshape(4, 4, 4, 4)
PAULI_PAIRS.setflags(write=False)

KET_1 = np.array([1, 0], dtype=complex)
KET_2 = np.array([0, 1], dtype=complex)
KET_H = np.array([1, 0], dtype=complex)
KET_V = np.array([0, 1], dtype=complex)


@dataclass(frozen=True)
class JointState:
    """Validated 4x4 coherence matrix. Build through :func:`validate` or a constructor."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def sectors(self):
        return matcore.hermitian_split(self.matrix)


@dataclass(frozen=True)
class PathState:
    matrix: np.ndarray = field(repr=False)
    bloch: tuple

    @classmethod
    def from_bloch(cls, r):
        r = tuple(float(x) for x in r)
        if np.linalg.norm(r) > 1 + 1e-10:
            raise NotPositive(0.5 * (1 - np.linalg.norm(r)))
        m = 0.5 * (SIGMA[0] + np.einsum("k,kij->ij", r, SIGMA[1:]))
        return cls(m, r)

    def populations(self):
        return float(self.matrix[0, 0].real), float(self.matrix[1, 1].real)


@dataclass(frozen=True)
class FanoForm:
    r_cam: np.ndarray
    r_pol: np.ndarray
    T: np.ndarray


@dataclass(frozen=True)
class StatePreset:
    """Named preset with its parameters (angles in radians, ``p`` in [0, 1])."""

    kind: str
    params: dict = field(default_factory=dict)


def validate(m):
    """Check Hermiticity, unit trace and positivity; return a :class:`JointState`.

    A trace within ``TRACE_RENORM_TOL`` of 1 is divided out exactly; anything
    further away is rejected with :class:`BadTrace`.
    """
    m = np.array(matcore.as_cmatrix(m, dims=(4,)), dtype=complex)
    if m.shape != (4, 4):
        raise DimensionMismatch(f"expected a single 4x4 matrix, got {m.shape}")
    matcore.check_hermitian(m)
    m = 0.5 * (m + m.conj().T)
    tr = np.trace(m).real
    if abs(tr - 1.0) > TRACE_RENORM_TOL:
        raise BadTrace(tr)
    # at rounding level the division would only perturb the stored bits
    if abs(tr - 1.0) > 8 * np.finfo(float).eps:
        m = m / tr
    lowest = matcore.eig_hermitian(m, check=False).eigenvalues[-1]
    if lowest < -matcore.PSD_CLAMP:
        raise NotPositive(lowest)
    return JointState(m)


def _pure(psi):
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def _require_finite(**params):
    for name, value in params.items():
        if not np.isfinite(value):
            raise BadParameter(f"{name} must be finite, got {value!r}")


PRESET_PARAMS = {
    "product": (),
    "path": ("alpha", "beta"),
    "polarized": ("phi", "theta"),
    "partial": ("chi",),
    "bell": (),
    "werner": ("p",),
    "maxmixed": (),
}

PRESET_ALIASES = {
    "ProductPure": "product",
    "PathSuperposition": "path",
    "PolarizedSuperposition": "polarized",
    "PartiallyEntangled": "partial",
    "Bell": "bell",
    "Werner": "werner",
    "MaximallyMixed": "maxmixed",
}


def bell_vector():
    return (np.kron(KET_1, KET_H) + np.kron(KET_2, KET_V)) / np.sqrt(2)


def preset_matrix(kind, **params):
    kind = PRESET_ALIASES.get(kind, kind)
    if kind not in PRESET_PARAMS:
        raise BadParameter(f"unknown preset {kind!r}; choose from {sorted(PRESET_PARAMS)}")
    unknown = set(params) - set(PRESET_PARAMS[kind])
    if unknown:
        raise BadParameter(f"preset {kind!r} takes no parameter(s) {sorted(unknown)}")
    _require_finite(**params)

    if kind == "product":
        return _pure(np.kron(KET_1, KET_H))
    if kind == "path":
        a, b = params.get("alpha", np.pi / 4), params.get("beta", 0.0)
        path = np.cos(a) * KET_1 + np.sin(a) * np.exp(1j * b) * KET_2
        return _pure(np.kron(path, KET_H))
    if kind == "polarized":
        phi, theta = params.get("phi", 0.0), params.get("theta", 0.0)
        path = (KET_1 + np.exp(1j * phi) * KET_2) / np.sqrt(2)
        pol = np.cos(theta) * KET_H + np.sin(theta) * KET_V
        return _pure(np.kron(path, pol))
    if kind == "partial":
        chi = params.get("chi", np.pi / 8)
        return _pure(np.cos(chi) * np.kron(KET_1, KET_H) + np.sin(chi) * np.kron(KET_2, KET_V))
    if kind == "bell":
        return _pure(bell_vector())
    if kind == "werner":
        p = params.get("p", 1.0)
        if not 0.0 <= p <= 1.0:
            raise BadParameter(f"Werner weight p must lie in [0, 1], got {p}")
        return p * _pure(bell_vector()) + (1 - p) * np.eye(4) / 4
    return np.eye(4, dtype=complex) / 4


def from_preset(preset, **params):
    """Build a preset state. ``preset`` is a :class:`StatePreset` or a preset name.

    ``polarized`` is the pure input of the path-dephasing example; apply
    :func:`complementarity.channels.apply` to it to obtain the dephased state.
    """
    if isinstance(preset, StatePreset):
        params = {**preset.params, **params}
        preset = preset.kind
    return validate(preset_matrix(preset, **params))


def reduce_path(s):
    m = matcore.partial_trace_pol(s.matrix if isinstance(s, JointState) else s)
    r = tuple(float(matcore.trace_product(m, SIGMA[k]).real) for k in (1, 2, 3))
    return PathState(m, r)


def to_fano(s):
    m = s.matrix if isinstance(s, JointState) else np.asarray(s)
    c = np.einsum("ij,abji->ab", m, PAULI_PAIRS).real
    return FanoForm(r_cam=c[1:, 0].copy(), r_pol=c[0, 1:].copy(), T=c[1:, 1:].copy())


def fano_matrix(f):
    c = np.zeros((4, 4))
    c[0, 0] = 1.0
    c[1:, 0] = f.r_cam
    c[0, 1:] = f.r_pol
    c[1:, 1:] = f.T
    return 0.25 * np.einsum("ab,abij->ij", c, PAULI_PAIRS)


def from_fano(f):
    return validate(fano_matrix(f))


def purity(s):
    m = s.matrix if isinstance(s, JointState) else np.asarray(s)
    return float(matcore.trace_product(m, m).real)


def _source(seed):
    return seed if isinstance(seed, GaussianSource) else GaussianSource(seed)


def ginibre_matrices(n, seed=0):
    """``n`` normalized ``G G^H / Tr(G G^H)`` matrices, shape ``(n, 4, 4)``."""
    g = _source(seed).complex_normal((n, 4, 4))
    w = g @ np.swapaxes(g.conj(), -1, -2)
    tr = np.trace(w, axis1=-2, axis2=-1).real
    w = w / tr[:, None, None]
    return 0.5 * (w + np.swapaxes(w.conj(), -1, -2))


def sample_ginibre(seed=0):
    """One random state; ``seed`` is an integer or a :class:`GaussianSource` to draw from."""
    return validate(ginibre_matrices(1, seed)[0])


# JSON state files: {"dim": d, "re": [...d*d], "im": [...d*d]} in row-major order


def matrix_to_dict(m):
    m = np.asarray(m, dtype=complex)
    return {"dim": int(m.shape[0]), "re": m.real.ravel().tolist(), "im": m.imag.ravel().tolist()}


def matrix_from_dict(d):
    try:
        dim = int(d["dim"])
        re = np.asarray(d["re"], dtype=float)
        im = np.asarray(d["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state object: {exc}") from exc
    if dim not in (2, 4) or re.size != dim * dim or im.size != dim * dim:
        raise DimensionMismatch(f"state object needs dim in (2, 4) and {dim}*{dim} entries")
    return (re + 1j * im).reshape(dim, dim)


def dumps_state(s):
    m = s.matrix if isinstance(s, (JointState, PathState)) else s
    return json.dumps(matrix_to_dict(m))


def loads_state(text):
    m = matrix_from_dict(json.loads(text))
    if m.shape != (4, 4):
        raise DimensionMismatch("joint state files must have dim 4")
    return validate(m)
