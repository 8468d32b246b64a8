"""Scalar invariants of the joint and path-reduced states.

The array functions (``*_arrays``) take a stack of 4x4 matrices with shape
``(..., 4, 4)`` and return numpy arrays; the plain functions wrap them for a
single :class:`~complementarity.states.JointState` or
:class:`~complementarity.states.PathState`.
"""

import csv
import io
import json
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import matcore
from .errors import InconsistentInvariants
from .matcore import SIGMA
from .states import PAULI_PAIRS, JointState, PathState, reduce_path

I2_AGREEMENT_TOL = 1e-12
PURE_TOL = 1e-10
# eigenvalues below this fraction of the largest one are rounding noise
RANK_FLOOR = 16 * np.finfo(float).eps
CSV_DIGITS = 12

SPIN_FLIP = np.kron(SIGMA[2], SIGMA[2])


@dataclass(frozen=True)
class InvariantReport:
    V_A: float
    V_N: float
    P: float
    I2: float
    V: float
    C: float
    mu2: float
    P_pol: float
    T_frob: float
    P_delta: float
    P1: float
    P2: float
    P3: float
    residual_main: float
    residual_full: float
    residual_pdelta: float
    # V_N^2 / (V_A^2 + V_N^2); None when the fringe has no visibility
    quadrature_fraction: float | None = None

    @classmethod
    def columns(cls):
        return [f.name for f in fields(cls)]

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        return cls(**{k: (None if d[k] is None else float(d[k])) for k in cls.columns()})

    def csv_row(self):
        return [format_csv(v) for v in asdict(self).values()]


def format_csv(value):
    if value is None:
        return ""
    return format(float(value), f".{CSV_DIGITS}g")


def reports_to_csv(reports, prefix=None):
    """CSV text with the report columns; ``prefix`` is an optional ``(name, values)`` column."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = InvariantReport.columns()
    if prefix is not None:
        header = [prefix[0]] + header
    writer.writerow(header)
    for i, rep in enumerate(reports):
        row = rep.csv_row()
        if prefix is not None:
            row = [format_csv(prefix[1][i])] + row
        writer.writerow(row)
    return buf.getvalue()


def _det2(m):
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def path_invariant_arrays(rho_cam):
    """``(V_A, V_N, P, I2)`` of 2x2 reduced states; I2 = 4 det, unclamped.

    Raises :class:`InconsistentInvariants` if ``1 - |r|^2``, ``4 det`` and
    ``2 (1 - Tr rho^2)`` differ by more than ``I2_AGREEMENT_TOL``.
    """
    m = np.asarray(rho_cam, dtype=complex)
    # "+ 0.0" folds negative zeros so reports print 0.0
    v_a = 2.0 * m[..., 0, 1].real + 0.0
    v_n = -2.0 * m[..., 0, 1].imag + 0.0
    p = (m[..., 0, 0] - m[..., 1, 1]).real + 0.0
    i2_det = 4.0 * _det2(m).real
    i2_bloch = 1.0 - (v_a**2 + v_n**2 + p**2)
    i2_purity = 2.0 * (1.0 - matcore.trace_product(m, m).real)
    spread = np.max(np.abs([i2_det - i2_bloch, i2_det - i2_purity, i2_bloch - i2_purity]))
    if spread > I2_AGREEMENT_TOL:
        raise InconsistentInvariants(f"mixedness routes disagree by {spread:.3e}")
    return v_a, v_n, p, i2_det


def path_invariants(p):
    """``(V_A, V_N, P, I2)`` with I2 clamped to [0, 1]."""
    m = p.matrix if isinstance(p, PathState) else reduce_path(p).matrix
    v_a, v_n, pr, i2 = path_invariant_arrays(m)
    return float(v_a), float(v_n), float(pr), float(np.clip(i2, 0.0, 1.0))


def main_identity_residual(p):
    """``|V_A^2 + V_N^2 + P^2 + I2 - 1|`` before any clamping."""
    m = p.matrix if isinstance(p, PathState) else reduce_path(p).matrix
    return float(main_residual_arrays(m))


def main_residual_arrays(rho_cam):
    v_a, v_n, p, i2 = path_invariant_arrays(rho_cam)
    return np.abs(v_a**2 + v_n**2 + p**2 + i2 - 1.0)


def concurrence_arrays(rho):
    """Wootters concurrence of a stack of two-qubit states.

    Uses the Hermitian surrogate ``sqrt(rho) rho~ sqrt(rho)``, which has the
    same spectrum as ``rho rho~``. Spectra are cut at ``RANK_FLOOR`` relative
    to their largest eigenvalue before square roots are taken.
    """
    rho = np.asarray(rho, dtype=complex)
    flipped = SPIN_FLIP @ rho.conj() @ SPIN_FLIP
    root = matcore.mat_sqrt_psd(rho, floor=RANK_FLOOR)
    surrogate = root @ flipped @ root
    surrogate = 0.5 * (surrogate + matcore.dagger(surrogate))
    lam = matcore.clamp_psd(matcore.eig_hermitian(surrogate, check=False).eigenvalues)
    lam = matcore.rank_floor(lam, RANK_FLOOR)
    s = np.sqrt(lam)
    return np.maximum(0.0, s[..., 0] - s[..., 1] - s[..., 2] - s[..., 3])


def concurrence(s):
    m = s.matrix if isinstance(s, JointState) else s
    return float(concurrence_arrays(m))


def mixedness_arrays(rho, spectrum=None):
    """``I2 = 4 det rho_cam`` of joint states, free of cancellation.

    With ``rho = sum_k w_k |psi_k><psi_k|`` and ``X`` the 2x8 stack of
    ``sqrt(w_k) M_k`` (``M_k`` is ``psi_k`` as a path x polarization matrix),
    ``rho_cam = X X^H`` and Cauchy-Binet turns the determinant into a sum of
    squared 2x2 minors. Near-pure reduced states then keep full relative
    accuracy, which matters once the square root ``I`` is taken.
    """
    rho = np.asarray(rho, dtype=complex)
    spec = spectrum if spectrum is not None else matcore.eig_hermitian(rho, check=False)
    w = matcore.rank_floor(matcore.clamp_psd(spec.eigenvalues), RANK_FLOOR)
    x = spec.eigenvectors * np.sqrt(w)[..., None, :]
    x = x.reshape(*x.shape[:-2], 2, 2, 4).reshape(*x.shape[:-2], 2, 8)
    row0, row1 = x[..., 0, :], x[..., 1, :]
    minors = row0[..., :, None] * row1[..., None, :] - row0[..., None, :] * row1[..., :, None]
    return 2.0 * np.sum(np.abs(minors) ** 2, axis=(-2, -1))


def purity_indices(eigenvalues):
    """``(P1, P2, P3)`` from eigenvalues sorted in descending order."""
    lam = matcore.clamp_psd(eigenvalues)
    l1, l2, l3, l4 = (lam[..., k] for k in range(4))
    return tuple(np.clip(x, 0.0, 1.0) for x in (l1 - l2, l1 + l2 - 2 * l3, l1 + l2 + l3 - 3 * l4))


def full_invariant_arrays(rho):
    """Dictionary of invariant arrays for a stack of joint states."""
    rho = np.asarray(rho, dtype=complex)
    c = np.einsum("...ij,abji->...ab", rho, PAULI_PAIRS).real
    rho_cam = matcore.partial_trace_pol(rho)
    v_a, v_n, p, i2 = path_invariant_arrays(rho_cam)
    r_pol2 = np.sum(c[..., 0, 1:] ** 2, axis=-1)
    t2 = np.sum(c[..., 1:, 1:] ** 2, axis=(-2, -1))
    mu2 = matcore.trace_product(rho, rho).real
    spec = matcore.eig_hermitian(rho, check=False)
    lam = spec.eigenvalues
    pdelta2 = 4.0 / 3.0 * (np.sum(lam**2, axis=-1) - 0.25)
    p1, p2, p3 = purity_indices(lam)
    lhs = v_a**2 + v_n**2 + p**2 + r_pol2 + t2
    vis2 = v_a**2 + v_n**2
    return {
        "V_A": v_a,
        "V_N": v_n,
        "P": p,
        "I2": np.clip(mixedness_arrays(rho, spec), 0.0, 1.0),
        "V": np.sqrt(vis2),
        "C": concurrence_arrays(rho),
        "mu2": mu2,
        "P_pol": np.sqrt(r_pol2),
        "T_frob": np.sqrt(t2),
        "P_delta": np.sqrt(np.maximum(pdelta2, 0.0)),
        "P1": p1,
        "P2": p2,
        "P3": p3,
        "residual_main": np.abs(vis2 + p**2 + i2 - 1.0),
        "residual_full": np.abs(lhs - (4.0 * mu2 - 1.0)),
        "residual_pdelta": np.abs(lhs - 3.0 * pdelta2),
        "quadrature_fraction": np.where(vis2 > 0, v_n**2 / np.where(vis2 > 0, vis2, 1.0), np.nan),
    }


def full_invariants(s):
    m = s.matrix if isinstance(s, JointState) else np.asarray(s)
    values = full_invariant_arrays(m)
    out = {k: float(v) for k, v in values.items()}
    if np.isnan(out["quadrature_fraction"]):
        out["quadrature_fraction"] = None
    return InvariantReport(**out)


def is_pure(s, tol=PURE_TOL):
    m = s.matrix if isinstance(s, JointState) else np.asarray(s)
    return bool(matcore.trace_product(m, m).real >= 1.0 - tol)
