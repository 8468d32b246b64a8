"""Pauli tensor observables and their symmetric/antisymmetric classification.

In the ordered product basis ``sigma_mu (x) sigma_nu`` is real symmetric
(sector ``"S"``) when ``sigma_2`` appears an even number of times and purely
imaginary antisymmetric (sector ``"A"``) otherwise.
"""

import re
from dataclasses import dataclass, field

import numpy as np

from . import matcore
from .errors import NonRealExpectation
from .states import PAULI_PAIRS, JointState

EXPECTATION_IMAG_TOL = 1e-12
DECOUPLING_TOL = 1e-12

SECTOR = np.array([["A" if (mu == 2) != (nu == 2) else "S" for nu in range(4)] for mu in range(4)])
SECTOR.setflags(write=False)
S_MASK = SECTOR == "S"
A_MASK = ~S_MASK

_NAME_RE = re.compile(r"^s([0-3])([0-3])$")


@dataclass(frozen=True)
class PauliTensor:
    mu: int
    nu: int
    matrix: np.ndarray = field(repr=False, compare=False)
    sector: str

    @property
    def name(self):
        return f"s{self.mu}{self.nu}"


PAULI_TENSORS = {
    (mu, nu): PauliTensor(mu, nu, PAULI_PAIRS[mu, nu], str(SECTOR[mu, nu]))
    for mu in range(4)
    for nu in range(4)
}


def pauli_tensor(mu, nu):
    if not (0 <= mu <= 3 and 0 <= nu <= 3):
        raise IndexError(f"Pauli indices must lie in 0..3, got ({mu}, {nu})")
    return PAULI_TENSORS[mu, nu]


@dataclass(frozen=True)
class Observable:
    """Hermitian observable ``sum c[mu, nu] sigma_mu (x) sigma_nu`` with real coefficients."""

    coefficients: np.ndarray
    matrix: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def from_coefficients(cls, c):
        c = np.asarray(c, dtype=float).reshape(4, 4)
        if not np.all(np.isfinite(c)):
            raise ValueError("observable coefficients must be finite")
        return cls(c, np.einsum("ab,abij->ij", c, PAULI_PAIRS))

    @classmethod
    def tensor(cls, mu, nu):
        c = np.zeros((4, 4))
        c[mu, nu] = 1.0
        return cls.from_coefficients(c)

    @classmethod
    def from_name(cls, name):
        match = _NAME_RE.match(name.strip())
        if not match:
            raise ValueError(f"observable name must look like 's<mu><nu>', got {name!r}")
        return cls.tensor(int(match.group(1)), int(match.group(2)))

    @classmethod
    def from_matrix(cls, m):
        """Project a Hermitian 4x4 matrix onto the Pauli tensor basis."""
        m = matcore.as_cmatrix(m, dims=(4,))
        matcore.check_hermitian(m)
        c = np.einsum("ij,abji->ab", m, PAULI_PAIRS).real / 4
        return cls.from_coefficients(c)

    @property
    def sector(self):
        """``"S"``, ``"A"`` or ``"mixed"`` from the nonzero coefficients (identity-only counts as S)."""
        has_s = np.any(self.coefficients[S_MASK] != 0)
        has_a = np.any(self.coefficients[A_MASK] != 0)
        if has_a and has_s:
            return "mixed"
        return "A" if has_a else "S"

    @property
    def name(self):
        nz = np.argwhere(self.coefficients != 0)
        if len(nz) == 1 and self.coefficients[tuple(nz[0])] == 1.0:
            return f"s{nz[0][0]}{nz[0][1]}"
        return None

    def op_norm(self):
        return float(np.max(np.abs(matcore.eig_hermitian(self.matrix).eigenvalues)))


def sector_components(o):
    """Return ``(O_S, O_A)``, real matrices with ``O = O_S + i O_A``, built from the coefficients."""
    c = o.coefficients
    o_s = np.einsum("ab,abij->ij", np.where(S_MASK, c, 0.0), PAULI_PAIRS)
    o_a = np.einsum("ab,abij->ij", np.where(A_MASK, c, 0.0), PAULI_PAIRS)
    return o_s.real, o_a.imag


def expectation(s, o):
    """``Tr(rho O)``, cross-checked against ``Tr(A O_S) - Tr(N O_A)``."""
    m = s.matrix if isinstance(s, JointState) else np.asarray(s)
    value = complex(matcore.trace_product(m, o.matrix))
    if abs(value.imag) > EXPECTATION_IMAG_TOL * max(1.0, np.linalg.norm(o.matrix)):
        raise NonRealExpectation(value.imag)
    by_sector = decoupled_expectation(m, o)
    scale = max(1.0, np.linalg.norm(o.matrix))
    if abs(by_sector - value.real) > DECOUPLING_TOL * scale:
        raise ArithmeticError(f"sector formula disagrees: {by_sector!r} vs {value.real!r}")
    return value.real


def decoupled_expectation(m, o):
    pair = matcore.hermitian_split(m)
    o_s, o_a = sector_components(o)
    return float(np.sum(pair.sym * o_s.T) - np.sum(pair.antisym * o_a.T))
