"""Phase-shifted fringe synthesis and extraction of the path invariants.

The fringe model at one screen point is ``I(phi) = I0 (1 + V_A cos phi + V_N sin phi)``.
Populations ``(n1, n2)`` of the two slits are a separate input.
"""

import csv
import io
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, MissingPhase, RankDeficient, ZeroDenominator
from .rng import GaussianSource

CANONICAL_PHASES = (0.0, np.pi / 2, np.pi, 3 * np.pi / 2)
PHASE_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class FringeRecord:
    phases: np.ndarray
    intensities: np.ndarray
    I0: float = 1.0
    clamped: int = 0

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=float)
        intensities = np.asarray(self.intensities, dtype=float)
        if phases.shape != intensities.shape or phases.ndim != 1:
            raise BadParameter("phases and intensities must be 1-D and of equal length")
        if np.any(intensities < 0):
            raise BadParameter("intensities must be non-negative")
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "intensities", intensities)

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["phase", "intensity"])
        for phi, inten in zip(self.phases, self.intensities):
            writer.writerow([repr(float(phi)), repr(float(inten))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text, I0=1.0):
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [h.strip() for h in rows[0]] != ["phase", "intensity"]:
            raise ValueError("fringe CSV must start with the header 'phase,intensity'")
        try:
            data = np.array([[float(a), float(b)] for a, b in (r for r in rows[1:] if r)])
        except ValueError as exc:
            raise ValueError(f"bad fringe row: {exc}") from exc
        data = data.reshape(-1, 2)
        return cls(data[:, 0], data[:, 1], I0=I0)


@dataclass(frozen=True)
class ExtractionResult:
    V_A: float
    V_N: float
    P: float
    I2: float
    source: str
    positivity_violated: bool = False

    def residual(self):
        return abs(self.V_A**2 + self.V_N**2 + self.P**2 + self.I2 - 1.0)


def fringe_intensity(bloch, phases, I0=1.0):
    v_a, v_n = bloch[0], bloch[1]
    phases = np.asarray(phases, dtype=float)
    return I0 * (1.0 + v_a * np.cos(phases) + v_n * np.sin(phases))


def synth_fringes(p, phases, I0=1.0, noise_sigma=0.0, seed=0):
    """Simulate a fringe record for a path state ``p`` (anything with ``.bloch``).

    Gaussian noise has standard deviation ``noise_sigma * I0``; negative
    noisy samples are clamped to zero and counted in ``clamped``.
    """
    if not I0 > 0:
        raise BadParameter(f"I0 must be positive, got {I0}")
    if not noise_sigma >= 0:
        raise BadParameter(f"noise_sigma must be non-negative, got {noise_sigma}")
    bloch = p.bloch if hasattr(p, "bloch") else p
    phases = np.asarray(phases, dtype=float)
    intensities = fringe_intensity(bloch, phases, I0)
    if noise_sigma > 0:
        source = seed if isinstance(seed, GaussianSource) else GaussianSource(seed)
        intensities = intensities + noise_sigma * I0 * source.normal(phases.shape)
    # rounding can push a noiseless zero of the fringe slightly negative
    negative = intensities < 0
    clamped = int(np.count_nonzero(negative & (intensities < -1e-12 * I0)))
    if clamped:
        warnings.warn(f"{clamped} negative noisy intensities clamped to 0", RuntimeWarning, stacklevel=2)
    intensities = np.where(negative, 0.0, intensities)
    return FringeRecord(phases, intensities, I0=float(I0), clamped=clamped)


def _predictability(populations):
    n1, n2 = (float(x) for x in populations)
    if n1 < 0 or n2 < 0:
        raise BadParameter("populations must be non-negative")
    if n1 + n2 <= 0:
        raise ZeroDenominator("populations sum to zero")
    return (n1 - n2) / (n1 + n2)


def _result(v_a, v_n, populations, source):
    p = _predictability(populations)
    radius2 = v_a**2 + v_n**2 + p**2
    return ExtractionResult(float(v_a), float(v_n), p, 1.0 - radius2, source, bool(radius2 > 1.0))


def _pick(record, target):
    wrapped = np.mod(record.phases - target + np.pi, 2 * np.pi) - np.pi
    hits = np.flatnonzero(np.abs(wrapped) <= PHASE_MATCH_TOL)
    if hits.size == 0:
        raise MissingPhase(f"no sample at phase {target:.12g}")
    return float(np.mean(record.intensities[hits]))


def extract_four_point(record, populations):
    """Quotient estimates of ``V_A`` and ``V_N`` from samples at 0, pi/2, pi, 3pi/2."""
    i0, i1, i2, i3 = (_pick(record, phi) for phi in CANONICAL_PHASES)
    if i0 + i2 == 0 or i1 + i3 == 0:
        raise ZeroDenominator("opposite-phase intensities sum to zero")
    return _result((i0 - i2) / (i0 + i2), (i1 - i3) / (i1 + i3), populations, "four-point")


def extract_least_squares(record, populations):
    """Least-squares fit of ``a + b cos phi + c sin phi``; ``V_A = b/a``, ``V_N = c/a``."""
    phases = record.phases
    design = np.column_stack([np.ones_like(phases), np.cos(phases), np.sin(phases)])
    if phases.size < 3 or np.linalg.matrix_rank(design) < 3:
        raise RankDeficient("need at least three distinct phases for the fringe fit")
    coef, *_ = np.linalg.lstsq(design, record.intensities, rcond=None)
    if coef[0] == 0:
        raise ZeroDenominator("fitted baseline intensity is zero")
    return _result(coef[1] / coef[0], coef[2] / coef[0], populations, "least-squares")
