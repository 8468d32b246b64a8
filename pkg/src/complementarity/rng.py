"""Seeded, platform-independent Gaussian source.

Raw 64-bit words come from numpy's Philox4x64 counter-based bit generator.
Doubles are formed from the top 53 bits and normal deviates from the
Box-Muller transform, both done here explicitly so the output depends only
on the Philox stream and IEEE arithmetic.
"""

import numpy as np

_TWO_POW_M53 = 2.0 ** -53


class GaussianSource:
    """Caller-owned generator handle; not shared between threads."""

    def __init__(self, seed=0):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._bits = np.random.Philox(self.seed)

    def uniform(self, size):
        """Uniform doubles in the half-open interval (0, 1]."""
        raw = self._bits.random_raw(int(np.prod(size, dtype=np.int64)))
        return (((raw >> np.uint64(11)).astype(np.float64) + 1.0) * _TWO_POW_M53).reshape(size)

    def normal(self, size):
        """Standard normal deviates (mean 0, variance 1)."""
        size = (size,) if np.isscalar(size) else tuple(size)
        n = int(np.prod(size, dtype=np.int64))
        pairs = (n + 1) // 2
        u1 = self.uniform(pairs)
        u2 = self.uniform(pairs)
        radius = np.sqrt(-2.0 * np.log(u1))
        angle = 2.0 * np.pi * u2
        out = np.empty(2 * pairs)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:n].reshape(size)

    def complex_normal(self, size):
        """Complex deviates whose real and imaginary parts are each standard normal."""
        size = (size,) if np.isscalar(size) else tuple(size)
        z = self.normal(size + (2,))
        return z[..., 0] + 1j * z[..., 1]
