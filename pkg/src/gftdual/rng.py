"""Deterministic pseudo-random numbers.

All randomness in the library flows through SplitMix64, a 64-bit generator
with a single word of state (Steele, Lea and Flood's mixer). It is
implemented here, rather than taken from numpy, so that streams are
bit-identical across platforms and library versions.

Stream splitting rule: the k-th derived stream of a seed is
``SplitMix64((seed + k) mod 2**64)``. Multistart restarts use k = restart
index; the experiment harness draws sub-seeds from a sequencer stream (see
experiment.py for the documented draw order).
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """64-bit SplitMix generator.

    >>> SplitMix64(0).next_uint64() == SplitMix64(0).next_uint64()
    True
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK64

    def next_uint64(self) -> int:
        """Next raw 64-bit word."""
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def integer_below(self, bound: int) -> int:
        """Unbiased integer in [0, bound) via rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = ((1 << 64) // bound) * bound
        while True:
            word = self.next_uint64()
            if word < limit:
                return word % bound

    def permutation(self, n: int) -> np.ndarray:
        """Uniform random permutation of 0..n-1 (Fisher-Yates)."""
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.integer_below(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return np.array(perm, dtype=np.intp)

    def unit_phases(self, n: int) -> np.ndarray:
        """n complex numbers uniform on the unit circle."""
        angles = np.array([2.0 * np.pi * self.random() for _ in range(n)])
        return np.cos(angles) + 1j * np.sin(angles)


def derive_stream(seed: int, index: int) -> SplitMix64:
    """The index-th derived stream of a master seed (see module docstring)."""
    return SplitMix64((int(seed) + int(index)) & _MASK64)
