"""Portable seeded random numbers.

Seeds are expanded with SplitMix64 and the stream is xorshift64*::

    x ^= x >> 12
    x ^= x << 25   (mod 2**64)
    x ^= x >> 27
    out = x * 0x2545F4914F6CDD1D   (mod 2**64)

Uniforms take the top 53 bits of ``out``; normals use the Box-Muller
transform and hand out both values of each pair.  Everything is defined on
unsigned 64-bit integers, so the same seed yields the same stream in any
language.
"""

from __future__ import annotations

import math

__all__ = ["XorShift64Star", "splitmix64"]

MASK64 = (1 << 64) - 1
_XS_MULT = 0x2545F4914F6CDD1D
_TWO_PI = 2.0 * math.pi
_INV_2_53 = 1.0 / (1 << 53)


def splitmix64(state: int) -> tuple[int, int]:
    """One SplitMix64 step: returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class XorShift64Star:
    __slots__ = ("_state", "_spare")

    def __init__(self, seed: int = 0) -> None:
        _, state = splitmix64(seed & MASK64)
        self._state = state or 0x9E3779B97F4A7C15  # the all-zero state is absorbing
        self._spare: float | None = None

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self._state = x
        return (x * _XS_MULT) & MASK64

    def random(self) -> float:
        """Uniform on [0, 1)."""
        return (self.next_u64() >> 11) * _INV_2_53

    def normal(self) -> float:
        """Standard normal via Box-Muller."""
        spare = self._spare
        if spare is not None:
            self._spare = None
            return spare
        u1 = 1.0 - self.random()  # (0, 1], safe for log
        u2 = self.random()
        r = math.sqrt(-2.0 * math.log(u1))
        theta = _TWO_PI * u2
        self._spare = r * math.sin(theta)
        return r * math.cos(theta)

    def normals(self, n: int) -> list[float]:
        return [self.normal() for _ in range(n)]
