"""SplitMix64 generator.

Chosen because the whole algorithm fits in four lines of integer
arithmetic, which makes seeded dataset generation reproducible across
languages and platforms.
"""

MASK64 = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator; all arithmetic is modulo 2**64."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Uniform-enough draw in [0, bound); bound must be positive."""
        return self.next_u64() % bound
