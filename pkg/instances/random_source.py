"""
SplitMix64, the seeded generator behind every random instance.

The algorithm is fixed so that a (seed, n, trial) triple reproduces the same instance in
any implementation:

    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z <- (z xor (z >> 27)) * 0x94D049BB133111EB mod 2^64
    output z xor (z >> 31)

Per-trial streams are derived by chaining: ``s0 = first output of SplitMix64(seed)``,
``s1 = first output of SplitMix64(s0 xor n)``, ``s2 = first output of
SplitMix64(s1 xor trial)``; the trial draws from ``SplitMix64(s2)``. Bounded integers use
rejection sampling on the top of the 64-bit range so they are unbiased.
"""

from fractions import Fraction

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    @classmethod
    def for_trial(cls, seed: int, n: int, trial: int) -> "SplitMix64":
        state = cls(seed).next_u64()
        for component in (n, trial):
            state = cls(state ^ (component & MASK64)).next_u64()
        return cls(state)

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, low: int, high: int) -> int:
        """
        Uniform integer in the closed range ``[low, high]``.
        """
        if low > high:
            raise ValueError(f"Empty range [{low}, {high}].")
        span = high - low + 1
        limit = ((MASK64 + 1) // span) * span
        while True:
            value = self.next_u64()
            if value < limit:
                return low + value % span

    def rational(self, bound: int) -> Fraction:
        """
        ``p/q`` with ``p`` uniform in ``[-bound, bound]`` and ``q`` uniform in ``[1, bound]``.
        """
        numerator = self.randint(-bound, bound)
        denominator = self.randint(1, bound)
        return Fraction(numerator, denominator)
