"""SplitMix64: the named portable generator behind every seeded run.

Chosen over ``random.Random`` because the byte-identity contract on reports
must hold across platforms and Python versions forever; SplitMix64 is a
fixed, documented 64-bit algorithm (Steele-Lea-Flood) with no library
dependence.
"""

_MASK = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator.  Same seed, same stream, anywhere."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def spawn(self) -> "SplitMix64":
        """Child generator with an independent stream."""
        return SplitMix64(self.next_u64())
