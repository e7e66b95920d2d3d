"""
SplitMix64 pseudo-random generator.

Constants (all arithmetic modulo 2**64):
    state  <- state + 0x9E3779B97F4A7C15
    z      <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z      <- (z ^ (z >> 27)) * 0x94D049BB133111EB
    output <- z ^ (z >> 31)

Doubles take the top 53 bits: (output >> 11) * 2**-53, so any language
with 64-bit unsigned integers reproduces the same coordinates.
Substreams for (seed, index) start from mix64(mix64(seed) ^ mix64(index + 1)).
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MUL_1 = 0xBF58476D1CE4E5B9
MIX_MUL_2 = 0x94D049BB133111EB
DOUBLE_UNIT = 1.0 / (1 << 53)


def mix64(z):
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_MUL_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_MUL_2) & MASK64
    return z ^ (z >> 31)


class SplitMix64(object):
    def __init__(self, seed) -> None:
        self.state = int(seed) & MASK64

    @classmethod
    def substream(cls, seed, index):
        return cls(mix64(mix64(seed) ^ mix64(index + 1)))

    def next_u64(self):
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def uniform(self):
        """Double in [0, 1)."""
        return (self.next_u64() >> 11) * DOUBLE_UNIT

    def randbelow(self, bound):
        ## multiply-shift range reduction, no rejection step
        return (self.next_u64() * bound) >> 64

    def shuffled(self, items):
        items = list(items)
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
        return items
