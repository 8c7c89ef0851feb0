# ssspx/services/rng.py
"""
SplitMix64, vectorised with numpy.

    state <- state + 0x9E3779B97F4A7C15          (mod 2^64)
    z <- (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z <- (z ^ (z >> 27)) * 0x94D049BB133111EB
    out <- z ^ (z >> 31)

The i-th output of a generator seeded with s mixes s + i * gamma, so a block
of outputs is one vectorised expression. Any implementation of the formula
above reproduces the generated corpora.
"""
import numpy as np

GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
MASK = (1 << 64) - 1

_S30, _S27, _S31, _S11 = (np.uint64(s) for s in (30, 27, 31, 11))


def mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _S30)) * np.uint64(MIX1)
    z = (z ^ (z >> _S27)) * np.uint64(MIX2)
    return z ^ (z >> _S31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & MASK

    def next_u64(self, count: int) -> np.ndarray:
        if count <= 0:
            return np.zeros(0, dtype=np.uint64)
        steps = np.arange(1, count + 1, dtype=np.uint64)
        with np.errstate(over='ignore'):
            z = np.uint64(self.state) + steps * np.uint64(GAMMA)
            out = mix(z)
        self.state = (self.state + count * GAMMA) & MASK
        return out

    def uniform(self, count: int) -> np.ndarray:
        """Doubles in [0, 1) from the top 53 bits."""
        return (self.next_u64(count) >> _S11).astype(np.float64) * (1.0 / (1 << 53))

    def below(self, bound: int, count: int) -> np.ndarray:
        """Integers in [0, bound); modulo reduction (bias below 2^-40 for bound < 2^24)."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        return (self.next_u64(count) % np.uint64(bound)).astype(np.int64)

    def integers(self, low: int, high: int, count: int) -> np.ndarray:
        """Integers in [low, high]."""
        return low + self.below(high - low + 1, count)
