"""splitmix64 seeding and xoshiro256** streams, scalar and lane-vectorised.

The user seed is first expanded to a 64-bit base with one splitmix64 step.
Every Monte Carlo replicate ``r`` then owns a private xoshiro256** stream
whose state is four consecutive splitmix64 outputs started from
``base ^ r``. The stream depends on (seed, r) alone, which is what makes
results independent of how replicates are split across workers. Expanding
the seed first keeps nearby seeds (0 and 1, say) from sharing the same set
of replicate streams.

:class:`Xoshiro256ss` is the plain reference generator; :class:`LaneStreams`
advances many such generators in lock-step with numpy uint64 arithmetic and
produces bit-identical output.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV53 = 1.0 / (1 << 53)


class SplitMix64:
    def __init__(self, state: int):
        self.state = state & MASK64

    def next(self) -> int:
        self.state = (self.state + _GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)


def expand_seed(seed: int) -> int:
    return SplitMix64(seed).next()


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256ss:
    def __init__(self, state):
        s = [int(v) & MASK64 for v in state]
        if len(s) != 4 or not any(s):
            raise ValueError("xoshiro256** needs four words, not all zero")
        self.s = s

    @classmethod
    def for_replicate(cls, seed: int, rep: int) -> "Xoshiro256ss":
        sm = SplitMix64(expand_seed(seed) ^ (rep & MASK64))
        return cls([sm.next() for _ in range(4)])

    def next(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def uniform(self) -> float:
        """53-bit double in [0, 1)."""
        return (self.next() >> 11) * _INV53


def _v_splitmix(state: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    state = state + np.uint64(_GOLDEN)
    z = state
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return state, z ^ (z >> np.uint64(31))


def _v_rotl(x: np.ndarray, k: int) -> np.ndarray:
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


class LaneStreams:
    """One xoshiro256** stream per replicate index, advanced together."""

    def __init__(self, seed: int, reps):
        reps = np.asarray(reps, dtype=np.uint64)
        state = np.uint64(expand_seed(seed)) ^ reps
        words = []
        for _ in range(4):
            state, out = _v_splitmix(state)
            words.append(out)
        self.s0, self.s1, self.s2, self.s3 = words

    def next(self) -> np.ndarray:
        result = _v_rotl(self.s1 * np.uint64(5), 7) * np.uint64(9)
        t = self.s1 << np.uint64(17)
        self.s2 ^= self.s0
        self.s3 ^= self.s1
        self.s1 ^= self.s2
        self.s0 ^= self.s3
        self.s2 ^= t
        self.s3 = _v_rotl(self.s3, 45)
        return result

    def uniform(self) -> np.ndarray:
        return (self.next() >> np.uint64(11)).astype(np.float64) * _INV53
