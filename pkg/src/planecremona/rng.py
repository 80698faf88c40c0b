"""Deterministic seeded randomness.

Every pseudo-random choice in the package (coordinate changes, sample points,
instance generation) is drawn from a SplitMix64 stream so that runs are
reproducible from a single 64-bit seed and so that the streams can be
replicated in any language. The generator is the one published by Steele,
Lea and Flood (used as the seeder of xoroshiro):

    state     <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z         <- state
    z         <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9  mod 2^64
    z         <- (z XOR (z >> 27)) * 0x94D049BB133111EB  mod 2^64
    output    <- z XOR (z >> 31)

`next_below(n)` is plain modular reduction (bias is irrelevant here, exact
reproducibility is not), and every derived helper documents its draw order.
"""

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def next_below(self, n: int) -> int:
        """Uniform-ish draw from {0, ..., n-1}; one next_u64 call."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def next_int(self, lo: int, hi: int) -> int:
        """Draw from the inclusive range [lo, hi]; one next_u64 call."""
        return lo + self.next_below(hi - lo + 1)

    def next_nonzero_int(self, lo: int, hi: int) -> int:
        """Draw from [lo, hi] \\ {0}; one draw per attempt."""
        while True:
            v = self.next_int(lo, hi)
            if v != 0:
                return v


def unimodular_matrix(stream: SplitMix64) -> tuple[tuple[int, int, int], ...]:
    """Small random integer 3x3 matrix with determinant +-1.

    Built as P * L * U with a permutation P and unit-triangular L, U whose
    off-diagonal entries are drawn from [-3, 3] (draw order: permutation
    index, l10, l20, l21, u01, u02, u12). Determinant +-1 keeps inverses
    integral, so coordinate changes never introduce denominators.
    """
    perms = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
    p = perms[stream.next_below(6)]
    l10, l20, l21 = (stream.next_int(-3, 3) for _ in range(3))
    u01, u02, u12 = (stream.next_int(-3, 3) for _ in range(3))
    lower = ((1, 0, 0), (l10, 1, 0), (l20, l21, 1))
    upper = ((1, u01, u02), (0, 1, u12), (0, 0, 1))
    lu = tuple(
        tuple(sum(lower[i][k] * upper[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )
    return tuple(lu[p[i]] for i in range(3))
