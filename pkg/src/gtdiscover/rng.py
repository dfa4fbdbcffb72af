"""Deterministic randomness for reproducible trials.

Everything random in this package is driven by SplitMix64 (Steele, Lea &
Flood's split-and-mix generator, the one behind Java's SplittableRandom).
It was chosen over ``random.Random`` / NumPy generators because its output
is a short, documented sequence of 64-bit integer operations, so the
compiled and pure-Python trial kernels can reproduce each other bit for bit
and CSV output stays byte-identical across platforms and library versions.

Key derivation is a finalizer chain: independent substreams for (seed,
trial, purpose) are obtained by hashing the labels together with
:func:`derive_key`, never by reusing or offsetting a raw seed.
"""

from __future__ import annotations

from typing import Iterator, List, Sequence

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15  # 2^64 / golden ratio, the SplitMix64 increment
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a bijective 64-bit hash."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def derive_key(base: int, *labels: int) -> int:
    """Derive an independent 64-bit substream key from a seed and labels.

    Deterministic, order-sensitive, and identical on every platform; used to
    split the user seed into per-trial and per-strategy streams.
    """
    key = mix64(base & MASK64)
    for label in labels:
        key = mix64(key ^ mix64((label & MASK64) ^ GOLDEN))
    return key


class SplitMix64:
    """Minimal SplitMix64 stream generator."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_uint64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound) via rejection sampling (unbiased)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            z = self.next_uint64()
            if z < limit:
                return z % bound


def sample_subset(n: int, k: int, key: int) -> List[int]:
    """Draw a uniform k-subset of range(n), returned sorted.

    Rejection of repeats keeps the draw order identical in the compiled
    kernel; with k << n the expected number of redraws is negligible.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    rng = SplitMix64(key)
    chosen: set[int] = set()
    while len(chosen) < k:
        chosen.add(rng.randbelow(n))
    return sorted(chosen)


def device_sort_key(device: int, key: int) -> int:
    """Keyed hash that defines the random device order for a run."""
    return mix64(key ^ ((device + 1) * GOLDEN & MASK64))


def keyed_order(devices: Sequence[int], key: int) -> List[int]:
    """Order devices by their keyed hash (ties broken by device index).

    This is the run's random permutation: computing it once per run and
    re-sorting survivors by the same keys realizes the "shuffle once,
    re-chunk each slot" partitioning policy.
    """
    return sorted(devices, key=lambda d: (device_sort_key(d, key), d))


def stream(seed: int) -> Iterator[int]:
    """Infinite iterator over a SplitMix64 stream (handy in tests)."""
    rng = SplitMix64(seed)
    while True:
        yield rng.next_uint64()
