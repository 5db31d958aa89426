"""Deterministic pseudo-random primitives shared by every enumerator.

Every draw is a pure function: it takes a generator state and returns the
drawn value together with the successor state. The same state always yields
the same (value, successor) pair, on every platform and in every process, so
any value stream can be replayed from its seed.

States are SplitMix64 counters represented as plain ints. Treat them as
opaque handles: construct one with ``seed_state`` and thread it through
draws; never do arithmetic on it yourself.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence, Tuple, Union

RandomState = int

MASK64 = (1 << 64) - 1

# SplitMix64 constants (Steele, Lea & Flood's mixer).
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

#: Sink receiving (enumerator name, case index) pairs; used by
#: distribution tests to observe which case a weighted draw selected.
TraceSink = Callable[[str, int], None]


def seed_state(seed: int) -> RandomState:
    """Make a generator state from an unsigned 64-bit seed (wraps mod 2**64)."""
    return seed & MASK64


def _raw64(state: RandomState) -> Tuple[int, RandomState]:
    """One SplitMix64 step: 64 uniform bits plus the successor state."""
    s = (state + _GAMMA) & MASK64
    z = ((s ^ (s >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31), s


def next_uniform(state: RandomState, bound: int) -> Tuple[int, RandomState]:
    """Draw a uniform integer in [0, bound).

    ``bound`` may exceed 2**64; extra 64-bit words are drawn as needed.
    Rejection sampling keeps the result exactly uniform.
    """
    if bound <= 0:
        raise ValueError(f"bound must be positive, got {bound}")
    if bound <= MASK64:
        limit = (MASK64 + 1) - ((MASK64 + 1) % bound)
        while True:
            z, state = _raw64(state)
            if z < limit:
                return z % bound, state
    nbits = (bound - 1).bit_length()
    nwords = (nbits + 63) // 64
    mask = (1 << nbits) - 1
    while True:
        acc = 0
        for _ in range(nwords):
            z, state = _raw64(state)
            acc = (acc << 64) | z
        acc &= mask
        if acc < bound:
            return acc, state


def weighted_switch(
    state: RandomState, weights: Sequence[int]
) -> Tuple[int, RandomState]:
    """Pick a case index with probability weights[i] / sum(weights)."""
    if not weights:
        raise ValueError("weights must be non-empty")
    total = 0
    for w in weights:
        if w <= 0:
            raise ValueError(f"weights must be positive, got {w}")
        total += w
    u, state = next_uniform(state, total)
    cumulative = 0
    for i, w in enumerate(weights):
        cumulative += w
        if cumulative > u:
            return i, state
    raise AssertionError("unreachable: cumulative sum covers [0, total)")


def random_bool(state: RandomState) -> Tuple[bool, RandomState]:
    """Fair coin flip."""
    v, state = next_uniform(state, 2)
    return v == 1, state


def signed_power_of_two(
    state: RandomState, lo: int, hi: int
) -> Tuple[Union[int, Fraction], RandomState]:
    """Draw +/- 2**e with e uniform in [lo, hi] and the sign uniform.

    The exponent is drawn first, then the sign. Negative exponents yield
    exact fractions (1 / 2**-e), never binary floats.
    """
    if lo > hi:
        raise ValueError(f"empty exponent range: [{lo}, {hi}]")
    offset, state = next_uniform(state, hi - lo + 1)
    e = lo + offset
    positive, state = random_bool(state)
    magnitude: Union[int, Fraction]
    if e >= 0:
        magnitude = 1 << e
    else:
        magnitude = Fraction(1, 1 << -e)
    return (magnitude if positive else -magnitude), state
