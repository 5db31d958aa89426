"""Weighted enumerators for the primitive types.

Each enumerator biases heavily toward values that exercise edge cases in
code consuming the type: integers near machine-word boundaries, float
specials and subnormal-scale rationals, strings from several Unicode
scripts. Floats are exact rationals or tagged specials; rounding to binary
floats is left to consumers.

The ``trace`` argument, when given, receives an (enumerator-name,
case-index) pair for every weighted case selection; distribution tests use
it to observe case frequencies.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple

from .rng import (
    MASK64,
    _GAMMA,
    _MIX1,
    _MIX2,
    RandomState,
    TraceSink,
    next_uniform,
    random_bool,
    signed_power_of_two,
    weighted_switch,
)
from .values import FloatSpecial, FloatValue

# Case weights, in percent.
INT_WEIGHTS = (85, 6, 6, 1, 1, 1)
FLOAT_WEIGHTS = (76, 5, 5, 3, 3, 2, 2, 1, 1, 1, 1)
STRING_WEIGHTS = (50, 2, 2, 2, 2, 2, 40)

#: Shared length mixture for strings and byte strings: mostly short values,
#: occasional stress lengths, hard cap 10**4.
LENGTH_WEIGHTS = (5, 80, 14, 1)
MAX_LENGTH = 10_000

# Codepoint spans (start, width) for the single-codepoint string cases.
_ASCII_SPAN = (0x00, 0x80)
_EMOJI_SPAN = (0x1F300, 0x1FAFF - 0x1F300 + 1)
_GREEK_SPAN = (0x0370, 0x03FF - 0x0370 + 1)
_MATHSYM_SPAN = (0x2200, 0x22FF - 0x2200 + 1)
_LATIN_DIACRITIC_SPAN = (0x00C0, 0x024F - 0x00C0 + 1)

_SPANS = (_ASCII_SPAN, _EMOJI_SPAN, _GREEK_SPAN, _MATHSYM_SPAN, _LATIN_DIACRITIC_SPAN)

# One lookup table per single-codepoint case, in case order.
_CHAR_TABLES = tuple(
    [chr(lo + i) for i in range(width)] for lo, width in _SPANS
)

#: Emoji sequences spanning two or more codepoints (ZWJ sequences, skin-tone
#: modifiers, variation selectors, regional-indicator pairs, keycaps).
COMPOUND_EMOJI = (
    "\U0001F468‍\U0001F469‍\U0001F467‍\U0001F466",  # family: MWGB
    "\U0001F468‍\U0001F469‍\U0001F466",  # family: MWB
    "\U0001F469‍\U0001F469‍\U0001F467",  # family: WWG
    "\U0001F9D1‍\U0001F91D‍\U0001F9D1",  # people holding hands
    "\U0001F469‍\U0001F4BB",  # woman technologist
    "\U0001F468‍\U0001F373",  # man cook
    "\U0001F9D1‍\U0001F680",  # astronaut
    "\U0001F469‍\U0001F52C",  # woman scientist
    "\U0001F468‍\U0001F3A8",  # man artist
    "\U0001F469‍⚕️",  # woman health worker
    "\U0001F9DB‍♀️",  # woman vampire
    "\U0001F3C3‍♂️",  # man running
    "\U0001F44D\U0001F3FD",  # thumbs up: medium skin tone
    "\U0001F44B\U0001F3FB",  # waving hand: light skin tone
    "\U0001F64F\U0001F3FF",  # folded hands: dark skin tone
    "\U0001F926\U0001F3FC‍♂️",  # man facepalming: medium-light
    "\U0001F468\U0001F3FE‍\U0001F9B1",  # man: medium-dark, curly hair
    "\U0001F3F3️‍\U0001F308",  # rainbow flag
    "\U0001F3F4‍☠️",  # pirate flag
    "❤️‍\U0001F525",  # heart on fire
    "❤️‍\U0001FA79",  # mending heart
    "\U0001F636‍\U0001F32B️",  # face in clouds
    "\U0001F62E‍\U0001F4A8",  # face exhaling
    "\U0001F1FA\U0001F1F8",  # flag: United States
    "\U0001F1EF\U0001F1F5",  # flag: Japan
    "#️⃣",  # keycap: #
)

# Fixed float sets, as printed in the enumerator's case table. Some of these
# expressions look sign-flipped relative to the usual IEEE-754 extrema
# (2**127 * (2**-23 - 2) is negative); they are reproduced literally.
_NORMAL32_MIN = Fraction(1, 1 << 126)
_NORMAL32_MAXEXPR = Fraction((1 << 104) - (1 << 128))  # 2**127 * (2**-23 - 2)
_NORMAL32_SET = (
    _NORMAL32_MIN,
    _NORMAL32_MIN + 1,
    _NORMAL32_MIN - 1,
    _NORMAL32_MAXEXPR,
    _NORMAL32_MAXEXPR - 1,
    _NORMAL32_MAXEXPR + 1,
)

_NORMAL64_MIN = Fraction(1, 1 << 1022)
_NORMAL64_MAXEXPR = Fraction((1 << 971) - (1 << 1024))  # 2**1023 * (2**-52 - 2)
_NORMAL64_SET = (
    _NORMAL64_MIN,
    _NORMAL64_MIN - 1,
    _NORMAL64_MIN + 1,
    _NORMAL64_MAXEXPR,
    _NORMAL64_MAXEXPR - 1,
    _NORMAL64_MAXEXPR + 1,
)

_MAX_FLOAT_INT_SET = (
    Fraction(1 << 24),
    Fraction(-(1 << 24)),
    Fraction(1 << 53),
    Fraction(-(1 << 53)),
)

_SUBNORMAL32_MAX = Fraction((1 << 23) - 1, 1 << 149)  # 2**-126 * (1 - 2**-23)
_SUBNORMAL64_MAX = Fraction((1 << 52) - 1, 1 << 1074)  # 2**-1022 * (1 - 2**-52)
_SUBNORMAL_SET = (
    Fraction(1, 1 << 149),
    Fraction(-1, 1 << 149),
    _SUBNORMAL32_MAX,
    -_SUBNORMAL32_MAX,
    Fraction(1, 1 << 1074),
    Fraction(-1, 1 << 1074),
    _SUBNORMAL64_MAX,
    -_SUBNORMAL64_MAX,
)

# Large-magnitude float exponents: [65, 1024] and [-1024, -65].
_LARGE_EXP_HALF = 1024 - 65 + 1


def draw_length(state: RandomState, cap: int = MAX_LENGTH) -> Tuple[int, RandomState]:
    """Draw a sequence length: 5% empty, 80% in [1,32], 14% in [33,512],
    1% in [513,10**4]; the result is clamped to ``cap``."""
    bucket, state = weighted_switch(state, LENGTH_WEIGHTS)
    if bucket == 0:
        return 0, state
    if bucket == 1:
        v, state = next_uniform(state, 32)
        length = 1 + v
    elif bucket == 2:
        v, state = next_uniform(state, 512 - 33 + 1)
        length = 33 + v
    else:
        v, state = next_uniform(state, MAX_LENGTH - 513 + 1)
        length = 513 + v
    return min(length, cap), state


def enum_int(
    state: RandomState, trace: Optional[TraceSink] = None
) -> Tuple[int, RandomState]:
    """Draw an integer. Case weights 85/6/6/1/1/1:
    sums of signed powers of two, 65-bit values, powers of two with
    off-by-one, then -1, 0, and 1. Output magnitude never exceeds 2**65 + 1.
    """
    case, state = weighted_switch(state, INT_WEIGHTS)
    if trace is not None:
        trace("int", case)
    if case == 0:
        a, state = signed_power_of_two(state, 0, 64)
        b, state = signed_power_of_two(state, 0, 16)
        return a + b, state
    if case == 1:
        v, state = next_uniform(state, 1 << 65)
        positive, state = random_bool(state)
        return (1 + v) if positive else -(1 + v), state
    if case == 2:
        p, state = signed_power_of_two(state, 1, 65)
        d, state = next_uniform(state, 3)
        return p + d - 1, state
    if case == 3:
        return -1, state
    if case == 4:
        return 0, state
    return 1, state


def enum_float(
    state: RandomState, trace: Optional[TraceSink] = None
) -> Tuple[FloatValue, RandomState]:
    """Draw a float value: 76% rationals built from integer draws, then
    powers of two around the binary32/binary64 normal and subnormal
    boundaries, and 1% each of nan, inf, -inf, and -0."""
    case, state = weighted_switch(state, FLOAT_WEIGHTS)
    if trace is not None:
        trace("float", case)
    if case == 0:
        n, state = enum_int(state, trace)
        k, state = enum_int(state, trace)
        retries = 0
        while k == 0 and retries < 8:
            k, state = enum_int(state, trace)
            retries += 1
        if k == 0:
            k = 1
        return Fraction(n, k), state
    if case == 1:
        a, state = signed_power_of_two(state, -64, 64)
        d, state = next_uniform(state, 3)
        return Fraction(a + d - 1), state
    if case == 2:
        idx, state = next_uniform(state, 2 * _LARGE_EXP_HALF)
        e = 65 + idx if idx < _LARGE_EXP_HALF else -1024 + (idx - _LARGE_EXP_HALF)
        positive, state = random_bool(state)
        mag = Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)
        a = mag if positive else -mag
        d, state = next_uniform(state, 3)
        return a + d - 1, state
    if case == 3:
        i, state = next_uniform(state, len(_NORMAL32_SET))
        return _NORMAL32_SET[i], state
    if case == 4:
        i, state = next_uniform(state, len(_NORMAL64_SET))
        return _NORMAL64_SET[i], state
    if case == 5:
        i, state = next_uniform(state, len(_MAX_FLOAT_INT_SET))
        return _MAX_FLOAT_INT_SET[i], state
    if case == 6:
        i, state = next_uniform(state, len(_SUBNORMAL_SET))
        return _SUBNORMAL_SET[i], state
    if case == 7:
        return FloatSpecial.NAN, state
    if case == 8:
        return FloatSpecial.POS_INF, state
    if case == 9:
        return FloatSpecial.NEG_INF, state
    return FloatSpecial.NEG_ZERO, state


def _span_string(state: RandomState, count: int, table: list) -> Tuple[str, RandomState]:
    # Inlined SplitMix64 steps; draw-for-draw identical to calling
    # next_uniform(state, len(table)) per character.
    width = len(table)
    limit = (MASK64 + 1) - ((MASK64 + 1) % width)
    s = state
    out = []
    append = out.append
    n = 0
    while n < count:
        s = (s + _GAMMA) & MASK64
        z = ((s ^ (s >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        z ^= z >> 31
        if z >= limit:
            continue
        append(table[z % width])
        n += 1
    return "".join(out), s


def _compound_string(state: RandomState, budget: int) -> Tuple[str, RandomState]:
    # Whole sequences only; stop before the first one that would overflow
    # the codepoint budget.
    out = []
    length = 0
    while length < budget:
        i, state = next_uniform(state, len(COMPOUND_EMOJI))
        seq = COMPOUND_EMOJI[i]
        if length + len(seq) > budget:
            break
        out.append(seq)
        length += len(seq)
    return "".join(out), state


def _mixed_string(state: RandomState, budget: int) -> Tuple[str, RandomState]:
    # Per unit: a uniform category draw, then a unit from that category.
    # Compound sequences that would overflow the budget are skipped (single
    # codepoints always fit, so the loop terminates).
    out = []
    append = out.append
    length = 0
    s = state
    limit6 = (MASK64 + 1) - ((MASK64 + 1) % 6)
    n_compound = len(COMPOUND_EMOJI)
    limit_compound = (MASK64 + 1) - ((MASK64 + 1) % n_compound)
    while length < budget:
        while True:
            s = (s + _GAMMA) & MASK64
            z = ((s ^ (s >> 30)) * _MIX1) & MASK64
            z = ((z ^ (z >> 27)) * _MIX2) & MASK64
            z ^= z >> 31
            if z < limit6:
                break
        cat = z % 6
        if cat < 5:
            table = _CHAR_TABLES[cat]
            width = len(table)
            limit = (MASK64 + 1) - ((MASK64 + 1) % width)
            while True:
                s = (s + _GAMMA) & MASK64
                z = ((s ^ (s >> 30)) * _MIX1) & MASK64
                z = ((z ^ (z >> 27)) * _MIX2) & MASK64
                z ^= z >> 31
                if z < limit:
                    break
            append(table[z % width])
            length += 1
        else:
            while True:
                s = (s + _GAMMA) & MASK64
                z = ((s ^ (s >> 30)) * _MIX1) & MASK64
                z = ((z ^ (z >> 27)) * _MIX2) & MASK64
                z ^= z >> 31
                if z < limit_compound:
                    break
            seq = COMPOUND_EMOJI[z % n_compound]
            if length + len(seq) <= budget:
                append(seq)
                length += len(seq)
    return "".join(out), s


def enum_string(
    state: RandomState, trace: Optional[TraceSink] = None
) -> Tuple[str, RandomState]:
    """Draw a codepoint string. Case weights 50/2/2/2/2/2/40: ASCII, emoji,
    Greek, math symbols, Latin diacritics, compound emoji, and a mixed case
    drawing each unit's category uniformly. Length is capped at 10**4
    codepoints; multi-codepoint emoji count every codepoint toward it."""
    case, state = weighted_switch(state, STRING_WEIGHTS)
    if trace is not None:
        trace("str", case)
    length, state = draw_length(state)
    if case < 5:
        return _span_string(state, length, _CHAR_TABLES[case])
    if case == 5:
        return _compound_string(state, length)
    return _mixed_string(state, length)


def enum_bytes(state: RandomState) -> Tuple[bytes, RandomState]:
    """Draw a byte string: shared length mixture, bytes uniform in [0, 255]."""
    length, state = draw_length(state)
    # 256 divides 2**64, so z % 256 needs no rejection and matches
    # next_uniform(state, 256) draw for draw.
    s = state
    out = bytearray()
    append = out.append
    for _ in range(length):
        s = (s + _GAMMA) & MASK64
        z = ((s ^ (s >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        append((z ^ (z >> 31)) % 256)
    return bytes(out), s


def enum_bool(state: RandomState) -> Tuple[bool, RandomState]:
    """Fair coin."""
    return random_bool(state)


def enum_none(state: RandomState) -> Tuple[None, RandomState]:
    """The unit value; consumes no draws."""
    return None, state
