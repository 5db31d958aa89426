"""Tests for the deterministic random primitives."""

from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from typeseed.rng import (
    next_uniform,
    random_bool,
    seed_state,
    signed_power_of_two,
    weighted_switch,
)

# Chi-square critical value, df=15, alpha=0.001.
CHI2_CRIT_DF15 = 37.697


def test_bound_one_always_zero():
    for seed in (0, 1, 42, 2**63):
        v, _ = next_uniform(seed_state(seed), 1)
        assert v == 0


def test_large_bound_in_range():
    v, _ = next_uniform(seed_state(1), 2**31 - 1)
    assert 0 <= v < 2**31 - 1


def test_uniform_histogram_16_buckets():
    n = 1_000_000
    counts = Counter()
    s = seed_state(123)
    for _ in range(n):
        v, s = next_uniform(s, 16)
        counts[v] += 1
    expected = n / 16
    chi2 = 0.0
    for bucket in range(16):
        freq = counts[bucket] / n
        assert abs(freq - 0.0625) <= 0.003, (bucket, freq)
        chi2 += (counts[bucket] - expected) ** 2 / expected
    assert chi2 < CHI2_CRIT_DF15


def test_bound_zero_rejected():
    with pytest.raises(ValueError):
        next_uniform(seed_state(1), 0)


def test_multiword_bound():
    bound = 1 << 65
    s = seed_state(9)
    for _ in range(1000):
        v, s = next_uniform(s, bound)
        assert 0 <= v < bound


def test_purity_same_state_same_result():
    s = seed_state(77)
    assert next_uniform(s, 10**9) == next_uniform(s, 10**9)
    assert random_bool(s) == random_bool(s)
    assert weighted_switch(s, (3, 1)) == weighted_switch(s, (3, 1))


def test_golden_sequences():
    # Frozen outputs guard against accidental stream changes.
    s = seed_state(1)
    seq = []
    for _ in range(6):
        v, s = next_uniform(s, 1000)
        seq.append(v)
    assert seq == [465, 519, 590, 235, 761, 48]

    s = seed_state(7)
    bools = []
    for _ in range(10):
        b, s = random_bool(s)
        bools.append(b)
    assert bools == [True, False, False, True, False, True, False, False, True, True]

    s = seed_state(5)
    vs = []
    for _ in range(6):
        v, s = signed_power_of_two(s, 0, 8)
        vs.append(v)
    assert vs == [-256, 256, -16, 1, 2, -1]


class TestWeightedSwitch:
    def test_single_case(self):
        for seed in range(20):
            i, _ = weighted_switch(seed_state(seed), (1,))
            assert i == 0

    def test_heavy_first_case_frequency(self):
        n = 1_000_000
        hits = 0
        s = seed_state(31337)
        for _ in range(n):
            i, s = weighted_switch(s, (85, 6, 6, 1, 1, 1))
            hits += i == 0
        assert 0.84 <= hits / n <= 0.86

    def test_even_pair_frequency(self):
        n = 1_000_000
        counts = Counter()
        s = seed_state(99)
        for _ in range(n):
            i, s = weighted_switch(s, (1, 1))
            counts[i] += 1
        for i in (0, 1):
            assert 0.495 <= counts[i] / n <= 0.505

    def test_bad_weights_rejected(self):
        with pytest.raises(ValueError):
            weighted_switch(seed_state(1), ())
        with pytest.raises(ValueError):
            weighted_switch(seed_state(1), (3, 0, 2))
        with pytest.raises(ValueError):
            weighted_switch(seed_state(1), (1, -1))

    @given(st.integers(0, 2**64 - 1), st.lists(st.integers(1, 50), min_size=1, max_size=8))
    @settings(max_examples=200)
    def test_index_in_range(self, seed, weights):
        i, successor = weighted_switch(seed_state(seed), weights)
        assert 0 <= i < len(weights)
        assert successor != seed_state(seed) or True  # successor is returned


class TestRandomBool:
    def test_fairness(self):
        n = 1_000_000
        trues = 0
        s = seed_state(4242)
        for _ in range(n):
            b, s = random_bool(s)
            trues += b
        assert 0.495 <= trues / n <= 0.505

    def test_deterministic_per_state(self):
        s = seed_state(17)
        r1, _ = random_bool(s)
        r2, _ = random_bool(s)
        assert r1 == r2

    def test_seeds_give_different_streams(self):
        def draws(seed, n=64):
            s = seed_state(seed)
            out = []
            for _ in range(n):
                b, s = random_bool(s)
                out.append(b)
            return out

        assert draws(1) != draws(2)


class TestSignedPowerOfTwo:
    def test_forced_magnitude(self):
        for seed in range(50):
            v, _ = signed_power_of_two(seed_state(seed), 0, 0)
            assert v in (1, -1)

    def test_range_containment(self):
        s = seed_state(8)
        for _ in range(2000):
            v, s = signed_power_of_two(s, 0, 64)
            assert abs(v) <= 2**64
            assert abs(v).bit_count() == 1

    def test_eight_value_distribution(self):
        n = 1_000_000
        counts = Counter()
        s = seed_state(2718)
        for _ in range(n):
            v, s = signed_power_of_two(s, 0, 3)
            counts[v] += 1
        values = sorted(counts)
        assert values == [-8, -4, -2, -1, 1, 2, 4, 8]
        for v in values:
            assert abs(counts[v] / n - 0.125) <= 0.005, (v, counts[v] / n)

    def test_negative_exponents_yield_fractions(self):
        s = seed_state(3)
        seen_fraction = False
        for _ in range(200):
            v, s = signed_power_of_two(s, -4, -1)
            assert isinstance(v, Fraction)
            assert v != 0
            assert v.numerator in (1, -1)
            assert v.denominator in (2, 4, 8, 16)
            seen_fraction = True
        assert seen_fraction

    def test_empty_range_rejected(self):
        with pytest.raises(ValueError):
            signed_power_of_two(seed_state(1), 3, 2)

    @given(st.integers(0, 2**64 - 1), st.integers(-16, 16), st.integers(0, 8))
    @settings(max_examples=300)
    def test_exponent_always_in_range(self, seed, lo, span):
        hi = lo + span
        v, _ = signed_power_of_two(seed_state(seed), lo, hi)
        assert v != 0
        mag = abs(v)
        if isinstance(mag, Fraction):
            assert mag.numerator == 1
            e = -(mag.denominator.bit_length() - 1)
        else:
            e = mag.bit_length() - 1
        assert lo <= e <= hi
