import random

import pytest
from hypothesis import given, settings, strategies as st

from slgindex.access import (
    AccessCounters,
    FifoCache,
    RandomAccess,
    access_char,
    access_range,
    build_position_index,
)
from slgindex.errors import OutOfBounds
from slgindex.grammar import expand_bytes
from slgindex.repair import repair_compress

from conftest import random_grammar


def test_position_index_example(example):
    idx = build_position_index(example)
    assert idx.positions == [0, 1, 5, 7, 11, 13, 15]
    assert idx.n == 16


def test_range_inside_rules(example):
    ra = RandomAccess(example)
    assert ra.range(6, 9) == b"AGAG"
    assert ra.range(0, 15) == b"AGAGCGAGAGCGCGC$"
    assert ra.range(15, 15) == b"$"


def test_char_and_cache(example):
    ra = RandomAccess(example)
    assert ra.char(5) == ord("G")
    before = ra.counters.snapshot()
    assert ra.char(5) == ord("G")
    delta = ra.counters - before
    assert delta.cache_hits == 1
    assert delta.ra_calls == 0


def test_counters_count_calls_and_chars(example):
    ra = RandomAccess(example)
    ra.range(2, 9)
    ra.range(3, 3)
    assert ra.counters.ra_calls == 2
    assert ra.counters.chars_decoded == 9


@pytest.mark.parametrize("i, j", [(-1, 3), (0, 16), (5, 4), (16, 16)])
def test_out_of_bounds(example, i, j):
    with pytest.raises(OutOfBounds):
        RandomAccess(example).range(i, j)


def test_out_of_bounds_is_index_error(example):
    with pytest.raises(IndexError):
        RandomAccess(example).char(99)


def test_fifo_eviction_order():
    cache = FifoCache(2)
    cache.put(1, 10)
    cache.put(2, 20)
    cache.get(1)  # FIFO: a read does not refresh the entry
    cache.put(3, 30)
    assert 1 not in cache
    assert cache.get(2) == 20 and cache.get(3) == 30
    assert len(cache) == 2


def test_zero_capacity_cache_stores_nothing(example):
    cache = FifoCache(0)
    cache.put(1, 1)
    assert len(cache) == 0
    idx = build_position_index(example)
    k = AccessCounters()
    access_char(idx, example, 3, cache, k)
    access_char(idx, example, 3, cache, k)
    assert k.ra_calls == 2 and k.cache_hits == 0


def test_cache_is_transparent():
    rng = random.Random(1)
    g = repair_compress(bytes(rng.choice(b"acgt") for _ in range(3000)))
    text = expand_bytes(g)
    for capacity in (0, 1, 17, 65536):
        ra = RandomAccess(g, cache_capacity=capacity)
        for _ in range(2000):
            i = rng.randrange(len(text))
            assert ra.char(i) == text[i]


def test_random_slices_match_plain_text():
    rng = random.Random(2)
    base = bytes(rng.choice(b"ab") for _ in range(400))
    g = repair_compress(base * 20)
    text = expand_bytes(g)
    ra = RandomAccess(g)
    for _ in range(10_000):
        i = rng.randrange(len(text))
        j = rng.randrange(i, min(len(text), i + 300))
        assert ra.range(i, j) == text[i:j + 1]


def test_session_has_own_cache(example):
    ra = RandomAccess(example)
    ra.char(0)
    other = ra.session()
    assert other.index is ra.index
    assert len(other.cache) == 0
    assert other.counters is not ra.counters


def test_hit_rate():
    k = AccessCounters(cache_hits=3, cache_misses=1)
    assert k.hit_rate == 0.75
    assert AccessCounters().hit_rate == 0.0


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.data())
def test_range_property(seed, data):
    g = random_grammar(random.Random(seed), 12, max_len=3)
    if g.n > 5000:
        return
    text = expand_bytes(g)
    i = data.draw(st.integers(0, len(text) - 1))
    j = data.draw(st.integers(i, len(text) - 1))
    assert access_range(build_position_index(g), g, i, j) == text[i:j + 1]
