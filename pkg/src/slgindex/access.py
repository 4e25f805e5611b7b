"""Random access into a grammar through a sorted index on the start rule.

The index records the text position at which each start-rule symbol
begins. A query binary-searches for the symbol covering its first
position, walks down that symbol's parse tree using the memoized
expansion lengths to skip whole subtrees, and then streams characters
until the request is satisfied.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import deque
from dataclasses import dataclass, fields

from .errors import OutOfBounds
from .grammar import RULE_BASE, Grammar

DEFAULT_CACHE_CAPACITY = 65536


@dataclass
class AccessCounters:
    ra_calls: int = 0
    chars_decoded: int = 0
    cache_hits: int = 0
    cache_misses: int = 0

    def reset(self) -> None:
        for f in fields(self):
            setattr(self, f.name, 0)

    def snapshot(self) -> AccessCounters:
        return AccessCounters(self.ra_calls, self.chars_decoded, self.cache_hits, self.cache_misses)

    def __sub__(self, other: AccessCounters) -> AccessCounters:
        return AccessCounters(
            self.ra_calls - other.ra_calls,
            self.chars_decoded - other.chars_decoded,
            self.cache_hits - other.cache_hits,
            self.cache_misses - other.cache_misses,
        )

    @property
    def hit_rate(self) -> float:
        lookups = self.cache_hits + self.cache_misses
        return self.cache_hits / lookups if lookups else 0.0


class FifoCache:
    """Fixed-capacity position -> byte cache with first-in-first-out eviction.

    Hits do not refresh an entry's age. A capacity of 0 disables caching.
    """

    def __init__(self, capacity: int = DEFAULT_CACHE_CAPACITY) -> None:
        if capacity < 0:
            raise ValueError("cache capacity must be >= 0")
        self.capacity = capacity
        self._data: dict[int, int] = {}
        self._order: deque[int] = deque()

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, pos: int) -> bool:
        return pos in self._data

    def get(self, pos: int) -> int | None:
        return self._data.get(pos)

    def put(self, pos: int, char: int) -> None:
        if self.capacity == 0 or pos in self._data:
            return
        if len(self._order) >= self.capacity:
            del self._data[self._order.popleft()]
        self._data[pos] = char
        self._order.append(pos)

    def clear(self) -> None:
        self._data.clear()
        self._order.clear()


@dataclass(frozen=True)
class PositionIndex:
    positions: list[int]
    symbols: list[int]
    n: int

    def covering(self, i: int) -> int:
        """Index k of the start-rule symbol whose expansion contains position i."""
        return bisect_right(self.positions, i) - 1


def build_position_index(g: Grammar) -> PositionIndex:
    positions = []
    pos = 0
    for s in g.start_rule:
        positions.append(pos)
        pos += 1 if s < RULE_BASE else g.lengths[s - RULE_BASE]
    return PositionIndex(positions, list(g.start_rule), g.n)


def access_range(
    idx: PositionIndex,
    g: Grammar,
    i: int,
    j: int,
    counters: AccessCounters | None = None,
) -> bytes:
    """Return ``T[i..j]`` (inclusive) decoded from the grammar."""
    if i < 0 or j >= idx.n or i > j:
        raise OutOfBounds(f"invalid range [{i}, {j}] for text of length {idx.n}")
    need = j - i + 1
    if counters is not None:
        counters.ra_calls += 1
        counters.chars_decoded += need

    rules = g.rules
    lengths = g.lengths
    symbols = idx.symbols
    k = bisect_right(idx.positions, i) - 1
    off = i - idx.positions[k]
    out = bytearray()

    while need:
        sym = symbols[k]
        k += 1
        if sym < RULE_BASE:
            out.append(sym)
            need -= 1
            off = 0
            continue
        # descend to the leaf at offset `off`, skipping earlier subtrees by length
        stack = []
        while sym >= RULE_BASE:
            production = rules[sym - RULE_BASE]
            t = 0
            while True:
                s = production[t]
                size = 1 if s < RULE_BASE else lengths[s - RULE_BASE]
                if off < size:
                    break
                off -= size
                t += 1
            stack.append([production, t + 1])
            sym = s
        off = 0
        out.append(sym)
        need -= 1
        while need and stack:
            frame = stack[-1]
            production, t = frame
            if t == len(production):
                stack.pop()
                continue
            frame[1] = t + 1
            s = production[t]
            if s < RULE_BASE:
                out.append(s)
                need -= 1
            else:
                stack.append([rules[s - RULE_BASE], 0])
    return bytes(out)


def access_char(
    idx: PositionIndex,
    g: Grammar,
    i: int,
    cache: FifoCache | None = None,
    counters: AccessCounters | None = None,
) -> int:
    """Return ``T[i]``, consulting ``cache`` before touching the grammar."""
    if cache is not None:
        c = cache.get(i)
        if c is not None:
            if counters is not None:
                counters.cache_hits += 1
            return c
        if counters is not None:
            counters.cache_misses += 1
    c = access_range(idx, g, i, i, counters)[0]
    if cache is not None:
        cache.put(i, c)
    return c


class RandomAccess:
    """A grammar plus its position index, cache and counters.

    One instance is one access session: the cache and counters are not
    shared, so concurrent users should each hold their own.
    """

    def __init__(
        self,
        grammar: Grammar,
        index: PositionIndex | None = None,
        cache_capacity: int = DEFAULT_CACHE_CAPACITY,
        counters: AccessCounters | None = None,
    ) -> None:
        self.grammar = grammar
        self.index = index if index is not None else build_position_index(grammar)
        self.cache = FifoCache(cache_capacity)
        self.counters = counters if counters is not None else AccessCounters()

    @property
    def n(self) -> int:
        return self.grammar.n

    def range(self, i: int, j: int) -> bytes:
        return access_range(self.index, self.grammar, i, j, self.counters)

    def char(self, i: int) -> int:
        return access_char(self.index, self.grammar, i, self.cache, self.counters)

    def session(self) -> RandomAccess:
        """A fresh session over the same grammar and index."""
        return RandomAccess(self.grammar, self.index, self.cache.capacity)
