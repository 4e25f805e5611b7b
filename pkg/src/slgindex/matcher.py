"""Exists / count / locate over a CDAWG whose labels live in a grammar.

Matching walks down from the source. At each node the out-edge is chosen
by its memoized first byte, so only the remaining label bytes are fetched
from the grammar, one ``access_range`` call per edge. Locating then
enumerates the paths from the match point to the sink using the stored
interval lengths alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

from .access import DEFAULT_CACHE_CAPACITY, AccessCounters, RandomAccess
from .cdawg import Cdawg, build_cdawg
from .errors import EmptyPattern
from .grammar import Grammar


class RangeReader(Protocol):
    counters: AccessCounters

    def range(self, i: int, j: int) -> bytes: ...


@dataclass(frozen=True)
class MatchPoint:
    node: int
    edge: int | None
    offset: int
    matched_len: int

    def forward_node(self, c: Cdawg) -> int:
        """Node whose paths to the sink extend the match."""
        return self.node if self.edge is None else c.edge_target[self.edge]


def find_point(c: Cdawg, ra: RangeReader, pattern: bytes) -> MatchPoint | None:
    m = len(pattern)
    if m == 0:
        raise EmptyPattern("empty pattern")
    node = c.source
    i = 0
    while True:
        e = c.edge(node, pattern[i])
        if e is None:
            return None
        size = c.edge_end[e] - c.edge_start[e] + 1
        take = min(size, m - i)
        if take > 1:
            start = c.edge_start[e]
            if ra.range(start + 1, start + take - 1) != pattern[i + 1:i + take]:
                return None
        i += take
        if i == m:
            if take == size:
                target = c.edge_target[e]
                return MatchPoint(target, None, 0, m)
            return MatchPoint(node, e, take, m)
        node = c.edge_target[e]


def exists(c: Cdawg, ra: RangeReader, pattern: bytes) -> bool:
    return find_point(c, ra, pattern) is not None


def count(c: Cdawg, ra: RangeReader, pattern: bytes) -> int:
    point = find_point(c, ra, pattern)
    if point is None:
        return 0
    return c.count(point.forward_node(c))


def locate_from(c: Cdawg, point: MatchPoint) -> list[int]:
    """Occurrence positions below ``point``, in traversal order.

    A path from the match point to the sink spells the rest of a suffix of
    length ``m + r``; that suffix starts at ``n - m - r``.
    """
    n, m = c.n, point.matched_len
    if point.edge is None:
        node, rest = point.node, 0
    else:
        e = point.edge
        node = c.edge_target[e]
        rest = c.edge_end[e] - c.edge_start[e] + 1 - point.offset
    edges_of, target, start, end = c.node_edges, c.edge_target, c.edge_start, c.edge_end
    sink = c.sink
    out = []
    stack = [(node, rest)]
    while stack:
        v, r = stack.pop()
        if v == sink:
            out.append(n - m - r)
            continue
        for e in edges_of[v]:
            stack.append((target[e], r + end[e] - start[e] + 1))
    return out


def locate(c: Cdawg, ra: RangeReader, pattern: bytes) -> list[int]:
    point = find_point(c, ra, pattern)
    if point is None:
        return []
    return sorted(locate_from(c, point))


class Index:
    """A grammar plus its CDAWG: the full pattern-matching index."""

    def __init__(self, cdawg: Cdawg, ra: RandomAccess) -> None:
        self.cdawg = cdawg
        self.ra = ra

    @classmethod
    def build(cls, grammar: Grammar, cache_capacity: int = DEFAULT_CACHE_CAPACITY) -> Index:
        ra = RandomAccess(grammar, cache_capacity=cache_capacity)
        cdawg = build_cdawg(grammar, ra.index, ra.cache, ra.counters)
        return cls(cdawg, ra)

    @property
    def counters(self) -> AccessCounters:
        return self.ra.counters

    def exists(self, pattern: bytes) -> bool:
        return exists(self.cdawg, self.ra, pattern)

    def count(self, pattern: bytes) -> int:
        return count(self.cdawg, self.ra, pattern)

    def locate(self, pattern: bytes) -> list[int]:
        return locate(self.cdawg, self.ra, pattern)
