"""Re-Pair grammar compression.

The most frequent adjacent pair is repeatedly replaced by a fresh rule
until no pair occurs twice. Ties go to the numerically smallest
(left, right) pair, and pairs inside runs (``aaa``) are counted without
overlap, left to right, so the output is fully deterministic.

The working sequence is a doubly linked list over the input positions.
Each pair maps to the set of positions where it starts. A max-heap keyed
on frequency is maintained lazily: an entry is only trusted after its
count has been recomputed on pop.
"""

from __future__ import annotations

import heapq

from .grammar import RULE_BASE, Grammar, terminate

_SHIFT = 32
_MASK = (1 << _SHIFT) - 1
_GONE = -1


def _exact_count(positions: set[int], run: bool, nxt: list[int]) -> int:
    if not run:
        return len(positions)
    total = 0
    last = _GONE
    for p in sorted(positions):
        if last != _GONE and nxt[last] == p:
            continue
        total += 1
        last = p
    return total


def pair_counts(seq: list[int]) -> dict[tuple[int, int], int]:
    """Non-overlapping left-to-right counts of adjacent pairs in ``seq``."""
    counts: dict[tuple[int, int], int] = {}
    prev_counted = -2
    for i in range(len(seq) - 1):
        pair = (seq[i], seq[i + 1])
        if pair[0] == pair[1] and prev_counted == i - 1 and seq[i - 1] == seq[i]:
            continue
        counts[pair] = counts.get(pair, 0) + 1
        prev_counted = i
    return counts


def repair_compress(text: bytes) -> Grammar:
    """Compress ``text`` (terminated per the grammar policy) with Re-Pair."""
    seq = list(terminate(text))
    n = len(seq)
    nxt = list(range(1, n + 1))
    nxt[-1] = _GONE
    prv = list(range(-1, n - 1))

    occ: dict[int, set[int]] = {}
    for i in range(n - 1):
        occ.setdefault(seq[i] << _SHIFT | seq[i + 1], set()).add(i)
    heap = [(-len(s), key) for key, s in occ.items() if len(s) >= 2]
    heapq.heapify(heap)

    rules: list[tuple[int, int]] = []
    while heap:
        neg, key = heapq.heappop(heap)
        positions = occ.get(key)
        if not positions:
            continue
        a, b = key >> _SHIFT, key & _MASK
        freq = _exact_count(positions, a == b, nxt)
        if freq < -neg:
            if freq >= 2:
                heapq.heappush(heap, (-freq, key))
            continue
        if freq > -neg:
            # a larger entry for this pair is still queued
            continue

        x = RULE_BASE + len(rules)
        rules.append((a, b))
        del occ[key]
        touched = set()
        for p in sorted(positions):
            if seq[p] != a:
                continue
            q = nxt[p]
            if q == _GONE or seq[q] != b:
                continue
            left = prv[p]
            right = nxt[q]
            if left != _GONE:
                old = occ.get(seq[left] << _SHIFT | a)
                if old is not None:
                    old.discard(left)
            if right != _GONE:
                old = occ.get(b << _SHIFT | seq[right])
                if old is not None:
                    old.discard(q)
            seq[p] = x
            seq[q] = _GONE
            nxt[p] = right
            if right != _GONE:
                prv[right] = p
            if left != _GONE:
                k = seq[left] << _SHIFT | x
                occ.setdefault(k, set()).add(left)
                touched.add(k)
            if right != _GONE:
                k = x << _SHIFT | seq[right]
                occ.setdefault(k, set()).add(p)
                touched.add(k)
        for k in sorted(touched):
            s = occ.get(k)
            if s and len(s) >= 2:
                heapq.heappush(heap, (-len(s), k))

    start_rule = []
    i = 0
    while i != _GONE:
        start_rule.append(seq[i])
        i = nxt[i]
    return Grammar([*rules, tuple(start_rule)], len(rules))
