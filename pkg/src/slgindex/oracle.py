"""Brute-force reference implementations used to check the real index.

Everything here works on plain byte strings and is deliberately simple:
pattern search is a direct scan, maximal repeats come straight from the
left/right maximality definitions, and the reference CDAWG is built from
end-position equivalence classes and then compacted. None of it shares
code with the on-line construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable

from .cdawg import Cdawg, compute_counts
from .errors import ScaleError

MAX_REPEAT_TEXT = 4096
MAX_REFERENCE_TEXT = 512


def naive_search(text: bytes, pattern: bytes) -> list[int]:
    """All start positions of ``pattern`` in ``text``, ascending."""
    if not pattern:
        raise ValueError("pattern must be non-empty")
    hits = []
    p = text.find(pattern)
    while p != -1:
        hits.append(p)
        p = text.find(pattern, p + 1)
    return hits


@dataclass
class RepeatReport:
    maximal_repeats: set[bytes] = field(default_factory=set)
    er: int = 0
    el: int = 0


def _lcp(text: bytes, a: int, b: int) -> int:
    lo, hi = 0, len(text) - max(a, b)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if text[a:a + mid] == text[b:b + mid]:
            lo = mid
        else:
            hi = mid - 1
    return lo


def maximal_repeats(text: bytes) -> RepeatReport:
    """Enumerate the maximal repeats of ``text`` and count their extensions.

    Text boundaries act as unique contexts, so an occurrence at position 0
    makes a repeat left-maximal and one touching the end makes it
    right-maximal. The empty string is always included.

    Only right-maximal repeats can be maximal, so the search walks the
    branching points of the suffix trie: occurrences of a repeat are grouped
    by their next character and each group is extended for as long as all of
    its members agree.
    """
    n = len(text)
    if n > MAX_REPEAT_TEXT:
        raise ScaleError(f"oracle is capped at {MAX_REPEAT_TEXT} bytes, got {n}")
    report = RepeatReport()
    if n == 0:
        return report
    alphabet = len(set(text))
    report.maximal_repeats.add(b"")
    report.er += alphabet
    report.el += alphabet

    stack = [(0, list(range(n)))]
    while stack:
        depth, occ = stack.pop()
        groups: dict[int, list[int]] = {}
        for p in occ:
            if p + depth < n:
                groups.setdefault(text[p + depth], []).append(p)
        for group in groups.values():
            if len(group) < 2:
                continue
            first = group[0]
            d = depth + 1
            d += min(_lcp(text, first + d, p + d) for p in group[1:])
            stack.append((d, group))
            lefts = {text[p - 1] if p > 0 else -1 for p in group}
            if len(lefts) < 2 and -1 not in lefts:
                continue
            report.maximal_repeats.add(text[first:first + d])
            report.er += len({text[p + d] for p in group if p + d < n})
            report.el += len(lefts - {-1})
    return report


def reference_cdawg(text: bytes) -> Cdawg:
    """CDAWG built from first principles.

    States of the minimal suffix automaton are the distinct sets of
    "next positions" reached by substrings; compaction then drops every
    state with a single out-transition. ``text`` must end in a byte that
    occurs nowhere else.
    """
    n = len(text)
    if n > MAX_REFERENCE_TEXT:
        raise ScaleError(f"reference CDAWG is capped at {MAX_REFERENCE_TEXT} bytes, got {n}")
    if n == 0 or text[-1] in text[:-1]:
        raise ValueError("text must end with a unique terminator byte")

    root = frozenset(range(n + 1))
    ids = {root: 0}
    states = [root]
    trans: list[dict[int, int]] = []
    i = 0
    while i < len(states):
        st = states[i]
        moves: dict[int, set[int]] = {}
        for q in st:
            if q < n:
                moves.setdefault(text[q], set()).add(q + 1)
        row = {}
        for ch in sorted(moves):
            nxt = frozenset(moves[ch])
            if nxt not in ids:
                ids[nxt] = len(states)
                states.append(nxt)
            row[ch] = ids[nxt]
        trans.append(row)
        i += 1
    sink_state = ids[frozenset({n})]

    def keep(s: int) -> bool:
        return s == 0 or len(trans[s]) != 1

    kept = [s for s in range(len(states)) if keep(s)]
    # source first, sink second, the rest in discovery order
    order = [0, sink_state] + [s for s in kept if s not in (0, sink_state)]
    remap = {s: k for k, s in enumerate(order)}

    node_edges: list[list[int]] = []
    edge_target, edge_start, edge_end, edge_first = [], [], [], []
    succ: list[list[tuple[int, int]]] = []
    for s in order:
        ids_here = []
        row_succ = []
        for ch, nxt in sorted(trans[s].items()):
            size = 1
            while not keep(nxt):
                (nxt,) = trans[nxt].values()
                size += 1
            q = min(states[nxt])
            ids_here.append(len(edge_target))
            edge_target.append(remap[nxt])
            edge_start.append(q - size)
            edge_end.append(q - 1)
            edge_first.append(ch)
            row_succ.append((remap[nxt], size))
        node_edges.append(ids_here)
        succ.append(row_succ)

    # longest path from the source gives each node's string depth
    indeg = [0] * len(order)
    for row in succ:
        for w, _ in row:
            indeg[w] += 1
    depth = [0] * len(order)
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w, size in succ[v]:
            depth[w] = max(depth[w], depth[v] + size)
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)

    c = Cdawg(n, depth, node_edges, edge_target, edge_start, edge_end, edge_first, source=0, sink=1)
    return compute_counts(c)


def cdawg_signature(c: Cdawg, label: Callable[[int], bytes]) -> tuple:
    """Canonical form of a CDAWG up to node numbering and label provenance.

    Nodes are renumbered in BFS order from the source, visiting out-edges by
    first byte; each edge contributes its spelled label and target. Two
    deterministic automata are isomorphic iff their signatures are equal.
    """
    ids = {c.source: 0}
    order = [c.source]
    rows = []
    i = 0
    while i < len(order):
        v = order[i]
        row = []
        for e in sorted(c.node_edges[v], key=lambda e: c.edge_first[e]):
            w = c.edge_target[e]
            if w not in ids:
                ids[w] = len(order)
                order.append(w)
            row.append((label(e), ids[w]))
        rows.append(tuple(row))
        i += 1
    return tuple(rows)


def text_labeler(c: Cdawg, text: bytes) -> Callable[[int], bytes]:
    return lambda e: text[c.edge_start[e]:c.edge_end[e] + 1]


def cdawg_isomorphic(a: Cdawg, text_a: bytes, b: Cdawg, text_b: bytes) -> bool:
    return cdawg_signature(a, text_labeler(a, text_a)) == cdawg_signature(b, text_labeler(b, text_b))
