"""Compact directed acyclic word graph over a grammar-compressed text.

Edges carry ``(start, end)`` intervals into the text instead of labels,
plus a memo of the label's first byte. The text itself is never stored:
every character the construction needs is fetched through a caller
supplied ``char_at`` function, which for grammar input goes through
:func:`slgindex.access.access_char`.

Construction is on-line: :class:`CdawgBuilder` consumes one character at
a time and after each step holds the CDAWG of the prefix read so far, in
the style of Ukkonen's suffix tree algorithm. Nodes reached on the suffix
chain by edges that end at the same node are merged (``redirect``), and a
node reached through a non-solid edge is split off (``separate``).
"""

from __future__ import annotations

import struct
from typing import Callable, Iterable, Iterator

from .access import AccessCounters, FifoCache, PositionIndex, access_char, build_position_index
from .errors import CycleError, FormatError, TerminatorError, VersionError
from .grammar import TERMINATOR, Grammar, expand

OPEN = -1
BOTTOM = -1
SOURCE = 0
SINK = 1

MAGIC = b"CDG1"
VERSION = 1
_HEADER = struct.Struct("<4sIQIIII")
_NODE = struct.Struct("<QQI")
_EDGE = struct.Struct("<IQQB")


class Cdawg:
    """A finished, immutable CDAWG.

    Nodes and edges are dense integer ids. ``edge_end`` is inclusive, so the
    label of edge ``e`` is ``T[edge_start[e] .. edge_end[e]]``.
    """

    def __init__(
        self,
        n: int,
        node_len: list[int],
        node_edges: list[list[int]],
        edge_target: list[int],
        edge_start: list[int],
        edge_end: list[int],
        edge_first: list[int],
        source: int = SOURCE,
        sink: int = SINK,
        node_count: list[int] | None = None,
    ) -> None:
        self.n = n
        self.node_len = node_len
        self.node_edges = node_edges
        self.edge_target = edge_target
        self.edge_start = edge_start
        self.edge_end = edge_end
        self.edge_first = edge_first
        self.source = source
        self.sink = sink
        self.node_count = node_count
        self._out = [{edge_first[e]: e for e in edges} for edges in node_edges]

    @property
    def num_nodes(self) -> int:
        return len(self.node_len)

    @property
    def num_edges(self) -> int:
        return len(self.edge_target)

    def edge(self, node: int, first: int) -> int | None:
        """Out-edge of ``node`` whose label starts with byte ``first``."""
        return self._out[node].get(first)

    def label_length(self, e: int) -> int:
        return self.edge_end[e] - self.edge_start[e] + 1

    def out_edges(self, node: int) -> list[int]:
        return self.node_edges[node]

    def count(self, node: int) -> int:
        if self.node_count is None:
            raise RuntimeError("path counts not computed; call compute_counts first")
        return self.node_count[node]

    def stats(self) -> dict:
        return cdawg_stats(self)


def compute_counts(c: Cdawg) -> Cdawg:
    """Fill ``c.node_count`` with the number of paths from each node to the sink."""
    counts: list[int | None] = [None] * c.num_nodes
    onstack = [False] * c.num_nodes
    stack = [(c.source, 0)]
    onstack[c.source] = True
    # also cover nodes not reachable from the source, for defensive validation
    roots = iter(range(c.num_nodes))
    while True:
        while stack:
            v, i = stack[-1]
            edges = c.node_edges[v]
            if i < len(edges):
                stack[-1] = (v, i + 1)
                w = c.edge_target[edges[i]]
                if counts[w] is None:
                    if onstack[w]:
                        raise CycleError(f"cycle through node {w}")
                    onstack[w] = True
                    stack.append((w, 0))
                continue
            stack.pop()
            onstack[v] = False
            counts[v] = 1 if not edges else sum(counts[c.edge_target[e]] for e in edges)
        v = next((r for r in roots if counts[r] is None), None)
        if v is None:
            break
        onstack[v] = True
        stack.append((v, 0))
    c.node_count = counts
    return c


def cdawg_stats(c: Cdawg) -> dict:
    return {
        "nodes": c.num_nodes,
        "edges": c.num_edges,
        "source_out_degree": len(c.node_edges[c.source]),
    }


class CdawgBuilder:
    """On-line CDAWG construction.

    ``char_at(pos)`` must return the text byte at a position already fed to
    :meth:`extend`. ``on_char`` is called with ``(pos, byte)`` for each new
    character; the grammar driver uses it to seed the FIFO cache with the
    freshly streamed text.
    """

    def __init__(
        self,
        char_at: Callable[[int], int],
        on_char: Callable[[int, int], None] | None = None,
    ) -> None:
        self._char_at = char_at
        self._on_char = on_char
        self.length = [0, 0]
        self.suf = [BOTTOM, BOTTOM]
        self.out: list[dict[int, int]] = [{}, {}]
        self.e_start: list[int] = []
        self.e_end: list[int] = []
        self.e_target: list[int] = []
        self.pos = -1
        self._cur = -1
        self._s = SOURCE
        self._k = 0
        self._char_counts = [0] * 256

    # -- helpers ------------------------------------------------------------

    def _t(self, pos: int) -> int:
        if pos == self.pos:
            return self._cur
        return self._char_at(pos)

    def _end(self, ei: int) -> int:
        end = self.e_end[ei]
        return self.pos if end == OPEN else end

    def _new_node(self, length: int) -> int:
        self.length.append(length)
        self.suf.append(BOTTOM)
        self.out.append({})
        return len(self.length) - 1

    def _new_edge(self, start: int, end: int, target: int) -> int:
        self.e_start.append(start)
        self.e_end.append(end)
        self.e_target.append(target)
        return len(self.e_target) - 1

    def _canonize(self, s: int, k: int, p: int) -> tuple[int, int]:
        if k > p:
            return s, k
        if s == BOTTOM:
            s = SOURCE
            k += 1
            if k > p:
                return s, k
        out, e_start, e_target = self.out, self.e_start, self.e_target
        ei = out[s][self._t(k)]
        ks = e_start[ei]
        ke = self._end(ei)
        while ke - ks <= p - k:
            k += ke - ks + 1
            s = e_target[ei]
            if k > p:
                break
            ei = out[s][self._t(k)]
            ks = e_start[ei]
            ke = self._end(ei)
        return s, k

    # -- construction -------------------------------------------------------

    def extend(self, c: int) -> None:
        """Append byte ``c`` to the indexed text."""
        p = self.pos + 1
        self.pos = p
        self._cur = c
        self._char_counts[c] += 1
        if self._on_char is not None:
            self._on_char(p, c)
        self._s, self._k = self._update(self._s, self._k, p, c)

    def feed(self, chars: Iterable[int]) -> None:
        for c in chars:
            self.extend(c)

    def _update(self, s: int, k: int, p: int, c: int) -> tuple[int, int]:
        # (s, (k, p-1)) is the canonical reference pair of the active point
        out, e_start, e_end, e_target = self.out, self.e_start, self.e_end, self.e_target
        length, suf = self.length, self.suf
        t = self._t
        oldr = -2
        r = -2
        prev_ext = -2
        while True:
            if k <= p - 1:
                ei = out[s][t(k)]
                probe = t(e_start[ei] + p - k)
                if probe == c:
                    break
                ext = e_target[ei]
                if ext == prev_ext:
                    e_end[ei] = e_start[ei] + p - 1 - k
                    e_target[ei] = r
                    s, k = self._canonize(suf[s], k, p - 1)
                    continue
                prev_ext = ext
                mid = e_start[ei] + p - 1 - k
                r = self._new_node(length[s] + p - k)
                tail = self._new_edge(mid + 1, e_end[ei], ext)
                out[r][probe] = tail
                e_end[ei] = mid
                e_target[ei] = r
            else:
                if s == BOTTOM or c in out[s]:
                    break
                r = s
            out[r][c] = self._new_edge(p, OPEN, SINK)
            if oldr != -2:
                suf[oldr] = r
            oldr = r
            s, k = self._canonize(suf[s], k, p - 1)
        if oldr != -2:
            suf[oldr] = s
        return self._separate(s, k, p)

    def _separate(self, s: int, k: int, p: int) -> tuple[int, int]:
        s2, k2 = self._canonize(s, k, p)
        if k2 <= p:
            return s2, k2
        base = -1 if s == BOTTOM else self.length[s]
        if self.length[s2] == base + p - k + 1:
            return s2, k2
        # the active point is an explicit node reached by a non-solid edge
        r = self._new_node(base + p - k + 1)
        for ch, ei in self.out[s2].items():
            self.out[r][ch] = self._new_edge(self.e_start[ei], self.e_end[ei], self.e_target[ei])
        self.suf[r] = self.suf[s2]
        self.suf[s2] = r
        while True:
            ei = self.out[s][self._t(k)]
            self.e_target[ei] = r
            s, k = self._canonize(self.suf[s], k, p - 1)
            if s == BOTTOM or self._canonize(s, k, p) != (s2, k2):
                break
        return r, p + 1

    def finish(self, terminator: int | None = TERMINATOR) -> Cdawg:
        """Freeze the structure into a :class:`Cdawg` with path counts.

        The last byte read must occur exactly once in the text; with the
        default ``terminator`` it must also be ``$``.
        """
        if self.pos < 0:
            raise TerminatorError("no characters were read")
        last = self._cur
        if terminator is not None and last != terminator:
            raise TerminatorError(f"text ends with byte {last}, not the terminator {terminator}")
        if self._char_counts[last] != 1:
            raise TerminatorError(f"final byte {last} is not unique in the text")
        n = self.pos + 1

        # keep nodes reachable from the source, renumbered in creation order
        seen = {SOURCE}
        stack = [SOURCE]
        while stack:
            v = stack.pop()
            for ei in self.out[v].values():
                w = self.e_target[ei]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        order = sorted(seen)
        remap = {old: new for new, old in enumerate(order)}

        node_len = [n if v == SINK else self.length[v] for v in order]
        node_edges: list[list[int]] = []
        edge_target: list[int] = []
        edge_start: list[int] = []
        edge_end: list[int] = []
        edge_first: list[int] = []
        for v in order:
            ids = []
            for ch in sorted(self.out[v]):
                ei = self.out[v][ch]
                ids.append(len(edge_target))
                edge_target.append(remap[self.e_target[ei]])
                edge_start.append(self.e_start[ei])
                end = self.e_end[ei]
                edge_end.append(n - 1 if end == OPEN else end)
                edge_first.append(ch)
            node_edges.append(ids)
        c = Cdawg(
            n, node_len, node_edges, edge_target, edge_start, edge_end, edge_first,
            source=remap[SOURCE], sink=remap[SINK],
        )
        return compute_counts(c)


def build_cdawg(
    g: Grammar,
    idx: PositionIndex | None = None,
    cache: FifoCache | None = None,
    counters: AccessCounters | None = None,
) -> Cdawg:
    """Build the CDAWG of the text produced by ``g``, streaming its expansion.

    Already-indexed characters are fetched through grammar random access,
    backed by ``cache``; the streamed characters themselves seed the cache.
    """
    if idx is None:
        idx = build_position_index(g)
    if cache is None:
        cache = FifoCache()
    if counters is None:
        counters = AccessCounters()

    def char_at(pos: int) -> int:
        return access_char(idx, g, pos, cache, counters)

    builder = CdawgBuilder(char_at, cache.put)
    builder.feed(expand(g))
    return builder.finish()


def build_cdawg_from_bytes(text: bytes, terminator: int | None = TERMINATOR) -> Cdawg:
    """Build directly over an in-memory byte string (tests and small tools)."""
    builder = CdawgBuilder(text.__getitem__)
    builder.feed(text)
    return builder.finish(terminator)


# ---------------------------------------------------------------- serialization


def serialize_cdawg(c: Cdawg) -> bytes:
    if c.node_count is None:
        compute_counts(c)
    parts = [
        _HEADER.pack(MAGIC, VERSION, c.n, c.num_nodes, c.num_edges, c.source, c.sink)
    ]
    for v in range(c.num_nodes):
        edges = c.node_edges[v]
        parts.append(_NODE.pack(c.node_len[v], c.node_count[v], len(edges)))
        parts.append(struct.pack(f"<{len(edges)}I", *edges))
    for e in range(c.num_edges):
        parts.append(_EDGE.pack(c.edge_target[e], c.edge_start[e], c.edge_end[e], c.edge_first[e]))
    return b"".join(parts)


def deserialize_cdawg(data: bytes) -> Cdawg:
    if len(data) < _HEADER.size:
        raise FormatError("truncated CDG1 header")
    magic, version, n, node_count, edge_count, source, sink = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise FormatError("bad magic, expected CDG1")
    if version != VERSION:
        raise VersionError(f"unsupported CDG1 version {version}")
    if node_count < 2:
        raise FormatError("a CDAWG needs at least a source and a sink")
    if not (source < node_count and sink < node_count and source != sink):
        raise FormatError("source/sink ids out of range")
    off = _HEADER.size
    node_len, counts, node_edges = [], [], []
    try:
        for _ in range(node_count):
            length, count, degree = _NODE.unpack_from(data, off)
            off += _NODE.size
            ids = list(struct.unpack_from(f"<{degree}I", data, off))
            off += 4 * degree
            node_len.append(length)
            counts.append(count)
            node_edges.append(ids)
        edge_target, edge_start, edge_end, edge_first = [], [], [], []
        for _ in range(edge_count):
            target, start, end, first = _EDGE.unpack_from(data, off)
            off += _EDGE.size
            edge_target.append(target)
            edge_start.append(start)
            edge_end.append(end)
            edge_first.append(first)
    except struct.error as exc:
        raise FormatError("truncated CDG1 stream") from exc
    if off != len(data):
        raise FormatError(f"{len(data) - off} trailing bytes in CDG1 stream")
    if any(e >= edge_count for ids in node_edges for e in ids):
        raise FormatError("node references an undefined edge")
    if any(t >= node_count for t in edge_target):
        raise FormatError("edge targets an undefined node")
    if any(not 0 <= s <= e < n for s, e in zip(edge_start, edge_end)):
        raise FormatError("edge interval outside the text")
    return Cdawg(
        n, node_len, node_edges, edge_target, edge_start, edge_end, edge_first,
        source=source, sink=sink, node_count=counts,
    )


def iter_paths(c: Cdawg, node: int) -> Iterator[int]:
    """Yield the total label length of every path from ``node`` to the sink."""
    stack = [(node, 0)]
    edges_of, target, start, end = c.node_edges, c.edge_target, c.edge_start, c.edge_end
    while stack:
        v, depth = stack.pop()
        edges = edges_of[v]
        if not edges:
            yield depth
            continue
        for e in edges:
            stack.append((target[e], depth + end[e] - start[e] + 1))
