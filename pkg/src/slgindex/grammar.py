"""Straight-line grammars: data model, validation, file formats, expansion.

Symbols are plain integers. Values below 256 are terminal bytes and values
of 256 or more refer to rule ``value - 256``. A grammar produces exactly
one string, which always ends in a single ``$`` (0x24) terminator.

Two on-disk formats are supported. The binary ``SLG1`` format is::

    b"SLG1" | u32 rule_count | u32 start_id | (u32 len, u32 * len) * rule_count

with all integers little-endian. The text format is a debugging aid::

    SLG 1
    <rule_count> <start_id>
    b65 r1 r2 ...        (one line per rule)
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass
from typing import BinaryIO, Iterator, Sequence, Union

from .errors import FormatError, TerminatorError, ValidationError

TERMINATOR = 0x24
RULE_BASE = 256

BINARY_MAGIC = b"SLG1"
TEXT_HEADER = "SLG 1"

_U32 = struct.Struct("<I")
_U32_MAX = 0xFFFFFFFF

Source = Union[bytes, bytearray, memoryview, BinaryIO]


def is_terminal(symbol: int) -> bool:
    return symbol < RULE_BASE


def rule_symbol(rule_id: int) -> int:
    """Encode a rule id as a symbol."""
    return rule_id + RULE_BASE


def rule_id(symbol: int) -> int:
    return symbol - RULE_BASE


@dataclass(frozen=True)
class GrammarStats:
    rules: int
    size: int
    depth: int
    start_length: int
    n: int

    def as_dict(self) -> dict:
        return {
            "rules": self.rules,
            "size": self.size,
            "depth": self.depth,
            "start_length": self.start_length,
            "n": self.n,
        }


class Grammar:
    """An immutable, validated straight-line grammar.

    ``rules[v]`` is the production of rule ``v`` as a tuple of symbols and
    ``start`` is the id of the start rule. Construction validates the rule
    table and memoizes per-rule expansion lengths and depths.
    """

    __slots__ = ("rules", "start", "lengths", "depths", "n", "size", "height")

    def __init__(self, rules: Sequence[Sequence[int]], start: int) -> None:
        self.rules: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rules)
        self.start = start
        order = _validate_structure(self.rules, start)

        lengths = [0] * len(self.rules)
        depths = [0] * len(self.rules)
        dollars = [0] * len(self.rules)
        last = [0] * len(self.rules)
        for v in order:
            total = depth = count = 0
            for s in self.rules[v]:
                if s < RULE_BASE:
                    total += 1
                    count += s == TERMINATOR
                else:
                    c = s - RULE_BASE
                    total += lengths[c]
                    count += dollars[c]
                    if depths[c] > depth:
                        depth = depths[c]
            lengths[v] = total
            depths[v] = depth + 1
            dollars[v] = count
            tail = self.rules[v][-1]
            last[v] = tail if tail < RULE_BASE else last[tail - RULE_BASE]

        if last[start] != TERMINATOR:
            raise TerminatorError("expanded text does not end with the '$' terminator")
        if dollars[start] != 1:
            raise TerminatorError(
                f"terminator '$' occurs {dollars[start]} times; it must occur once, at the end"
            )

        self.lengths = lengths
        self.depths = depths
        self.n = lengths[start]
        self.size = sum(len(r) for r in self.rules)
        self.height = depths[start]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grammar):
            return NotImplemented
        return self.start == other.start and self.rules == other.rules

    def __hash__(self) -> int:
        return hash((self.start, self.rules))

    def __repr__(self) -> str:
        return f"Grammar(rules={len(self.rules)}, start={self.start}, n={self.n})"

    @property
    def start_rule(self) -> tuple[int, ...]:
        return self.rules[self.start]

    def symbol_length(self, symbol: int) -> int:
        if symbol < RULE_BASE:
            return 1
        return self.lengths[symbol - RULE_BASE]


def _validate_structure(rules: tuple[tuple[int, ...], ...], start: int) -> list[int]:
    """Check references, emptiness, acyclicity and reachability.

    Returns the rules reachable from ``start`` in post-order (children first).
    """
    if not rules:
        raise ValidationError("grammar has no rules")
    if not 0 <= start < len(rules):
        raise ValidationError(f"start rule {start} out of range")
    count = len(rules)
    for v, production in enumerate(rules):
        if not production:
            raise ValidationError(f"rule {v} has an empty production")
        for s in production:
            if s < 0 or s - RULE_BASE >= count:
                raise ValidationError(f"rule {v} references undefined symbol {s}")

    # iterative DFS, 0 = unseen, 1 = on stack, 2 = done
    state = [0] * count
    order: list[int] = []
    stack = [(start, 0)]
    state[start] = 1
    while stack:
        v, i = stack[-1]
        production = rules[v]
        while i < len(production) and production[i] < RULE_BASE:
            i += 1
        if i == len(production):
            stack.pop()
            state[v] = 2
            order.append(v)
            continue
        stack[-1] = (v, i + 1)
        c = production[i] - RULE_BASE
        if state[c] == 1:
            raise ValidationError(f"cycle through rule {c}")
        if state[c] == 0:
            state[c] = 1
            stack.append((c, 0))

    unreachable = [v for v in range(count) if state[v] == 0]
    if unreachable:
        raise ValidationError(
            f"{len(unreachable)} rule(s) unreachable from the start rule, first is {unreachable[0]}"
        )
    return order


def expansion_length(g: Grammar, symbol: int) -> int:
    """Length of the string produced by ``symbol``; O(1) from the memo."""
    return g.symbol_length(symbol)


def expand(g: Grammar, symbol: int | None = None) -> Iterator[int]:
    """Yield the bytes produced by ``symbol`` (the start rule by default).

    Streams left to right with an explicit stack of (production, index)
    pairs, so memory is bounded by the grammar height.
    """
    rules = g.rules
    if symbol is None:
        symbol = rule_symbol(g.start)
    if symbol < RULE_BASE:
        yield symbol
        return
    stack = [(rules[symbol - RULE_BASE], 0)]
    while stack:
        production, i = stack[-1]
        if i == len(production):
            stack.pop()
            continue
        stack[-1] = (production, i + 1)
        s = production[i]
        if s < RULE_BASE:
            yield s
        else:
            stack.append((rules[s - RULE_BASE], 0))


def expand_bytes(g: Grammar, symbol: int | None = None) -> bytes:
    return bytes(expand(g, symbol))


def grammar_stats(g: Grammar) -> GrammarStats:
    return GrammarStats(
        rules=len(g.rules),
        size=g.size,
        depth=g.height,
        start_length=len(g.start_rule),
        n=g.n,
    )


# ---------------------------------------------------------------- file formats


def _read_all(source: Source) -> bytes:
    if isinstance(source, (bytes, bytearray, memoryview)):
        return bytes(source)
    return source.read()


def load_grammar(source: Source, format: str = "binary") -> Grammar:
    """Parse and validate a grammar from bytes or a binary stream."""
    data = _read_all(source)
    if format == "binary":
        rules, start = _parse_binary(data)
    elif format == "text":
        rules, start = _parse_text(data)
    else:
        raise ValueError(f"unknown grammar format {format!r}")
    return Grammar(rules, start)


def _parse_binary(data: bytes) -> tuple[list[tuple[int, ...]], int]:
    if data[:4] != BINARY_MAGIC:
        raise FormatError("bad magic, expected SLG1")
    if len(data) < 12:
        raise FormatError("truncated SLG1 header")
    rule_count, start = struct.unpack_from("<II", data, 4)
    offset = 12
    rules = []
    for v in range(rule_count):
        if offset + 4 > len(data):
            raise FormatError(f"truncated SLG1 stream at rule {v}")
        (length,) = _U32.unpack_from(data, offset)
        offset += 4
        end = offset + 4 * length
        if end > len(data):
            raise FormatError(f"truncated production for rule {v}")
        rules.append(struct.unpack_from(f"<{length}I", data, offset))
        offset = end
    if offset != len(data):
        raise FormatError(f"{len(data) - offset} trailing bytes after last rule")
    return rules, start


def _parse_token(token: str, line_no: int) -> int:
    kind, digits = token[:1], token[1:]
    if kind not in ("b", "r") or not digits.isdigit():
        raise FormatError(f"line {line_no}: bad symbol token {token!r}")
    value = int(digits)
    if kind == "b":
        if value >= RULE_BASE:
            raise FormatError(f"line {line_no}: terminal {value} is not a byte")
        return value
    return value + RULE_BASE


def _parse_text(data: bytes) -> tuple[list[tuple[int, ...]], int]:
    try:
        lines = data.decode("ascii").split("\n")
    except UnicodeDecodeError as exc:
        raise FormatError("text grammar must be ASCII") from exc
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].strip() != TEXT_HEADER:
        raise FormatError(f"bad header, expected {TEXT_HEADER!r}")
    if len(lines) < 2:
        raise FormatError("missing rule count line")
    try:
        rule_count, start = (int(x) for x in lines[1].split())
    except ValueError as exc:
        raise FormatError("line 2 must be '<rule_count> <start_id>'") from exc
    body = lines[2:]
    if len(body) != rule_count:
        raise FormatError(f"header declares {rule_count} rules, found {len(body)} lines")
    rules = [
        tuple(_parse_token(tok, i + 3) for tok in line.split())
        for i, line in enumerate(body)
    ]
    return rules, start


def save_grammar(g: Grammar, format: str = "binary") -> bytes:
    """Serialize ``g``; ``load_grammar`` on the result gives back ``g``."""
    if not g.rules:
        raise FormatError("refusing to serialize a grammar with no rules")
    if format == "binary":
        out = io.BytesIO()
        out.write(BINARY_MAGIC)
        out.write(struct.pack("<II", len(g.rules), g.start))
        for production in g.rules:
            if any(s > _U32_MAX for s in production):
                raise FormatError("symbol does not fit in u32")
            out.write(struct.pack(f"<I{len(production)}I", len(production), *production))
        return out.getvalue()
    if format == "text":
        lines = [TEXT_HEADER, f"{len(g.rules)} {g.start}"]
        for production in g.rules:
            lines.append(
                " ".join(f"b{s}" if s < RULE_BASE else f"r{s - RULE_BASE}" for s in production)
            )
        return ("\n".join(lines) + "\n").encode("ascii")
    raise ValueError(f"unknown grammar format {format!r}")


def terminate(text: bytes) -> bytes:
    """Apply the terminator policy to raw input text.

    A single trailing ``$`` is accepted as the terminator; otherwise one is
    appended. A ``$`` anywhere else is rejected, since the index needs the
    terminator to be unique.
    """
    if not text:
        raise TerminatorError("input text is empty")
    body = text[:-1] if text[-1] == TERMINATOR else text
    if TERMINATOR in body:
        raise TerminatorError(
            "input contains the reserved terminator byte '$' (0x24) before its end; "
            "interior '$' bytes are rejected rather than escaped"
        )
    return body + b"$"


def grammar_from_text(text: bytes) -> Grammar:
    """A flat grammar whose start rule is the terminated text itself."""
    return Grammar([tuple(terminate(text))], 0)
