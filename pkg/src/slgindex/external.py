"""Import grammars written by Navarro's reference Re-Pair tool.

The tool writes two files. ``.R`` holds ``int alpha``, then ``alpha``
bytes mapping terminal ids to characters, then one ``(int left, int
right)`` pair per rule. ``.C`` holds the final sequence as ``int``\\s.
Symbols below ``alpha`` are terminals; symbol ``alpha + r`` is rule ``r``.
Integers are 32-bit little-endian, as written by the tool on x86.
"""

from __future__ import annotations

import struct

from .errors import FormatError
from .grammar import RULE_BASE, TERMINATOR, Grammar


def import_repair(r_data: bytes, c_data: bytes) -> Grammar:
    if len(r_data) < 4:
        raise FormatError(".R file too short")
    (alpha,) = struct.unpack_from("<i", r_data, 0)
    if not 0 < alpha <= 256 or len(r_data) < 4 + alpha:
        raise FormatError(f".R file declares an invalid alphabet size {alpha}")
    charmap = r_data[4:4 + alpha]
    body = len(r_data) - 4 - alpha
    if body % 8:
        raise FormatError(".R rule section is not a whole number of pairs")
    if len(c_data) % 4:
        raise FormatError(".C file is not a whole number of ints")
    pairs = struct.unpack_from(f"<{body // 4}i", r_data, 4 + alpha)
    sequence = struct.unpack(f"<{len(c_data) // 4}i", c_data)
    n_pairs = len(pairs) // 2

    def convert(sym: int) -> int:
        if 0 <= sym < alpha:
            return charmap[sym]
        if alpha <= sym < alpha + n_pairs:
            return RULE_BASE + sym - alpha
        raise FormatError(f"symbol {sym} is neither a terminal nor a defined rule")

    rules = [(convert(pairs[2 * r]), convert(pairs[2 * r + 1])) for r in range(n_pairs)]
    start = [convert(s) for s in sequence]
    if not start:
        raise FormatError(".C file is empty")

    # text produced without the terminator gets one appended; a '$' already
    # present must be the unique final byte, which Grammar validates
    if TERMINATOR not in charmap:
        start.append(TERMINATOR)
    return Grammar([*rules, tuple(start)], n_pairs)


def export_repair(g: Grammar) -> tuple[bytes, bytes]:
    """Write ``g`` in the tool's layout; used to test the importer.

    Only grammars whose non-start rules are pairs can be expressed.
    """
    terminals = sorted({s for rule in g.rules for s in rule if s < RULE_BASE})
    alpha = len(terminals)
    code = {t: i for i, t in enumerate(terminals)}
    order = [v for v in range(len(g.rules)) if v != g.start]
    rank = {v: alpha + i for i, v in enumerate(order)}

    def enc(s: int) -> int:
        return code[s] if s < RULE_BASE else rank[s - RULE_BASE]

    pairs = []
    for v in order:
        if len(g.rules[v]) != 2:
            raise FormatError(f"rule {v} is not a pair")
        pairs.extend(enc(s) for s in g.rules[v])
    r_data = struct.pack("<i", alpha) + bytes(terminals) + struct.pack(f"<{len(pairs)}i", *pairs)
    seq = [enc(s) for s in g.start_rule]
    return r_data, struct.pack(f"<{len(seq)}i", *seq)
