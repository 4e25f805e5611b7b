from __future__ import annotations

import random

import pytest

from slgindex.corpora import EXAMPLE_TEXT, example_grammar
from slgindex.grammar import RULE_BASE, TERMINATOR, Grammar

_CRITERIA: dict[int, tuple[str, str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        details = "; ".join(v for k, v in item.user_properties if k == "measured")
        _CRITERIA[number] = (title, "PASS" if report.passed else "FAIL", details)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict, details = _CRITERIA[number]
        line = f"criterion {number}: {verdict}  {title}"
        if details:
            line += f"  [{details}]"
        terminalreporter.write_line(line)


def brute_expand(rules, symbol: int) -> bytes:
    """Recursive expansion, independent of the package's streaming expander."""
    if symbol < RULE_BASE:
        return bytes([symbol])
    return b"".join(brute_expand(rules, s) for s in rules[symbol - RULE_BASE])


def random_grammar(rng: random.Random, n_rules: int, alphabet: bytes = b"abcd", max_len: int = 4) -> Grammar:
    """A valid grammar where rule i only references rules < i.

    Every rule not used by another is placed in the start rule, which is
    last and ends with the terminator.
    """
    rules: list[tuple[int, ...]] = []
    used = set()
    for i in range(n_rules - 1):
        prod = []
        for _ in range(rng.randint(1, max_len)):
            if i and rng.random() < 0.6:
                r = rng.randrange(i)
                used.add(r)
                prod.append(RULE_BASE + r)
            else:
                prod.append(rng.choice(alphabet))
        rules.append(tuple(prod))
    start = [RULE_BASE + r for r in range(n_rules - 1) if r not in used]
    start.append(TERMINATOR)
    rules.append(tuple(start))
    return Grammar(rules, n_rules - 1)


@pytest.fixture
def example():
    return example_grammar()


@pytest.fixture
def example_text():
    return EXAMPLE_TEXT


# CDAWG of "AGAGCGAGAGCGCGC$" transcribed by hand: node -> [(start, end, target)],
# intervals inclusive and 0-based. "a" is the source and "i" the sink.
HAND_BUILT_EDGES = {
    "a": [(0, 1, "f"), (5, 5, "b"), (12, 12, "d"), (15, 15, "i")],
    "b": [(0, 1, "c"), (12, 12, "d")],
    "f": [(2, 5, "h"), (4, 5, "h")],
    "c": [(4, 5, "h"), (8, 15, "i")],
    "h": [(6, 15, "i"), (12, 15, "i")],
    "d": [(5, 5, "e"), (15, 15, "i")],
    "e": [(12, 12, "g"), (6, 15, "i")],
    "g": [(13, 15, "i"), (15, 15, "i")],
}


def hand_built_cdawg():
    from slgindex.cdawg import Cdawg, compute_counts

    names = ["a", "i"] + [v for v in HAND_BUILT_EDGES if v != "a"]
    ids = {v: k for k, v in enumerate(names)}
    node_edges, target, start, end, first = [], [], [], [], []
    for v in names:
        row = []
        for s, e, w in HAND_BUILT_EDGES.get(v, []):
            row.append(len(target))
            target.append(ids[w])
            start.append(s)
            end.append(e)
            first.append(EXAMPLE_TEXT[s])
        node_edges.append(row)
    c = Cdawg(len(EXAMPLE_TEXT), [0] * len(names), node_edges, target, start, end, first, 0, 1)
    return compute_counts(c)
