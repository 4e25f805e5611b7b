"""Pattern-matching benchmark: random substrings, timed locate, access counts.

Start positions are drawn from ``random.Random(seed)`` (Mersenne Twister)
with ``randrange(n - L + 1)``, one generator shared across all lengths in
the order given. Each pattern is extracted through grammar random access
and then located; only the search (match + traversal) is timed, and the
final sort of positions is timed separately.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field

from .access import RandomAccess
from .cdawg import Cdawg
from .errors import LengthError
from .grammar import grammar_stats
from .matcher import find_point, locate_from

DEFAULT_LENGTHS = (10, 100, 1000, 10000)
DEFAULT_REPS = 1000

# fields that depend on the wall clock and are excluded from determinism checks
TIMING_FIELDS = ("mean_us", "mean_sort_us")


@dataclass
class LengthResult:
    length: int
    reps: int
    mean_us: float
    mean_sort_us: float
    mean_ra_calls: float
    mean_chars_decoded: float
    mean_occ: float


@dataclass
class BenchReport:
    n: int
    rules: int
    depth: int
    size: int
    er: int
    seed: int
    results: list[LengthResult] = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)

    def deterministic_fields(self) -> dict:
        d = self.as_dict()
        for row in d["results"]:
            for name in TIMING_FIELDS:
                row.pop(name)
        return d

    def format_table(self) -> str:
        lines = [
            f"n={self.n} rules={self.rules} depth={self.depth} size={self.size} "
            f"er={self.er} seed={self.seed}",
            f"{'length':>8} {'reps':>6} {'mean_us':>12} {'sort_us':>10} "
            f"{'ra_calls':>10} {'chars':>12} {'occ':>10}",
        ]
        for r in self.results:
            lines.append(
                f"{r.length:>8} {r.reps:>6} {r.mean_us:>12.2f} {r.mean_sort_us:>10.2f} "
                f"{r.mean_ra_calls:>10.2f} {r.mean_chars_decoded:>12.2f} {r.mean_occ:>10.2f}"
            )
        return "\n".join(lines)


def run_bench(
    cdawg: Cdawg,
    ra: RandomAccess,
    lengths=DEFAULT_LENGTHS,
    reps: int = DEFAULT_REPS,
    seed: int = 0,
) -> BenchReport:
    if reps <= 0:
        raise ValueError("reps must be positive")
    n = cdawg.n
    for length in lengths:
        if not 1 <= length <= n:
            raise LengthError(f"pattern length {length} not in [1, {n}]")

    stats = grammar_stats(ra.grammar)
    report = BenchReport(
        n=n, rules=stats.rules, depth=stats.depth, size=stats.size,
        er=cdawg.num_edges, seed=seed,
    )
    rng = random.Random(seed)
    counters = ra.counters
    clock = time.perf_counter_ns
    for length in lengths:
        search_ns = sort_ns = calls = chars = occ = 0
        for _ in range(reps):
            p = rng.randrange(n - length + 1)
            pattern = ra.range(p, p + length - 1)
            counters.reset()
            t0 = clock()
            point = find_point(cdawg, ra, pattern)
            hits = locate_from(cdawg, point) if point is not None else []
            t1 = clock()
            hits.sort()
            t2 = clock()
            search_ns += t1 - t0
            sort_ns += t2 - t1
            calls += counters.ra_calls
            chars += counters.chars_decoded
            occ += len(hits)
        report.results.append(
            LengthResult(
                length=length,
                reps=reps,
                mean_us=search_ns / reps / 1000,
                mean_sort_us=sort_ns / reps / 1000,
                mean_ra_calls=calls / reps,
                mean_chars_decoded=chars / reps,
                mean_occ=occ / reps,
            )
        )
    counters.reset()
    return report
