"""Deterministic desk-scale test corpora.

Every generator is seeded and uses :class:`random.Random` (Mersenne
Twister), so the same arguments always give the same bytes. No corpus
contains the ``$`` terminator; callers terminate text themselves.
"""

from __future__ import annotations

import random

from .grammar import Grammar, rule_symbol

EXAMPLE_TEXT = b"AGAGCGAGAGCGCGC$"


def example_grammar() -> Grammar:
    """The 16-byte AGAGCG... grammar used throughout the tests.

    Rules, in id order: S -> A x y x z z $, x -> y z, y -> G A, z -> G C.
    """
    x, y, z = rule_symbol(1), rule_symbol(2), rule_symbol(3)
    return Grammar(
        [
            (ord("A"), x, y, x, z, z, ord("$")),
            (y, z),
            (ord("G"), ord("A")),
            (ord("G"), ord("C")),
        ],
        0,
    )


def fibonacci_word(k: int) -> bytes:
    """f_1 = "b", f_2 = "a", f_k = f_{k-1} f_{k-2}; so |f_k| is the k-th Fibonacci number."""
    if k < 1:
        raise ValueError("k must be >= 1")
    prev, cur = b"b", b"a"
    if k == 1:
        return prev
    for _ in range(k - 2):
        prev, cur = cur, cur + prev
    return cur


def thue_morse(k: int) -> bytes:
    """Thue-Morse word of length 2**k over {a, b}."""
    return bytes(ord("b") if bin(i).count("1") & 1 else ord("a") for i in range(1 << k))


def dna_collection(
    size: int = 1 << 20,
    genome: int = 1 << 16,
    mutation_rate: float = 0.005,
    n_fraction: float = 0.0,
    min_run: int = 1000,
    seed: int = 0,
) -> bytes:
    """A collection of mutated copies of one random genome.

    With ``n_fraction > 0``, that share of the text is overwritten by runs
    of ``N`` at least ``min_run`` long, like unresolved assembly gaps.
    """
    rng = random.Random(seed)
    base = bytes(rng.choice(b"ACGT") for _ in range(genome))
    out = bytearray()
    while len(out) < size:
        copy = bytearray(base)
        for _ in range(int(genome * mutation_rate)):
            copy[rng.randrange(genome)] = rng.choice(b"ACGT")
        out += copy
    del out[size:]
    target = int(size * n_fraction)
    covered = 0
    while covered < target:
        length = max(min_run, min(target - covered, rng.randint(min_run, min_run + min_run // 4)))
        p = rng.randrange(size - length)
        out[p:p + length] = b"N" * length
        covered += length
    return bytes(out)


_WORDS = (
    "the of and to in is was that for it with as his on be at by had are but from or "
    "have an they which one you were her all she there would their we him been has when "
    "who will more no if out so said what up its about into than them can only other new "
    "some could time these two may then do first any my now such like our over man me even "
    "most made after also did many before must through back years where much your way well "
    "down should because each just those people how too little state good very make world "
    "still own see men work long get here between both life being under never day same "
    "another know while last might us great old year off come since against go came right "
    "used take three theory relativity light energy mass space motion field physics letter"
).split()


def english_like(size: int = 1 << 17, seed: int = 0) -> bytes:
    """Sentences of Zipf-distributed words from a fixed vocabulary."""
    rng = random.Random(seed)
    weights = [1.0 / (rank + 1) for rank in range(len(_WORDS))]
    out = []
    total = 0
    while total < size:
        words = rng.choices(_WORDS, weights, k=rng.randint(5, 18))
        sentence = " ".join(words)
        sentence = sentence[0].upper() + sentence[1:] + rng.choice([". ", ". ", ", ", "; ", "? "])
        if rng.random() < 0.08:
            sentence += "\n"
        out.append(sentence)
        total += len(sentence)
    return "".join(out).encode("ascii")[:size]


_COUNTRIES = ["Argentina", "Brazil", "Canada", "Denmark", "Egypt", "France", "Ghana", "India", "Japan", "Kenya"]
_ROLES = ["President", "Prime Minister", "Foreign Minister", "Minister of Finance", "Head of Mission"]
_NAMES = ["Ana", "Boris", "Chen", "Dara", "Emil", "Farah", "Goran", "Hana", "Ivo", "Juno", "Kofi", "Lena"]


def records(size: int = 1 << 17, seed: int = 0) -> bytes:
    """Semi-structured CSV rows, repetitive like a directory of officials."""
    rng = random.Random(seed)
    out = []
    total = 0
    row = 0
    while total < size:
        line = "{},{} {},{},{},{}\n".format(
            row,
            rng.choice(_NAMES),
            rng.choice(_NAMES) + "son",
            rng.choice(_COUNTRIES),
            rng.choice(_ROLES),
            1990 + rng.randrange(35),
        )
        out.append(line)
        total += len(line)
        row += 1
    return "".join(out).encode("ascii")[:size]


def desk_corpora() -> dict[str, bytes]:
    """The five bundled corpora, each at least 64 KiB."""
    return {
        "dna": dna_collection(size=1 << 17, genome=1 << 14, seed=1),
        "english": english_like(size=1 << 17, seed=2),
        "records": records(size=1 << 17, seed=3),
        "fibonacci": fibonacci_word(25),
        "thue-morse": thue_morse(17),
    }
