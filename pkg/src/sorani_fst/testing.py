"""Random small transducers and set-level reference operations.

The set functions work on enumerated languages only, so they share no code
path with the automaton constructions they are used to check.
"""

from __future__ import annotations

import random
from collections import defaultdict

from .fst import (EPSILON, Char, PairLabel, StringPair, Transducer, compose, concat,
                  enumerate_language, invert, lookup, star, union)


def random_transducer(rng: random.Random, max_states: int = 5, alphabet: str = "abcd",
                      max_arcs: int = 6, eps_prob: float = 0.25,
                      input_eps: bool = True, output_eps: bool = True) -> Transducer:
    n = rng.randint(1, max_states)
    sigma = alphabet[:rng.randint(1, len(alphabet))]

    def sym(allow_eps):
        if allow_eps and rng.random() < eps_prob:
            return EPSILON
        return Char(rng.choice(sigma))

    arcs = []
    for _ in range(rng.randint(0, max_arcs)):
        label = PairLabel(sym(input_eps), sym(output_eps))
        arcs.append((rng.randrange(n), label, rng.randrange(n)))
    finals = frozenset(q for q in range(n) if rng.random() < 0.4)
    return Transducer(n, rng.randrange(n), finals, tuple(arcs))


def _fits(x, y, k):
    return len(x) <= k and len(y) <= k


def set_union(a: set[StringPair], b: set[StringPair]) -> set[StringPair]:
    return a | b


def _by_length(a: set[StringPair]) -> dict[tuple[int, int], list[StringPair]]:
    buckets = defaultdict(list)
    for p in a:
        buckets[len(p.analysis), len(p.surface)].append(p)
    return buckets


def _extensions(x, y, buckets, k):
    """Pairs of ``buckets`` that can follow (x, y) without exceeding ``k``."""
    for (lx, ly), items in buckets.items():
        if len(x) + lx <= k and len(y) + ly <= k:
            yield from items


def set_concat(a: set[StringPair], b: set[StringPair], k: int) -> set[StringPair]:
    buckets = _by_length(b)
    return {StringPair(x1 + x2, y1 + y2) for x1, y1 in a
            for x2, y2 in _extensions(x1, y1, buckets, k)}


def set_star(a: set[StringPair], k: int) -> set[StringPair]:
    buckets = _by_length(a - {StringPair((), ())})
    result = {StringPair((), ())}
    frontier = set(result)
    while frontier:
        new = set()
        for x, y in frontier:
            for x2, y2 in _extensions(x, y, buckets, k):
                p = StringPair(x + x2, y + y2)
                if p not in result:
                    new.add(p)
        result |= new
        frontier = new
    return result


def set_invert(a: set[StringPair]) -> set[StringPair]:
    return {StringPair(y, x) for x, y in a}


def set_compose(a: set[StringPair], b: set[StringPair], k: int) -> set[StringPair]:
    by_input = defaultdict(list)
    for y, z in b:
        by_input[y].append(z)
    return {StringPair(x, z) for x, y in a for z in by_input.get(y, ()) if _fits(x, z, k)}


def check_algebra_case(seed: int, k: int = 6) -> list[str]:
    """Compare each construction with its set oracle on three random machines.

    Returns the names of the properties that failed (empty when all hold).
    The composition's left operand has no input epsilons, so its middle
    strings are no longer than its inputs and the bounded oracle is exact.
    """
    rng = random.Random(seed)
    a, b = random_transducer(rng), random_transducer(rng)
    c = random_transducer(rng, input_eps=False)
    la, lb, lc = (enumerate_language(m, k) for m in (a, b, c))
    failures = []

    def check(name, got, want):
        if got != want:
            failures.append(name)

    check("union", enumerate_language(union(a, b), k), set_union(la, lb))
    check("concat", enumerate_language(concat(a, b), k), set_concat(la, lb, k))
    check("star", enumerate_language(star(a), k), set_star(la, k))
    check("invert", enumerate_language(invert(a), k), set_invert(la))
    check("compose", enumerate_language(compose(c, b), k), set_compose(lc, lb, k))
    check("involution", enumerate_language(invert(invert(a)), k), la)
    for x in {p.analysis for p in la}:
        found = set(lookup(a, x, max_output_len=k))
        if found != {p.surface for p in la if p.analysis == x}:
            failures.append("lookup")
            break
    return failures
