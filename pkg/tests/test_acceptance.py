"""Acceptance criteria, one test each.

Each test records a PASS/FAIL line with its measured runtime; the lines are
printed in the terminal summary (see conftest.py).  Run this file directly
with ``python tests/test_acceptance.py`` for the lines alone.
"""

import itertools
import time

import pytest

from sorani_fst import fst
from sorani_fst.compiler import RewriteRule, compile_rewrite
from sorani_fst.fst import EPSILON, Char
from sorani_fst.grammar import (Analyzer, NounFeatures, VerbFeatures, analyses_agree,
                                conjugate_verb, default_lexicon, inflect_adjective_phrase,
                                inflect_noun, noun_analysis, noun_paradigm_rows, izafa_rows)
from sorani_fst.lexicon import VOWELS
from sorani_fst.testing import check_algebra_case

RESULTS: list[str] = []

NOUN_FORMS = ["nawêk", "nawan", "naweke", "nawekan", "em nawe", "em nawane",
                "dergayek", "dergayan", "dergake", "dergakan", "em dergaye", "em dergayane"]
SESSION_WORD = "xwardim"
SESSION_ANALYSIS = "xward<verb-transitive-past-stem><past-1s>"
ALGEBRA_CASES = 250


def record(number: int, title: str, ok: bool, elapsed: float, limit: float | None, detail: str = ""):
    in_time = limit is None or elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"criterion {number} {status}: {title} [{elapsed:.2f}s{budget}]"
    if detail:
        line += f" {detail}"
    RESULTS.append(line)
    return ok and in_time, line


def criterion_1():
    t = time.perf_counter()
    rows = [r for r in noun_paradigm_rows() if r["form"] != "absolute"]
    got = [inflect_noun(r["lemma"], NounFeatures(r["form"], r["number"])) for r in rows]
    strings_ok = got == [r["surface"] for r in rows] == NOUN_FORMS
    lex = default_lexicon()
    an = Analyzer.from_lexicon(lex)
    single = [r for r in rows if " " not in r["surface"]]
    trips = 0
    for r in single:
        a = noun_analysis(r["lemma"], NounFeatures(r["form"], r["number"]))
        gen = an.generate(a)
        if gen == [r["surface"]] and all(a in an.analyze(s) for s in gen):
            trips += 1
    ok = strings_ok and len(single) == 8 and trips == 8
    return record(1, "noun paradigm golden forms and FST round trip", ok, time.perf_counter() - t, 1.0,
                  f"{sum(g == e for g, e in zip(got, NOUN_FORMS))}/12 forms, {trips}/8 round trips")


def criterion_2():
    t = time.perf_counter()
    rows = izafa_rows()
    got = [inflect_adjective_phrase(r["noun"], r["adjective"], r["izafa"],
                                    NounFeatures(r["form"], r["number"])) for r in rows]
    matches = sum(g == r["surface"] for g, r in zip(got, rows))
    anomalies = "gułeke ciwan" in got and "gułêki ciwan" in got
    ok = len(rows) == 14 and matches == 14 and anomalies
    return record(2, "izafa phrase golden forms", ok, time.perf_counter() - t, 1.0, f"{matches}/14 forms")


def criterion_3():
    t = time.perf_counter()
    an = Analyzer.from_lexicon(default_lexicon())
    analyses = an.analyze(SESSION_WORD)
    surfaces = an.generate(SESSION_ANALYSIS)
    ok = analyses == [SESSION_ANALYSIS] and surfaces == [SESSION_WORD]
    return record(3, "analyze/generate example session", ok, time.perf_counter() - t, 1.0,
                  f"analyze -> {analyses}, generate -> {surfaces}")


def criterion_4():
    t = time.perf_counter()
    lex = default_lexicon()
    entry = lex.get("dîtin", "verb")
    word = conjugate_verb(entry, VerbFeatures("past", 1, "sg", object_clitic=(2, "sg")))
    analyses = Analyzer.from_lexicon(lex).analyze(word)
    recovered = [a for a in analyses if a.startswith("dît<") and "<past-1s>" in a and "<obj-2s>" in a]
    ok = word == "dîtimî" and bool(recovered)
    return record(4, "object clitic example", ok, time.perf_counter() - t, None,
                  f"{word!r} -> {analyses}")


def criterion_5():
    t = time.perf_counter()
    report = analyses_agree(default_lexicon())
    return record(5, "oracle/FST agreement over the feature grid", report.ok, time.perf_counter() - t,
                  10.0, f"{report.checks} checks, {len(report.disagreements)} disagreements")


def criterion_6():
    t = time.perf_counter()
    failing = {seed: f for seed in range(ALGEBRA_CASES) if (f := check_algebra_case(seed, k=6))}
    detail = f"{ALGEBRA_CASES} cases, {len(failing)} failing"
    if failing:
        detail += f" e.g. seed {next(iter(failing))}: {next(iter(failing.values()))}"
    return record(6, "FST algebra against set oracles", not failing, time.perf_counter() - t,
                  60.0, detail)


def _insert_y(s: str) -> str:
    out = ""
    for i, c in enumerate(s):
        if i and s[i - 1] in VOWELS and c in VOWELS:
            out += "y"
        out += c
    return out


def criterion_7():
    t = time.perf_counter()
    vowels = frozenset(c for c in "anew" if c in VOWELS)
    machine = compile_rewrite(RewriteRule(EPSILON, Char("y"), vowels, vowels), "anew")
    bad, total = [], 0
    for n in range(6):
        for chars in itertools.product("anew", repeat=n):
            s = "".join(chars)
            total += 1
            if fst.lookup_strings(machine, s) != [_insert_y(s)]:
                bad.append(s)
    return record(7, "y-insertion rule is a function with the right sites", not bad,
                  time.perf_counter() - t, 10.0, f"{total} strings, {len(bad)} wrong")


def criterion_8():
    # substitution: the full perfect-tense analysis is replaced by the negated
    # past core, with the remaining affixes recognised as opaque particles
    t = time.perf_counter()
    an = Analyzer.from_lexicon(default_lexicon())
    core = an.analyze("negirtim")
    whole = an.analyze("hełimnegirtbûnewe")
    ok = (core == ["girt<verb-transitive-past-stem><NEG><past-1s>"]
          and any(a.startswith("girt<verb-transitive-past-stem><NEG><past-1s>") and "<PRT-heł>" in a
                  for a in whole))
    return record(8, "substituted targets: negated core plus opaque particles", ok,
                  time.perf_counter() - t, None, f"{whole}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    ok, line = criterion()
    assert ok, line


if __name__ == "__main__":
    for c in CRITERIA:
        print(c()[1])
