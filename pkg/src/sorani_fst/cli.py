"""Command-line front end.

Exit codes: 0 processed (OOV lines included), 1 selftest failure,
2 usage error, 3 grammar or lexicon load error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

from . import fst
from .compiler import GrammarError, parse, tokenize, RuleSource
from .grammar import (Analyzer, NounFeatures, VerbFeatures, analyses_agree, default_grammar_text,
                      default_lexicon, form_adverb, grade_adjective, inflect_adjective_phrase,
                      inflect_noun, conjugate_verb, noun_analysis, noun_paradigm_rows, izafa_rows,
                      lexicon_environment, build_grammar_fst)
from .lexicon import Lexicon, LexiconError, load_lexicon

log = logging.getLogger("sorani_fst")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LOAD = 0, 1, 2, 3
FORMATS = ("plain", "tsv", "json-lines")
SESSION_WORD = "xwardim"
SESSION_ANALYSIS = "xward<verb-transitive-past-stem><past-1s>"


class LoadError(Exception):
    pass


@dataclass
class CliConfig:
    grammar_path: Path | None = None
    lexicon_path: Path | None = None
    mode: str = "analyze"
    output_format: str = "plain"


@dataclass
class Resources:
    grammar_text: str
    grammar_name: str
    lexicon: Lexicon
    _analyzer: Analyzer | None = None

    @property
    def analyzer(self) -> Analyzer:
        if self._analyzer is None:
            try:
                self._analyzer = Analyzer(build_grammar_fst(self.lexicon, self.grammar_text,
                                                            self.grammar_name))
            except GrammarError as exc:
                raise LoadError(str(exc)) from None
        return self._analyzer


def load_resources(config: CliConfig) -> Resources:
    """Read and validate grammar and lexicon before any processing."""
    try:
        if config.lexicon_path is None:
            lex = default_lexicon()
        else:
            lex = load_lexicon(config.lexicon_path)
        if config.grammar_path is None:
            text, name = default_grammar_text(), "sorani.kfst"
        else:
            text = Path(config.grammar_path).read_text(encoding="utf-8")
            name = str(config.grammar_path)
        parse(tokenize(RuleSource(text, name)), predefined=lexicon_environment(lex).variables, name=name)
    except (OSError, UnicodeDecodeError, LexiconError, GrammarError) as exc:
        raise LoadError(str(exc)) from None
    return Resources(text, name, lex)


# ---------------------------------------------------------------- lookup modes

def _lookup(res: Resources, mode: str, item: str) -> list[str]:
    if mode == "analyze":
        if any(c.isspace() for c in item):
            log.warning("%r contains spaces; the analyzer works on single words", item)
            return []
        return res.analyzer.analyze(item)
    return res.analyzer.generate(item)


def no_result(item: str) -> str:
    return f'no result for "{item}"'


def run_batch(res: Resources, mode: str, lines: Iterable[str], out: TextIO,
              output_format: str = "plain") -> int:
    for raw in lines:
        item = raw.strip()
        if not item:
            continue
        results = _lookup(res, mode, item)
        if output_format == "tsv":
            for r in results or [""]:
                out.write(f"{item}\t{r}\n")
        elif output_format == "json-lines":
            out.write(json.dumps({"input": item, "results": results}, ensure_ascii=False) + "\n")
        else:
            out.write(item + "\n")
            for r in results or [no_result(item)]:
                out.write(f"  {r}\n")
    return EXIT_OK


def run_repl(res: Resources, inp: TextIO, out: TextIO, mode: str = "analyze") -> int:
    while True:
        out.write(f"{mode}> ")
        out.flush()
        line = inp.readline()
        if not line:
            out.write("\n")
            return EXIT_OK
        item = line.strip()
        if not item:
            continue
        if item == ":quit":
            return EXIT_OK
        if item.startswith(":mode"):
            arg = item[5:].strip()
            if arg in ("analyze", "generate"):
                mode = arg
            elif not arg:
                mode = "generate" if mode == "analyze" else "analyze"
            else:
                out.write(f"unknown mode {arg!r}\n")
            continue
        results = _lookup(res, mode, item)
        for r in results or [no_result(item)]:
            out.write(r + "\n")


# ---------------------------------------------------------------- inflect

def _object(text: str | None) -> tuple[int, str] | None:
    if text is None:
        return None
    if len(text) != 3 or text[0] not in "123" or text[1:] not in ("sg", "pl"):
        raise ValueError(f"object must look like 2sg or 3pl, got {text!r}")
    return int(text[0]), text[1:]


def run_inflect(res: Resources, args) -> str:
    words = args.words
    if args.pos == "noun":
        _expect(words, 1, "noun LEMMA")
        return inflect_noun(words[0], NounFeatures(args.form, args.number))
    if args.pos == "adj":
        _expect(words, 2, "adj NOUN ADJECTIVE")
        return inflect_adjective_phrase(words[0], words[1], args.izafa,
                                        NounFeatures(args.form, args.number))
    if args.pos == "grade":
        _expect(words, 1, "grade ADJECTIVE")
        return grade_adjective(words[0], args.degree)
    if args.pos == "adverb":
        _expect(words, 1, "adverb BASE")
        return form_adverb(words[0], args.strategy)
    _expect(words, 1, "verb INFINITIVE")
    entry = res.lexicon.get(words[0], "verb")
    if entry is None:
        raise ValueError(f"verb {words[0]!r} is not in the lexicon")
    f = VerbFeatures(args.tense, args.person, args.number, negated=args.negated,
                     progressive=args.progressive, subjunctive=args.subjunctive,
                     object_clitic=_object(args.object))
    return conjugate_verb(entry, f)


def _expect(words, n, usage):
    if len(words) != n:
        raise ValueError(f"expected: inflect {usage}")


# ---------------------------------------------------------------- selftest

def selftest_checks(res: Resources) -> list[tuple[str, bool, str]]:
    an = res.analyzer
    checks = []
    for row in noun_paradigm_rows():
        f = NounFeatures(row["form"], row["number"])
        got = inflect_noun(row["lemma"], f)
        name = f"nouns {row['lemma']} {row['form']} {row['number']}"
        checks.append((name, got == row["surface"], f"got {got!r}"))
        if " " not in row["surface"] and f.form != "absolute":
            analysis = noun_analysis(row["lemma"], f)
            gen = an.generate(analysis)
            ok = gen == [row["surface"]] and analysis in an.analyze(row["surface"])
            checks.append((name + " fst", ok, f"generate {gen}, analyze {an.analyze(row['surface'])}"))
    for row in izafa_rows():
        got = inflect_adjective_phrase(row["noun"], row["adjective"], row["izafa"],
                                       NounFeatures(row["form"], row["number"]))
        checks.append((f"izafa {row['izafa']} {row['form']} {row['number']}",
                       got == row["surface"], f"got {got!r}"))
    analyses = an.analyze(SESSION_WORD)
    checks.append(("session analyze", analyses == [SESSION_ANALYSIS], f"got {analyses}"))
    surfaces = an.generate(SESSION_ANALYSIS)
    checks.append(("session generate", surfaces == [SESSION_WORD], f"got {surfaces}"))
    report = analyses_agree(res.lexicon, an)
    detail = "; ".join(f"{d.case.label}: {d.detail}" for d in report.disagreements[:5])
    checks.append((f"oracle agreement ({report.checks} checks)", report.ok, detail))
    return checks


def run_selftest(res: Resources, out: TextIO) -> int:
    checks = selftest_checks(res)
    failed = 0
    for name, ok, detail in checks:
        if ok:
            out.write(f"PASS {name}\n")
        else:
            failed += 1
            out.write(f"FAIL {name}: {detail}\n")
    out.write(f"{len(checks) - failed} passed, {failed} failed\n")
    return EXIT_OK if failed == 0 else EXIT_FAIL


# ---------------------------------------------------------------- argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grammar", type=Path, default=argparse.SUPPRESS,
                        help="grammar file (.kfst); defaults to the bundled Sorani grammar")
    common.add_argument("--lexicon", type=Path, default=argparse.SUPPRESS,
                        help="lexicon TSV; defaults to the bundled seed lexicon")
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="sorani-fst", parents=[common],
                                     description="Sorani Kurdish morphological analyzer and generator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, what in (("analyze", "words"), ("generate", "analysis strings")):
        p = sub.add_parser(name, parents=[common], help=f"look up {what} (arguments or stdin)")
        p.add_argument("items", nargs="*")
    p = sub.add_parser("repl", parents=[common], help="interactive analyze/generate session")
    p.add_argument("--mode", choices=("analyze", "generate"), default="analyze")
    sub.add_parser("selftest", parents=[common], help="run golden tables and oracle agreement")
    p = sub.add_parser("compile", parents=[common], help="write the compiled transducer as text")
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("inflect", parents=[common], help="string-level inflection oracle")
    p.add_argument("pos", choices=("noun", "adj", "grade", "adverb", "verb"))
    p.add_argument("words", nargs="+")
    p.add_argument("--form", default="absolute",
                   choices=("absolute", "indefinite", "definite", "demonstrative"))
    p.add_argument("--number", default="sg", choices=("sg", "pl"))
    p.add_argument("--izafa", default="loose", choices=("loose", "close"))
    p.add_argument("--degree", default="comparative", choices=("comparative", "superlative"))
    p.add_argument("--strategy", default="suffix_ane", choices=("suffix_ane", "prefix_be"))
    p.add_argument("--tense", default="past", choices=("past", "present", "imperative"))
    p.add_argument("--person", type=int, default=1, choices=(1, 2, 3))
    p.add_argument("--negated", action="store_true")
    p.add_argument("--progressive", action="store_true")
    p.add_argument("--subjunctive", action="store_true")
    p.add_argument("--object", help="object clitic, e.g. 2sg")
    return parser


def main(argv: list[str] | None = None, stdin: TextIO | None = None,
         stdout: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    config = CliConfig(getattr(args, "grammar", None), getattr(args, "lexicon", None),
                       args.command, getattr(args, "format", "plain"))
    try:
        res = load_resources(config)
        if config.mode in ("analyze", "generate"):
            lines = args.items if args.items else stdin
            return run_batch(res, config.mode, lines, stdout, config.output_format)
        if config.mode == "repl":
            return run_repl(res, stdin, stdout, args.mode)
        if config.mode == "selftest":
            return run_selftest(res, stdout)
        if config.mode == "compile":
            text = fst.to_text(res.analyzer.generator)
            if args.output:
                args.output.write_text(text, encoding="utf-8")
            else:
                stdout.write(text)
            return EXIT_OK
        try:
            stdout.write(run_inflect(res, args) + "\n")
        except (ValueError, KeyError) as exc:
            print(f"usage error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        return EXIT_OK
    except LoadError as exc:
        print(f"load error: {exc}", file=sys.stderr)
        return EXIT_LOAD
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_LOAD


if __name__ == "__main__":
    sys.exit(main())
