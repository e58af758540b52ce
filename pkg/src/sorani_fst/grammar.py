"""Sorani Kurdish inflection.

Two independent routes to the same word forms: plain string functions
(``inflect_noun``, ``conjugate_verb``, ...) and a transducer compiled from
``data/sorani.kfst`` against a lexicon.  ``analyses_agree`` cross-checks them.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterator

from . import fst
from .compiler import Environment, compile_grammar
from .fst import Transducer
from .lexicon import POS_TAGS, Lexicon, LexiconEntry, VOWELS, ends_in_vowel, entry_to_fst

# Inflectional morphemes and clitics, tag -> surface allomorphs.
TAGSET: dict[str, tuple[str, ...]] = {
    "1s": ("im",), "2s": ("it",), "3s": ("î",),
    "1p": ("man",), "2p": ("tan",), "3p": ("yan",),
    "C1": ("im",), "C2": ("î", "ît"), "C3": ("heye", "hes", "e"),
    "C4": ("în", "heyn"), "C5": ("in", "hen"), "C6": ("in", "hen"),
    "IMP": ("bi", "b"),
    "NMP": ("me",),
    "NEG": ("ne", "na"),
    "SUB": ("bi",),
    "PL": ("an", "gel", "ha", "at"),
    "DEF": ("eke",),
    "IND": ("êk", "yek"),
    "CON": ("de", "e"),
    "RA": ("î", "y", "în", "yin", "çî", "nok", "ko", "û", "île", "yile", "emenî"),
    "COMP": ("tir",),
    "SUP": ("tirîn",),
    "AD": ("ane", "be", "an"),
    "DIM": ("çe", "ke", "ik", "ko", "oke", "oł", "ołe", "ołik", "ołke", "ełe", "elûke",
            "yekołe", "îlane", "île", "ûlke", "ûle", "le", "łe"),
}

PERSONS = (1, 2, 3)
NUMBERS = ("sg", "pl")
FORMS = ("absolute", "indefinite", "definite", "demonstrative")
IZAFA_KINDS = ("loose", "close")
TENSES = ("past", "present", "imperative")
DETERMINER = "em"


def _pn(person: int, number: str) -> str:
    return f"{person}{number[0]}"


# agent clitics (transitive past) and copula endings, keyed by "1s" ... "3p"
POSSESSIVE = {k: TAGSET[k][0] for k in ("1s", "2s", "3s", "1p", "2p", "3p")}
PAST_INTRANSITIVE = {"1s": "im", "2s": "î", "3s": "", "1p": "în", "2p": "in", "3p": "in"}
PRESENT_ENDINGS = {"1s": "im", "2s": "ît", "3s": "e", "1p": "în", "2p": "in", "3p": "in"}
OBJECT_CLITICS = {"1s": "im", "2s": "î", "1p": "în", "2p": "in", "3p": "in"}


@dataclass(frozen=True)
class NounFeatures:
    form: str = "absolute"
    number: str = "sg"

    def __post_init__(self):
        if self.form not in FORMS:
            raise ValueError(f"unknown noun form {self.form!r}")
        if self.number not in NUMBERS:
            raise ValueError(f"unknown number {self.number!r}")
        if self.form == "absolute" and self.number == "pl":
            raise ValueError("the absolute form has no plural")


@dataclass(frozen=True)
class VerbFeatures:
    tense: str
    person: int
    number: str
    negated: bool = False
    progressive: bool = False
    subjunctive: bool = False
    object_clitic: tuple[int, str] | None = None

    def __post_init__(self):
        if self.tense not in TENSES:
            raise ValueError(f"unknown tense {self.tense!r}")
        if self.person not in PERSONS or self.number not in NUMBERS:
            raise ValueError(f"bad person/number {self.person}/{self.number}")
        if self.progressive and self.subjunctive:
            raise ValueError("progressive and subjunctive are exclusive")
        if self.tense != "present" and (self.progressive or self.subjunctive):
            raise ValueError("progressive and subjunctive are present-tense only")
        if self.subjunctive and self.negated:
            raise ValueError("the subjunctive 'bi' and negative 'na' share one slot")
        if self.tense == "imperative" and self.person != 2:
            raise ValueError("imperatives are second person only")
        if self.object_clitic is not None:
            if self.tense != "past":
                raise ValueError("object clitics occur in the past tense only")
            op, on = self.object_clitic
            if op not in PERSONS or on not in NUMBERS:
                raise ValueError(f"bad object clitic {self.object_clitic}")
            if _pn(op, on) not in OBJECT_CLITICS:
                raise ValueError("a third person singular object has no overt clitic")

    @property
    def pn(self) -> str:
        return _pn(self.person, self.number)


# ---------------------------------------------------------------- string-level oracle

def apply_phonology(morphs) -> str:
    """Concatenate morphs, inserting "y" where a vowel meets a vowel."""
    out = ""
    for m in morphs:
        if not m:
            continue
        if out and out[-1] in VOWELS and m[0] in VOWELS:
            out += "y"
        out += m
    return out


# (form, number) -> (after consonant, after vowel)
_NOMINAL = {
    ("indefinite", "sg"): ("êk", "yek"),
    ("indefinite", "pl"): ("an", "an"),
    ("definite", "sg"): ("eke", "ke"),
    ("definite", "pl"): ("ekan", "kan"),
    ("demonstrative", "sg"): ("e", "e"),
    ("demonstrative", "pl"): ("ane", "ane"),
}

# loose izafa linker after the nominal suffix; definite singular has none
_LOOSE_LINK = {
    ("absolute", "sg"): ("î", "y"),
    ("indefinite", "sg"): ("i", "i"),
    ("indefinite", "pl"): ("î", "î"),
    ("definite", "sg"): ("", ""),
    ("definite", "pl"): ("î", "î"),
}


def _nominal_morphs(lemma: str, f: NounFeatures) -> list[str]:
    if f.form == "absolute":
        return [lemma]
    return [lemma, _NOMINAL[f.form, f.number][ends_in_vowel(lemma)]]


def noun_token(lemma: str, f: NounFeatures) -> str:
    """The inflected word alone, without the demonstrative determiner."""
    return apply_phonology(_nominal_morphs(lemma, f))


def inflect_noun(lemma: str, f: NounFeatures) -> str:
    word = noun_token(lemma, f)
    return f"{DETERMINER} {word}" if f.form == "demonstrative" else word


def _izafa_tokens(noun: str, adj: str, kind: str, f: NounFeatures) -> tuple[str, str]:
    if kind not in IZAFA_KINDS:
        raise ValueError(f"unknown izafa kind {kind!r}")
    if kind == "close" or f.form == "demonstrative":
        return apply_phonology([noun, "e"]), noun_token(adj, f)
    v = ends_in_vowel(noun)
    link = _LOOSE_LINK[f.form, f.number][v]
    return apply_phonology(_nominal_morphs(noun, f) + [link]), adj


def inflect_adjective_phrase(noun: str, adj: str, kind: str, f: NounFeatures) -> str:
    if not noun or not adj:
        raise ValueError("noun and adjective must be nonempty")
    phrase = " ".join(_izafa_tokens(noun, adj, kind, f))
    return f"{DETERMINER} {phrase}" if f.form == "demonstrative" else phrase


def grade_adjective(adj: str, degree: str) -> str:
    suffix = {"comparative": "tir", "superlative": "tirîn"}[degree]
    return apply_phonology([adj, suffix])


def form_adverb(base: str, strategy: str) -> str:
    if not base:
        raise ValueError("empty base")
    if strategy == "prefix_be":
        return "be" + base
    if strategy == "suffix_ane":
        return apply_phonology([base, "ane"])
    raise ValueError(f"unknown adverb strategy {strategy!r}")


def suffix_forms(base: str, tag: str) -> list[str]:
    """Every allomorph of a relative-adjective or diminutive suffix on ``base``."""
    if tag not in ("RA", "DIM"):
        raise ValueError(f"{tag} is not a free suffix class")
    return sorted({apply_phonology([base, m]) for m in TAGSET[tag]})


def conjugate_verb(entry: LexiconEntry, f: VerbFeatures) -> str:
    if not entry.is_verb:
        raise ValueError(f"{entry.lemma!r} is not a verb")
    if f.object_clitic is not None and not entry.transitive:
        raise ValueError("object clitics need a transitive verb")
    if f.tense == "past":
        prefix = "ne" if f.negated else ""
        ending = POSSESSIVE[f.pn] if entry.transitive else PAST_INTRANSITIVE[f.pn]
        obj = OBJECT_CLITICS[_pn(*f.object_clitic)] if f.object_clitic else ""
        return prefix + apply_phonology([entry.past_stem, ending, obj])
    if f.tense == "present":
        if f.negated:
            prefix = "na"
        elif f.subjunctive:
            prefix = "bi"
        elif f.progressive:
            prefix = "de"
        else:
            prefix = ""
        return prefix + apply_phonology([entry.present_stem, PRESENT_ENDINGS[f.pn]])
    prefix = "me" if f.negated else "bi"
    return prefix + apply_phonology([entry.present_stem, "in" if f.number == "pl" else ""])


# ---------------------------------------------------------------- analysis strings

def base_analysis(lemma: str, pos: str) -> str:
    return f"{lemma}<{POS_TAGS[pos]}>"


def noun_analysis(lemma: str, f: NounFeatures, pos: str = "noun") -> str:
    out = base_analysis(lemma, pos)
    if f.form == "absolute":
        return out
    form_tag = {"indefinite": "IND", "definite": "DEF", "demonstrative": "DEM"}[f.form]
    return out + f"<{form_tag}><{f.number.upper()}>"


def izafa_analyses(noun: str, adj: str, kind: str, f: NounFeatures) -> tuple[str, str]:
    if kind == "close" or f.form == "demonstrative":
        return base_analysis(noun, "noun") + "<EZC>", noun_analysis(adj, f, "adjective")
    head = noun_analysis(noun, f)
    if (f.form, f.number) != ("definite", "sg"):
        head += "<EZ>"
    return head, base_analysis(adj, "adjective")


def verb_analysis(entry: LexiconEntry, f: VerbFeatures) -> str:
    stem = entry.past_stem if f.tense == "past" else entry.present_stem
    out = stem + "<" + entry.stem_tag("past" if f.tense == "past" else "present") + ">"
    if f.tense == "imperative":
        out += "<NMP>" if f.negated else "<IMP>"
        return out + f"<imp-{f.pn}>"
    if f.negated:
        out += "<NEG>"
    if f.subjunctive:
        out += "<SUB>"
    if f.progressive:
        out += "<CON>"
    out += f"<{'past' if f.tense == 'past' else 'pres'}-{f.pn}>"
    if f.object_clitic:
        out += f"<obj-{_pn(*f.object_clitic)}>"
    return out


# ---------------------------------------------------------------- compiled grammar

def _data_text(name: str) -> str:
    return resources.files("sorani_fst").joinpath("data", name).read_text(encoding="utf-8")


def default_grammar_text() -> str:
    return _data_text("sorani.kfst")


def default_lexicon() -> Lexicon:
    from .lexicon import parse_lexicon
    return parse_lexicon(_data_text("seed.tsv"))


def lexicon_environment(lex: Lexicon) -> Environment:
    """Lexicon classes as predefined grammar variables."""
    groups: dict[str, list[Transducer]] = {
        name: [] for name in ("NOUN", "NOUN_C", "NOUN_V", "ADJ", "ADJ_C", "ADJ_V", "ADV",
                              "VPAST_TR", "VPAST_INTR", "VPRES")}
    for e in lex:
        if e.is_verb:
            groups["VPAST_TR" if e.transitive else "VPAST_INTR"].append(entry_to_fst(e, "past"))
            groups["VPRES"].append(entry_to_fst(e, "present"))
            continue
        machine = entry_to_fst(e)
        if e.pos == "adverb":
            groups["ADV"].append(machine)
            continue
        key = "NOUN" if e.pos == "noun" else "ADJ"
        groups[key].append(machine)
        groups[key + ("_V" if ends_in_vowel(e.lemma) else "_C")].append(machine)
    env = Environment()
    for name, machines in groups.items():
        env.define(name, fst.union_all(machines) if machines else fst.empty())
    return env


def build_grammar_fst(lex: Lexicon, grammar_text: str | None = None,
                      name: str = "sorani.kfst") -> Transducer:
    text = default_grammar_text() if grammar_text is None else grammar_text
    return compile_grammar(text, lexicon_environment(lex), name=name)


class Analyzer:
    """A compiled grammar with both lookup directions."""

    def __init__(self, generator: Transducer):
        self.generator = generator
        self.analyzer = fst.invert(generator)

    @classmethod
    def from_lexicon(cls, lex: Lexicon, grammar_text: str | None = None, name: str = "sorani.kfst"):
        return cls(build_grammar_fst(lex, grammar_text, name))

    def analyze(self, word: str) -> list[str]:
        if not word or any(c.isspace() for c in word):
            return []
        return fst.lookup_strings(self.analyzer, word)

    def generate(self, analysis: str) -> list[str]:
        try:
            return fst.lookup_strings(self.generator, analysis)
        except ValueError:
            return []


# ---------------------------------------------------------------- oracle cross-check

@dataclass(frozen=True)
class Case:
    """One feature bundle: token analyses and the oracle's surface forms."""

    label: str
    analyses: tuple[str, ...]
    expected: frozenset[str]
    determiner: bool = False


@dataclass(frozen=True)
class Disagreement:
    case: Case
    check: str
    detail: str


@dataclass
class AgreementReport:
    checks: int = 0
    disagreements: list[Disagreement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def _noun_cells() -> Iterator[NounFeatures]:
    for form, number in itertools.product(FORMS, NUMBERS):
        if not (form == "absolute" and number == "pl"):
            yield NounFeatures(form, number)


def feature_grid(lex: Lexicon, extended: bool = False) -> Iterator[Case]:
    """Feature bundles for every entry.

    The base grid covers noun cells, izafa cells, degree and adverb forms,
    and the past tense by person, number and negation.  ``extended`` adds
    adjective inflection, RA/DIM suffixes, object clitics, present and
    imperative forms.
    """
    nouns = lex.by_pos("noun")
    adjs = lex.by_pos("adjective")
    for e in nouns:
        for f in _noun_cells():
            yield Case(f"noun {e.lemma} {f.form} {f.number}", (noun_analysis(e.lemma, f),),
                       frozenset({inflect_noun(e.lemma, f)}), f.form == "demonstrative")
    for n, a in itertools.product(nouns, adjs):
        for kind in IZAFA_KINDS:
            for f in _noun_cells():
                yield Case(f"izafa {n.lemma} {a.lemma} {kind} {f.form} {f.number}",
                           izafa_analyses(n.lemma, a.lemma, kind, f),
                           frozenset({inflect_adjective_phrase(n.lemma, a.lemma, kind, f)}),
                           f.form == "demonstrative")
    for a in adjs:
        for degree, tag in (("comparative", "COMP"), ("superlative", "SUP")):
            yield Case(f"degree {a.lemma} {degree}", (base_analysis(a.lemma, a.pos) + f"<{tag}>",),
                       frozenset({grade_adjective(a.lemma, degree)}))
    for e in nouns + adjs:
        for strategy, tag in (("suffix_ane", "AD-ane"), ("prefix_be", "AD-be")):
            yield Case(f"adverb {e.lemma} {strategy}", (base_analysis(e.lemma, e.pos) + f"<{tag}>",),
                       frozenset({form_adverb(e.lemma, strategy)}))
    verbs = lex.by_pos("verb")
    for v in verbs:
        for p, num, neg in itertools.product(PERSONS, NUMBERS, (False, True)):
            f = VerbFeatures("past", p, num, negated=neg)
            yield Case(f"verb {v.lemma} past {f.pn}{' neg' if neg else ''}",
                       (verb_analysis(v, f),), frozenset({conjugate_verb(v, f)}))
    if not extended:
        return
    for a in adjs:
        for f in _noun_cells():
            if f.form == "absolute":
                continue
            yield Case(f"adjective {a.lemma} {f.form} {f.number}",
                       (noun_analysis(a.lemma, f, "adjective"),),
                       frozenset({noun_token(a.lemma, f)}))
    for e in nouns + adjs:
        for tag in ("RA", "DIM"):
            yield Case(f"{tag} {e.lemma}", (base_analysis(e.lemma, e.pos) + f"<{tag}>",),
                       frozenset(suffix_forms(e.lemma, tag)))
    for e in lex.by_pos("adverb"):
        yield Case(f"adverb {e.lemma}", (base_analysis(e.lemma, e.pos),), frozenset({e.lemma}))
    for v in verbs:
        for p, num in itertools.product(PERSONS, NUMBERS):
            if v.transitive:
                for obj, neg in itertools.product(OBJECT_CLITICS, (False, True)):
                    f = VerbFeatures("past", p, num, negated=neg,
                                     object_clitic=(int(obj[0]), "sg" if obj[1] == "s" else "pl"))
                    yield Case(f"verb {v.lemma} past {f.pn} obj {obj}", (verb_analysis(v, f),),
                               frozenset({conjugate_verb(v, f)}))
            for neg, prog, subj in ((False, False, False), (False, True, False), (False, False, True),
                                    (True, False, False), (True, True, False)):
                f = VerbFeatures("present", p, num, negated=neg, progressive=prog, subjunctive=subj)
                yield Case(f"verb {v.lemma} present {f.pn}", (verb_analysis(v, f),),
                           frozenset({conjugate_verb(v, f)}))
        for num, neg in itertools.product(NUMBERS, (False, True)):
            f = VerbFeatures("imperative", 2, num, negated=neg)
            yield Case(f"verb {v.lemma} imperative {f.pn}", (verb_analysis(v, f),),
                       frozenset({conjugate_verb(v, f)}))


def analyses_agree(lex: Lexicon, analyzer: Analyzer | None = None,
                   extended: bool = False) -> AgreementReport:
    """Compare oracle output with FST generation and analysis, two checks per bundle."""
    analyzer = analyzer or Analyzer.from_lexicon(lex)
    report = AgreementReport()
    for case in feature_grid(lex, extended):
        per_token = [analyzer.generate(a) for a in case.analyses]
        generated = {" ".join(words) for words in itertools.product(*per_token)}
        if case.determiner:
            generated = {f"{DETERMINER} {g}" for g in generated}
        report.checks += 1
        if generated != case.expected:
            report.disagreements.append(Disagreement(
                case, "generate", f"oracle {sorted(case.expected)} vs fst {sorted(generated)}"))
        report.checks += 1
        missing = []
        for phrase in sorted(case.expected):
            words = phrase.split(" ")
            if case.determiner:
                words = words[1:]
            if len(words) != len(case.analyses):
                missing.append(f"{phrase!r} has {len(words)} tokens")
                continue
            for word, analysis in zip(words, case.analyses):
                if analysis not in analyzer.analyze(word):
                    missing.append(f"{analysis} not among analyses of {word!r}")
        if missing:
            report.disagreements.append(Disagreement(case, "analyze", "; ".join(missing)))
    return report


# ---------------------------------------------------------------- golden tables

def _read_tsv(name: str) -> list[dict[str, str]]:
    return list(csv.DictReader(_data_text(name).splitlines(), delimiter="\t"))


def noun_paradigm_rows() -> list[dict[str, str]]:
    return _read_tsv("noun_paradigm.tsv")


def izafa_rows() -> list[dict[str, str]]:
    return _read_tsv("izafa_phrases.tsv")
