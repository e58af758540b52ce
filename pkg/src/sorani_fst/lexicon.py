"""Base-form lexicon: lemmas with part of speech, and stems for verbs.

File format, one entry per line, tab separated, ``#`` starts a comment line::

    naw      noun
    xwardin  verb  xward  xo  trans
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import fst
from .fst import EPSILON, Char, PairLabel, Tag, Transducer

log = logging.getLogger(__name__)

VOWELS = frozenset("aeêiîouû")
POS_TAGS = {"noun": "noun", "adjective": "adj", "adverb": "adv"}
PARTS_OF_SPEECH = ("noun", "adjective", "adverb", "verb")


class LexiconError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def ends_in_vowel(lemma: str) -> bool:
    if not lemma:
        raise ValueError("empty lemma")
    return lemma[-1] in VOWELS


@dataclass(frozen=True)
class LexiconEntry:
    lemma: str
    pos: str
    past_stem: str | None = None
    present_stem: str | None = None
    transitive: bool | None = None

    def __post_init__(self):
        if not self.lemma:
            raise ValueError("empty lemma")
        if self.pos not in PARTS_OF_SPEECH:
            raise ValueError(f"unknown part of speech {self.pos!r}")
        verb_fields = (self.past_stem, self.present_stem, self.transitive)
        if self.pos == "verb":
            if not self.past_stem or not self.present_stem or self.transitive is None:
                raise ValueError(f"verb {self.lemma!r} needs past stem, present stem and transitivity")
        elif any(f is not None for f in verb_fields):
            raise ValueError(f"{self.pos} {self.lemma!r} cannot carry verb fields")

    @property
    def is_verb(self) -> bool:
        return self.pos == "verb"

    def stem_tag(self, stem: str) -> str:
        """``verb-transitive-past-stem`` and friends; ``stem`` is past or present."""
        trans = "transitive" if self.transitive else "intransitive"
        return f"verb-{trans}-{stem}-stem"

    def past_stem_warning(self) -> str | None:
        if not self.is_verb:
            return None
        if not self.lemma.endswith("in"):
            return f"verb {self.lemma!r} does not end in the infinitive suffix 'in'"
        if self.lemma[:-2] != self.past_stem:
            return (f"past stem {self.past_stem!r} of {self.lemma!r} differs from "
                    f"infinitive minus 'in' ({self.lemma[:-2]!r})")
        return None


@dataclass
class Lexicon:
    entries: list[LexiconEntry] = field(default_factory=list)
    warnings: list[tuple[int | None, str]] = field(default_factory=list)

    def __post_init__(self):
        self.index: dict[tuple[str, str], LexiconEntry] = {}
        for e in self.entries:
            key = (e.lemma, e.pos)
            if key in self.index:
                raise LexiconError(f"duplicate entry {e.lemma!r} ({e.pos})")
            self.index[key] = e

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return isinstance(other, Lexicon) and self.entries == other.entries

    def get(self, lemma: str, pos: str) -> LexiconEntry | None:
        return self.index.get((lemma, pos))

    def by_pos(self, pos: str) -> list[LexiconEntry]:
        return [e for e in self.entries if e.pos == pos]


def parse_lexicon(text: str) -> Lexicon:
    """Parse TSV text into a Lexicon.  Any error rejects the whole file."""
    entries, warnings, seen = [], [], {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) < 2:
            raise LexiconError("expected at least lemma and part of speech", lineno)
        lemma, pos = cols[0], cols[1]
        if not lemma:
            raise LexiconError("empty lemma", lineno)
        if pos not in PARTS_OF_SPEECH:
            raise LexiconError(f"unknown part of speech {pos!r}", lineno)
        if pos == "verb":
            if len(cols) != 5:
                raise LexiconError("verb needs lemma, pos, past stem, present stem, trans|intrans", lineno)
            if cols[4] not in ("trans", "intrans"):
                raise LexiconError(f"transitivity must be trans or intrans, got {cols[4]!r}", lineno)
            try:
                entry = LexiconEntry(lemma, pos, cols[2], cols[3], cols[4] == "trans")
            except ValueError as exc:
                raise LexiconError(str(exc), lineno) from None
        else:
            if len(cols) != 2:
                raise LexiconError(f"{pos} takes exactly two fields", lineno)
            entry = LexiconEntry(lemma, pos)
        if (lemma, pos) in seen:
            raise LexiconError(f"duplicate entry {lemma!r} ({pos}), first on line {seen[lemma, pos]}", lineno)
        seen[lemma, pos] = lineno
        msg = entry.past_stem_warning()
        if msg:
            log.warning("lexicon line %d: %s", lineno, msg)
            warnings.append((lineno, msg))
        entries.append(entry)
    return Lexicon(entries, warnings)


def load_lexicon(path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read())


def serialize_lexicon(lex: Lexicon) -> str:
    rows = []
    for e in lex.entries:
        if e.is_verb:
            rows.append("\t".join([e.lemma, e.pos, e.past_stem, e.present_stem,
                                   "trans" if e.transitive else "intrans"]))
        else:
            rows.append(f"{e.lemma}\t{e.pos}")
    return "\n".join(rows) + ("\n" if rows else "")


def _stem_machine(chars: str, tag: str) -> Transducer:
    labels = [PairLabel(Char(c), Char(c)) for c in chars]
    labels.append(PairLabel(Tag(tag), EPSILON))
    return fst.from_pairs(labels)


def entry_to_fst(entry: LexiconEntry, stem: str | None = None) -> Transducer:
    """Identity over the base form followed by its base tag on the analysis side.

    Verbs have one machine per stem; ``stem`` picks ``"past"`` or
    ``"present"``, and None gives the union of both.
    """
    if not entry.is_verb:
        return _stem_machine(entry.lemma, POS_TAGS[entry.pos])
    if stem is None:
        return fst.union(entry_to_fst(entry, "past"), entry_to_fst(entry, "present"))
    if stem == "past":
        return _stem_machine(entry.past_stem, entry.stem_tag("past"))
    if stem == "present":
        return _stem_machine(entry.present_stem, entry.stem_tag("present"))
    raise ValueError(f"stem must be 'past' or 'present', got {stem!r}")
