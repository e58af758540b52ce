"""Unweighted finite-state transducers.

A transducer denotes a relation between analysis strings (input side) and
surface strings (output side).  Machines are immutable; every operation
returns a new machine.  Lookup runs directly on the nondeterministic machine.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

EPSILON_KIND, CHAR_KIND, TAG_KIND = 0, 1, 2

_BAD_TAG_CHARS = re.compile(r"[<>:\s]")


class Symbol(NamedTuple):
    """One alphabet element.  Tuple order gives Char < Tag, then by value."""

    kind: int
    value: str

    @property
    def is_epsilon(self) -> bool:
        return self.kind == EPSILON_KIND

    @property
    def is_tag(self) -> bool:
        return self.kind == TAG_KIND

    def __str__(self) -> str:
        if self.kind == TAG_KIND:
            return f"<{self.value}>"
        return self.value

    def __repr__(self) -> str:
        if self.kind == EPSILON_KIND:
            return "EPSILON"
        if self.kind == TAG_KIND:
            return f"Tag({self.value!r})"
        return f"Char({self.value!r})"


EPSILON = Symbol(EPSILON_KIND, "")


def Char(c: str) -> Symbol:
    if len(c) != 1:
        raise ValueError(f"Char needs exactly one code point, got {c!r}")
    return Symbol(CHAR_KIND, c)


def Tag(name: str) -> Symbol:
    if not name or _BAD_TAG_CHARS.search(name):
        raise ValueError(f"invalid tag name {name!r}")
    return Symbol(TAG_KIND, name)


class PairLabel(NamedTuple):
    input: Symbol
    output: Symbol

    def __str__(self) -> str:
        return f"{_sym_text(self.input)}:{_sym_text(self.output)}"


class StringPair(NamedTuple):
    analysis: tuple[Symbol, ...]
    surface: tuple[Symbol, ...]

    def __str__(self) -> str:
        return f"({format_symbols(self.analysis)!r}, {format_symbols(self.surface)!r})"


_TAG_OR_CHAR = re.compile(r"<([^<>:\s]+)>|(.)", re.DOTALL)


def parse_symbols(text: str) -> tuple[Symbol, ...]:
    """Split ``"naw<noun><DEF>"`` into chars and tags."""
    out = []
    for m in _TAG_OR_CHAR.finditer(text):
        out.append(Tag(m.group(1)) if m.group(1) is not None else Char(m.group(2)))
    return tuple(out)


def format_symbols(symbols: Iterable[Symbol]) -> str:
    return "".join(str(s) for s in symbols)


def _as_symbols(seq: str | Sequence[Symbol]) -> tuple[Symbol, ...]:
    if isinstance(seq, str):
        return parse_symbols(seq)
    syms = tuple(seq)
    if any(s.is_epsilon for s in syms):
        raise ValueError("input sequence must be epsilon-free")
    return syms


Arc = tuple[int, PairLabel, int]


@dataclass(frozen=True, eq=False)
class Transducer:
    state_count: int
    start: int
    finals: frozenset[int]
    transitions: tuple[Arc, ...]

    def __post_init__(self):
        n = self.state_count
        if n < 1 or not 0 <= self.start < n:
            raise ValueError(f"start state {self.start} out of range for {n} states")
        if any(not 0 <= f < n for f in self.finals):
            raise ValueError("final state out of range")
        for src, _, dst in self.transitions:
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError(f"transition {src}->{dst} out of range")

    def __repr__(self) -> str:
        return (f"Transducer(states={self.state_count}, arcs={len(self.transitions)}, "
                f"finals={len(self.finals)})")

    @cached_property
    def _arcs_from(self) -> list[list[tuple[PairLabel, int]]]:
        out: list[list[tuple[PairLabel, int]]] = [[] for _ in range(self.state_count)]
        for src, label, dst in self.transitions:
            out[src].append((label, dst))
        return out

    @cached_property
    def _input_index(self):
        # per state: (epsilon-input arcs, {input symbol: [(output, dst)]})
        index = []
        for arcs in self._arcs_from:
            eps, by_sym = [], defaultdict(list)
            for label, dst in arcs:
                if label.input.is_epsilon:
                    eps.append((label.output, dst))
                else:
                    by_sym[label.input].append((label.output, dst))
            index.append((eps, dict(by_sym)))
        return index

    def input_alphabet(self) -> set[Symbol]:
        return {lab.input for _, lab, _ in self.transitions if not lab.input.is_epsilon}

    def output_alphabet(self) -> set[Symbol]:
        return {lab.output for _, lab, _ in self.transitions if not lab.output.is_epsilon}


class _Builder:
    def __init__(self):
        self.n = 0
        self.arcs: list[Arc] = []
        self.finals: set[int] = set()

    def state(self) -> int:
        self.n += 1
        return self.n - 1

    def embed(self, t: Transducer) -> int:
        off = self.n
        self.n += t.state_count
        self.arcs.extend((s + off, lab, d + off) for s, lab, d in t.transitions)
        return off

    def arc(self, src: int, label: PairLabel, dst: int):
        self.arcs.append((src, label, dst))

    def build(self, start: int) -> Transducer:
        return Transducer(self.n, start, frozenset(self.finals), tuple(self.arcs))


_EPS_PAIR = PairLabel(EPSILON, EPSILON)


def empty() -> Transducer:
    return Transducer(1, 0, frozenset(), ())


def epsilon_fst() -> Transducer:
    return Transducer(1, 0, frozenset({0}), ())


def from_pairs(labels: Iterable[PairLabel | tuple[Symbol, Symbol]]) -> Transducer:
    labels = [PairLabel(*lab) for lab in labels]
    arcs = tuple((i, lab, i + 1) for i, lab in enumerate(labels))
    return Transducer(len(labels) + 1, 0, frozenset({len(labels)}), arcs)


def align(analysis: Sequence[Symbol], surface: Sequence[Symbol]) -> list[PairLabel]:
    """Pair two symbol strings position by position, padding the shorter with epsilons."""
    n = max(len(analysis), len(surface))
    a = list(analysis) + [EPSILON] * (n - len(analysis))
    s = list(surface) + [EPSILON] * (n - len(surface))
    return [PairLabel(x, y) for x, y in zip(a, s)]


def singleton(analysis: str | Sequence[Symbol], surface: str | Sequence[Symbol]) -> Transducer:
    """Machine for the single pair (analysis, surface); strings use ``<TAG>`` notation."""
    return from_pairs(align(_as_symbols(analysis), _as_symbols(surface)))


def identity(symbols: str | Sequence[Symbol]) -> Transducer:
    syms = _as_symbols(symbols)
    return from_pairs(align(syms, syms))


def concat(a: Transducer, b: Transducer) -> Transducer:
    bld = _Builder()
    oa = bld.embed(a)
    ob = bld.embed(b)
    for f in a.finals:
        bld.arc(f + oa, _EPS_PAIR, b.start + ob)
    bld.finals = {f + ob for f in b.finals}
    return bld.build(a.start + oa)


def union(a: Transducer, b: Transducer) -> Transducer:
    bld = _Builder()
    s = bld.state()
    for t in (a, b):
        off = bld.embed(t)
        bld.arc(s, _EPS_PAIR, t.start + off)
        bld.finals.update(f + off for f in t.finals)
    return bld.build(s)


def union_all(machines: Iterable[Transducer]) -> Transducer:
    """n-ary union with a single fresh start state."""
    bld = _Builder()
    s = bld.state()
    for t in machines:
        off = bld.embed(t)
        bld.arc(s, _EPS_PAIR, t.start + off)
        bld.finals.update(f + off for f in t.finals)
    return bld.build(s)


def concat_all(machines: Iterable[Transducer]) -> Transducer:
    result = epsilon_fst()
    for i, t in enumerate(machines):
        result = t if i == 0 else concat(result, t)
    return result


def star(a: Transducer) -> Transducer:
    bld = _Builder()
    s = bld.state()
    off = bld.embed(a)
    bld.arc(s, _EPS_PAIR, a.start + off)
    for f in a.finals:
        bld.arc(f + off, _EPS_PAIR, s)
    bld.finals = {s}
    return bld.build(s)


def plus(a: Transducer) -> Transducer:
    return concat(a, star(a))


def optional(a: Transducer) -> Transducer:
    return union(a, epsilon_fst())


def invert(a: Transducer) -> Transducer:
    arcs = tuple((s, PairLabel(lab.output, lab.input), d) for s, lab, d in a.transitions)
    return Transducer(a.state_count, a.start, a.finals, arcs)


def compose(a: Transducer, b: Transducer) -> Transducer:
    """Relational composition: a's output side is matched against b's input side.

    Unmatched epsilons are sequenced (all of a's lone moves before b's lone
    moves between two synchronised steps) so each path pair is built once.
    """
    b_index = b._input_index
    a_arcs = a._arcs_from
    start = (a.start, b.start, 0)
    ids = {start: 0}
    queue = [start]
    arcs: list[Arc] = []
    finals = set()

    def target(key) -> int:
        if key not in ids:
            ids[key] = len(ids)
            queue.append(key)
        return ids[key]

    while queue:
        key = queue.pop()
        qa, qb, phase = key
        src = ids[key]
        if qa in a.finals and qb in b.finals:
            finals.add(src)
        b_eps, b_sym = b_index[qb]
        for label, qa2 in a_arcs[qa]:
            if label.output.is_epsilon:
                if phase == 0:
                    arcs.append((src, PairLabel(label.input, EPSILON), target((qa2, qb, 0))))
                continue
            for out, qb2 in b_sym.get(label.output, ()):
                arcs.append((src, PairLabel(label.input, out), target((qa2, qb2, 0))))
        for out, qb2 in b_eps:
            arcs.append((src, PairLabel(EPSILON, out), target((qa, qb2, 1))))
    return trim(Transducer(len(ids), 0, frozenset(finals), tuple(arcs)))


def trim(a: Transducer) -> Transducer:
    """Drop states that are not on some start-to-final path."""
    fwd = defaultdict(set)
    back = defaultdict(set)
    for s, _, d in a.transitions:
        fwd[s].add(d)
        back[d].add(s)

    def reach(seeds, graph):
        seen = set(seeds)
        stack = list(seeds)
        while stack:
            for nxt in graph[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    keep = reach([a.start], fwd) & reach(a.finals, back)
    if a.start not in keep:
        return empty()
    order = sorted(keep)
    renum = {old: new for new, old in enumerate(order)}
    arcs = tuple((renum[s], lab, renum[d]) for s, lab, d in a.transitions
                 if s in keep and d in keep)
    return Transducer(len(order), renum[a.start],
                      frozenset(renum[f] for f in a.finals if f in keep), arcs)


def lookup(a: Transducer, input_side: str | Sequence[Symbol],
           max_output_len: int | None = None) -> list[tuple[Symbol, ...]]:
    """All output strings paired with ``input_side``, sorted and deduplicated.

    Configurations (state, position, output) are visited once, so epsilon
    cycles that emit nothing are cut.  Cycles that do emit output are bounded
    by ``max_output_len`` (default ``2 * len(input) + 32``).
    """
    inp = _as_symbols(input_side)
    n = len(inp)
    cap = 2 * n + 32 if max_output_len is None else max_output_len
    index = a._input_index
    start = (a.start, 0, ())
    seen = {start}
    stack = [start]
    results = set()
    while stack:
        q, i, out = stack.pop()
        if i == n and q in a.finals:
            results.add(out)
        eps, by_sym = index[q]
        moves = [(o, d, i) for o, d in eps]
        if i < n:
            moves.extend((o, d, i + 1) for o, d in by_sym.get(inp[i], ()))
        for o, d, j in moves:
            out2 = out if o.is_epsilon else out + (o,)
            if len(out2) > cap:
                continue
            cfg = (d, j, out2)
            if cfg not in seen:
                seen.add(cfg)
                stack.append(cfg)
    return sorted(results)


def lookup_strings(a: Transducer, text: str, max_output_len: int | None = None) -> list[str]:
    return [format_symbols(r) for r in lookup(a, text, max_output_len)]


def enumerate_language(a: Transducer, max_side_len: int) -> set[StringPair]:
    """Every pair whose two sides are both at most ``max_side_len`` symbols."""
    if max_side_len < 0:
        raise ValueError("max_side_len must be nonnegative")
    arcs = a._arcs_from
    start = (a.start, (), ())
    seen = {start}
    stack = [start]
    pairs = set()
    while stack:
        q, x, y = stack.pop()
        if q in a.finals:
            pairs.add(StringPair(x, y))
        for label, d in arcs[q]:
            x2 = x if label.input.is_epsilon else x + (label.input,)
            y2 = y if label.output.is_epsilon else y + (label.output,)
            if len(x2) > max_side_len or len(y2) > max_side_len:
                continue
            cfg = (d, x2, y2)
            if cfg not in seen:
                seen.add(cfg)
                stack.append(cfg)
    return pairs


def language_equal(a: Transducer, b: Transducer, max_side_len: int) -> bool:
    return enumerate_language(a, max_side_len) == enumerate_language(b, max_side_len)


# Text serialisation: "FST <n> <start>", "F <id>", "T <from> <in> <out> <to>".

def _sym_text(s: Symbol) -> str:
    return "@0@" if s.is_epsilon else str(s)


_T_LINE = re.compile(r"T (\d+) (<[^<>:\s]+>|@0@|.) (<[^<>:\s]+>|@0@|.) (\d+)")


def _sym_parse(text: str) -> Symbol:
    if text == "@0@":
        return EPSILON
    if len(text) > 1:
        return Tag(text[1:-1])
    return Char(text)


def to_text(a: Transducer) -> str:
    lines = [f"FST {a.state_count} {a.start}"]
    lines.extend(f"F {f}" for f in sorted(a.finals))
    for s, lab, d in a.transitions:
        lines.append(f"T {s} {_sym_text(lab.input)} {_sym_text(lab.output)} {d}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Transducer:
    lines = text.split("\n")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "FST":
        raise ValueError(f"bad FST header: {lines[0]!r}")
    n, start = int(header[1]), int(header[2])
    finals, arcs = set(), []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        if line.startswith("F "):
            finals.add(int(line[2:]))
            continue
        m = _T_LINE.fullmatch(line)
        if not m:
            raise ValueError(f"line {lineno}: cannot parse {line!r}")
        arcs.append((int(m.group(1)), PairLabel(_sym_parse(m.group(2)), _sym_parse(m.group(3))),
                     int(m.group(4))))
    return Transducer(n, start, frozenset(finals), tuple(arcs))
