"""A small transducer specification language and its compiler.

Grammar files (``.kfst``) hold four kinds of statement::

    % comment to end of line
    #CLASS VOWEL = { a e ê i î o u û }
    #RULE ^ -> y / VOWEL _ VOWEL          (in/out may be 0 for epsilon; OPT = optional)
    $name$ = EXPR
    $ROOT$ = EXPR

EXPR operators, loosest first: ``||`` (composition), ``|`` (union),
juxtaposition (concatenation), postfix ``* + ?``.  Atoms are words
(``naw``), tags (``<DEF>``), quoted strings, ``0`` (epsilon), variables and
parenthesised expressions; ``x:y`` pairs two atoms.  Declared rules are
applied, in order, to the surface side of ``$ROOT$``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import fst
from .fst import EPSILON, Char, PairLabel, Symbol, Tag, Transducer

BOUNDARY = "#"
ANY = "*"

_SPECIAL = set('|()*+?:=%"<>$#{}')


class GrammarError(Exception):
    def __init__(self, message: str, line: int | None = None, source: str = "<grammar>"):
        self.message = message
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


class LexError(GrammarError):
    pass


class ParseError(GrammarError):
    pass


class CompileError(GrammarError):
    pass


@dataclass(frozen=True)
class RuleSource:
    text: str
    name: str = "<grammar>"


@dataclass(frozen=True)
class Token:
    kind: str
    value: object = None
    line: int = 0
    col: int = 0

    def __repr__(self):
        return f"{self.kind}({self.value!r})" if self.value is not None else self.kind


_OPS = {"|": "UNION", "(": "LPAREN", ")": "RPAREN", "*": "STAR", "+": "PLUS",
        "?": "OPT", ":": "PAIR", "=": "EQ"}

_RULE_FIELD = re.compile(r'"(?:[^"\\]|\\.)*"|\S+')


def _unquote(text: str) -> str:
    return re.sub(r"\\(.)", r"\1", text[1:-1])


def _strip_comment(line: str) -> str:
    in_str = False
    i = 0
    while i < len(line):
        c = line[i]
        if in_str and c == "\\":
            i += 2
            continue
        if c == '"':
            in_str = not in_str
        elif c == "%" and not in_str:
            return line[:i]
        i += 1
    return line


def tokenize(src: RuleSource | str) -> list[Token]:
    if isinstance(src, str):
        src = RuleSource(src)
    tokens: list[Token] = []
    for lineno, raw in enumerate(src.text.splitlines(), start=1):
        line = _strip_comment(raw)
        stripped = line.strip()
        if stripped.startswith("#CLASS"):
            tokens.append(_lex_class(stripped, lineno, src.name))
            continue
        if stripped.startswith("#RULE"):
            tokens.append(_lex_rule(stripped, lineno, src.name))
            continue
        tokens.extend(_lex_expr_line(line, lineno, src.name))
    tokens.append(Token("EOF", line=len(src.text.splitlines()) + 1))
    return tokens


def _lex_class(text: str, lineno: int, name: str) -> Token:
    m = re.fullmatch(r"#CLASS\s+(\w+)\s*=\s*\{([^}]*)\}", text)
    if not m:
        raise LexError("malformed #CLASS declaration", lineno, name)
    members = m.group(2).split()
    if any(len(c) != 1 for c in members):
        raise LexError("class members must be single characters", lineno, name)
    return Token("CLASS", (m.group(1), frozenset(members)), lineno)


def _lex_rule(text: str, lineno: int, name: str) -> Token:
    fields = _RULE_FIELD.findall(text)
    for f in fields:
        if f.startswith('"') and (len(f) < 2 or not f.endswith('"')):
            raise LexError("unterminated string in #RULE", lineno, name)
    optional = False
    if fields and fields[-1] == "OPT":
        optional = True
        fields = fields[:-1]
    if len(fields) != 8 or fields[2] != "->" or fields[4] != "/" or fields[6] != "_":
        raise LexError("expected '#RULE in -> out / LEFT _ RIGHT [OPT]'", lineno, name)
    return Token("RULE", (fields[1], fields[3], fields[5], fields[7], optional), lineno)


def _lex_expr_line(line: str, lineno: int, name: str) -> list[Token]:
    out = []
    i, n = 0, len(line)
    while i < n:
        c = line[i]
        col = i + 1
        if c.isspace():
            i += 1
        elif line.startswith("||", i):
            out.append(Token("COMPOSE", line=lineno, col=col))
            i += 2
        elif c in _OPS:
            out.append(Token(_OPS[c], line=lineno, col=col))
            i += 1
        elif c == "$":
            j = line.find("$", i + 1)
            if j < 0:
                raise LexError("unterminated variable", lineno, name)
            var = line[i + 1:j]
            if not var or any(ch.isspace() for ch in var):
                raise LexError(f"bad variable name {var!r}", lineno, name)
            out.append(Token("VAR", var, lineno, col))
            i = j + 1
        elif c == "<":
            j = line.find(">", i + 1)
            if j < 0:
                raise LexError("unterminated tag", lineno, name)
            try:
                tag = Tag(line[i + 1:j])
            except ValueError as exc:
                raise LexError(str(exc), lineno, name) from None
            out.append(Token("TAG", tag.value, lineno, col))
            i = j + 1
        elif c == '"':
            j = i + 1
            while j < n and line[j] != '"':
                j += 2 if line[j] == "\\" else 1
            if j >= n:
                raise LexError("unterminated string", lineno, name)
            out.append(Token("STRING", _unquote(line[i:j + 1]), lineno, col))
            i = j + 1
        elif c in _SPECIAL:
            raise LexError(f"unexpected character {c!r}", lineno, name)
        else:
            j = i
            while j < n and not line[j].isspace() and line[j] not in _SPECIAL:
                j += 1
            word = line[i:j]
            out.append(Token("EPS", line=lineno, col=col) if word == "0"
                       else Token("CHARS", word, lineno, col))
            i = j
    return out


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class PairLiteral:
    analysis: tuple[Symbol, ...]
    surface: tuple[Symbol, ...]


@dataclass(frozen=True)
class Identity:
    symbols: tuple[Symbol, ...]


@dataclass(frozen=True)
class VarRef:
    name: str


@dataclass(frozen=True)
class Concat:
    children: tuple


@dataclass(frozen=True)
class Union:
    children: tuple


@dataclass(frozen=True)
class Star:
    child: object


@dataclass(frozen=True)
class Plus:
    child: object


@dataclass(frozen=True)
class Optional:
    child: object


@dataclass(frozen=True)
class Compose:
    left: object
    right: object


@dataclass(frozen=True)
class RewriteRule:
    """Single-symbol rewrite ``target_in -> target_out / left _ right``.

    Contexts are a frozenset of characters, ``BOUNDARY`` or ``ANY``.
    """

    target_in: Symbol
    target_out: Symbol
    left_ctx: frozenset[str] | str
    right_ctx: frozenset[str] | str
    obligatory: bool = True

    def __post_init__(self):
        if self.target_in.is_epsilon and self.target_out.is_epsilon:
            raise ValueError("a rewrite cannot map epsilon to epsilon")
        for s in (self.target_in, self.target_out):
            if s.is_tag:
                raise ValueError("rewrite targets must be characters or epsilon")


@dataclass
class Document:
    definitions: list[tuple[str, object]] = field(default_factory=list)
    classes: dict[str, frozenset[str]] = field(default_factory=dict)
    rules: list[RewriteRule] = field(default_factory=list)
    name: str = "<grammar>"


@dataclass
class Environment:
    variables: dict[str, Transducer] = field(default_factory=dict)
    symbol_classes: dict[str, frozenset[str]] = field(default_factory=dict)

    def define(self, name: str, machine: Transducer):
        if name in self.variables:
            raise CompileError(f"variable ${name}$ is already defined")
        self.variables[name] = machine


# ---------------------------------------------------------------- parser

_ATOM_START = {"TAG", "CHARS", "STRING", "EPS", "VAR", "LPAREN"}


class _Parser:
    def __init__(self, tokens: list[Token], known: set[str], name: str):
        self.toks = tokens
        self.i = 0
        self.known = set(known)
        self.name = name

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind: str | None = None) -> Token:
        tok = self.peek()
        if kind is not None and tok.kind != kind:
            self.fail(f"expected {kind}, found {tok!r}", tok)
        self.i += 1
        return tok

    def fail(self, msg: str, tok: Token):
        raise ParseError(f"{msg} (column {tok.col})" if tok.col else msg, tok.line, self.name)

    def document(self) -> Document:
        doc = Document(name=self.name)
        while self.peek().kind != "EOF":
            tok = self.peek()
            if tok.kind == "CLASS":
                self.take()
                cname, members = tok.value
                if cname in doc.classes:
                    self.fail(f"class {cname} redefined", tok)
                doc.classes[cname] = members
            elif tok.kind == "RULE":
                self.take()
                doc.rules.append(self.rule(tok, doc.classes))
            elif tok.kind == "VAR" and self.peek(1).kind == "EQ":
                self.take()
                self.take("EQ")
                if tok.value in self.known:
                    self.fail(f"variable ${tok.value}$ redefined", tok)
                node = self.expr()
                self.known.add(tok.value)
                doc.definitions.append((tok.value, node))
            else:
                self.fail(f"expected a statement, found {tok!r}", tok)
        return doc

    def rule(self, tok: Token, classes: Mapping[str, frozenset[str]]) -> RewriteRule:
        src, dst, left, right, opt = tok.value

        def target(text):
            if text == "0":
                return EPSILON
            ch = _unquote(text) if text.startswith('"') else text
            if len(ch) != 1:
                self.fail(f"rewrite target {text!r} is not a single character", tok)
            return Char(ch)

        def context(text):
            if text in (BOUNDARY, ANY):
                return text
            if text in classes:
                return classes[text]
            ch = _unquote(text) if text.startswith('"') else text
            if len(ch) != 1:
                self.fail(f"unknown class {text!r}", tok)
            return frozenset({ch})

        try:
            return RewriteRule(target(src), target(dst), context(left), context(right), not opt)
        except ValueError as exc:
            self.fail(str(exc), tok)

    def expr(self):
        node = self.union()
        while self.peek().kind == "COMPOSE":
            self.take()
            node = Compose(node, self.union())
        return node

    def union(self):
        parts = [self.concat()]
        while self.peek().kind == "UNION":
            self.take()
            parts.append(self.concat())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def at_atom(self) -> bool:
        tok = self.peek()
        if tok.kind == "VAR" and self.peek(1).kind == "EQ":
            return False  # next statement
        return tok.kind in _ATOM_START

    def concat(self):
        if not self.at_atom():
            self.fail(f"expected an expression, found {self.peek()!r}", self.peek())
        parts = []
        while self.at_atom():
            parts.append(self.postfix())
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def postfix(self):
        node = self.atom()
        ops = {"STAR": Star, "PLUS": Plus, "OPT": Optional}
        while self.peek().kind in ops:
            node = ops[self.take().kind](node)
        return node

    def atom(self):
        tok = self.peek()
        if tok.kind == "LPAREN":
            self.take()
            node = self.expr()
            self.take("RPAREN")
            return node
        if tok.kind == "VAR":
            self.take()
            if tok.value not in self.known:
                self.fail(f"variable ${tok.value}$ used before definition", tok)
            return VarRef(tok.value)
        left = self.side()
        if self.peek().kind == "PAIR":
            self.take()
            right = self.side()
            return PairLiteral(left, right)
        return Identity(left)

    def side(self) -> tuple[Symbol, ...]:
        tok = self.take()
        if tok.kind == "TAG":
            return (Tag(tok.value),)
        if tok.kind in ("CHARS", "STRING"):
            return tuple(Char(c) for c in tok.value)
        if tok.kind == "EPS":
            return ()
        self.fail(f"expected a symbol, found {tok!r}", tok)


def parse(tokens: list[Token], predefined: Iterable[str] = (), name: str = "<grammar>") -> Document:
    """Build a Document from a token stream.  ``predefined`` names variables
    supplied by the caller's environment (e.g. lexicon classes)."""
    return _Parser(tokens, set(predefined), name).document()


def parse_expr(text: str, predefined: Iterable[str] = ()):
    """Parse a bare expression (no statements)."""
    p = _Parser(tokenize(text), set(predefined), "<expr>")
    node = p.expr()
    if p.peek().kind != "EOF":
        p.fail(f"trailing input {p.peek()!r}", p.peek())
    return node


# ---------------------------------------------------------------- pretty printer

def _word_safe(chars: str) -> bool:
    return bool(chars) and chars != "0" and not any(c.isspace() or c in _SPECIAL for c in chars)


def _side_text(syms: tuple[Symbol, ...]) -> str:
    if not syms:
        return "0"
    if len(syms) == 1 and syms[0].is_tag:
        return str(syms[0])
    if any(s.is_tag for s in syms):
        raise ValueError("cannot print a mixed tag/character atom")
    chars = "".join(s.value for s in syms)
    if _word_safe(chars):
        return chars
    return '"' + chars.replace("\\", "\\\\").replace('"', '\\"') + '"'


def pretty(node) -> str:
    def wrap(child):
        text = pretty(child)
        return f"({text})" if isinstance(child, (Concat, Union, Compose)) else text

    if isinstance(node, Identity):
        return _side_text(node.symbols)
    if isinstance(node, PairLiteral):
        return f"{_side_text(node.analysis)}:{_side_text(node.surface)}"
    if isinstance(node, VarRef):
        return f"${node.name}$"
    if isinstance(node, Concat):
        return " ".join(wrap(c) for c in node.children)
    if isinstance(node, Union):
        return " | ".join(wrap(c) for c in node.children)
    if isinstance(node, Compose):
        return f"{wrap(node.left)} || {wrap(node.right)}"
    for cls, op in ((Star, "*"), (Plus, "+"), (Optional, "?")):
        if isinstance(node, cls):
            return wrap(node.child) + op
    raise TypeError(f"not an AST node: {node!r}")


# ---------------------------------------------------------------- compilation

def compile(node, env: Environment) -> Transducer:  # noqa: A001 - mirrors the DSL's verb
    if isinstance(node, Identity):
        return fst.from_pairs(fst.align(node.symbols, node.symbols))
    if isinstance(node, PairLiteral):
        return fst.from_pairs(fst.align(node.analysis, node.surface))
    if isinstance(node, VarRef):
        try:
            return env.variables[node.name]
        except KeyError:
            raise CompileError(f"unresolved variable ${node.name}$") from None
    if isinstance(node, Concat):
        return fst.concat_all(compile(c, env) for c in node.children)
    if isinstance(node, Union):
        return fst.union_all(compile(c, env) for c in node.children)
    if isinstance(node, Star):
        return fst.star(compile(node.child, env))
    if isinstance(node, Plus):
        return fst.plus(compile(node.child, env))
    if isinstance(node, Optional):
        return fst.optional(compile(node.child, env))
    if isinstance(node, Compose):
        return fst.compose(compile(node.left, env), compile(node.right, env))
    raise TypeError(f"not an AST node: {node!r}")


def _in_ctx(ctx, c: str | None) -> bool:
    if ctx == ANY:
        return True
    if ctx == BOUNDARY:
        return c is None
    return c is not None and c in ctx


def compile_rewrite(rule: RewriteRule, alphabet: Iterable[str | Symbol]) -> Transducer:
    """Transducer applying ``rule`` at every eligible site of its input.

    Contexts are tested against the input string, so all sites are found in
    one left-to-right pass.  Obligatory rules leave no eligible site
    unrewritten; symbols away from a site map to themselves.
    """
    sigma = {s.value if isinstance(s, Symbol) else s for s in alphabet}
    if not sigma:
        raise ValueError("rewrite alphabet is empty")
    for ctx in (rule.left_ctx, rule.right_ctx):
        if isinstance(ctx, frozenset):
            sigma |= ctx
    for s in (rule.target_in, rule.target_out):
        if not s.is_epsilon:
            sigma.add(s.value)
    sigma = sorted(sigma)
    L, R = rule.left_ctx, rule.right_ctx
    out = rule.target_out

    ids: dict = {}
    arcs: list = []
    finals: set = set()

    def sid(key) -> int:
        return ids.setdefault(key, len(ids))

    def arc(src, i, o, dst):
        arcs.append((sid(src), PairLabel(i, o), sid(dst)))

    start = ("S", _in_ctx(L, None), 0)
    sid(start)
    if rule.target_in.is_epsilon:
        mid, end = ("MID",), ("END",)
        finals.add(sid(end))
        for lok in (False, True):
            st = ("S", lok, 0)
            end_site = lok and _in_ctx(R, None)
            if not (end_site and rule.obligatory):
                finals.add(sid(st))
            if end_site:
                arc(st, EPSILON, out, end)
            for x in sigma:
                site = lok and _in_ctx(R, x)
                if site:
                    arc(st, EPSILON, out, mid)
                if not site or not rule.obligatory:
                    arc(st, Char(x), Char(x), ("S", _in_ctx(L, x), 0))
        for x in sigma:
            if _in_ctx(R, x):
                arc(mid, Char(x), Char(x), ("S", _in_ctx(L, x), 0))
    else:
        a = rule.target_in.value
        r_at_end = _in_ctx(R, None)
        for lok in (False, True):
            for c in (0, 1, 2):
                st = ("S", lok, c)
                if c == 0 or (c == 1 and r_at_end) or (c == 2 and not r_at_end):
                    finals.add(sid(st))
                for x in sigma:
                    if (c == 1 and not _in_ctx(R, x)) or (c == 2 and _in_ctx(R, x)):
                        continue
                    nlok = _in_ctx(L, x)
                    if x == a and lok:
                        arc(st, Char(x), out, ("S", nlok, 1))
                        arc(st, Char(x), Char(x), ("S", nlok, 2 if rule.obligatory else 0))
                    else:
                        arc(st, Char(x), Char(x), ("S", nlok, 0))
    machine = Transducer(len(ids), ids[start], frozenset(finals), tuple(arcs))
    return fst.trim(machine)


def compile_document(doc: Document, env: Environment | None = None) -> Transducer:
    """Evaluate every definition into ``env`` and return ``$ROOT$`` with the
    document's rewrite rules applied to its surface side."""
    env = env if env is not None else Environment()
    for cname, members in doc.classes.items():
        env.symbol_classes[cname] = members
    for vname, node in doc.definitions:
        try:
            env.define(vname, compile(node, env))
        except CompileError as exc:
            raise CompileError(exc.message, source=doc.name) from None
    if "ROOT" not in env.variables:
        raise CompileError("no $ROOT$ definition", source=doc.name)
    result = env.variables["ROOT"]
    if doc.rules:
        alphabet = {s.value for s in result.output_alphabet() if not s.is_tag}
        for rule in doc.rules:
            alphabet |= {s.value for s in (rule.target_in, rule.target_out) if not s.is_epsilon}
        for rule in doc.rules:
            result = fst.compose(result, compile_rewrite(rule, alphabet))
    return result


def compile_grammar(text: str, env: Environment | None = None, name: str = "<grammar>") -> Transducer:
    env = env if env is not None else Environment()
    doc = parse(tokenize(RuleSource(text, name)), predefined=env.variables, name=name)
    return compile_document(doc, env)
