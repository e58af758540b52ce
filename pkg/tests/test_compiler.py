import itertools

import pytest
from hypothesis import given, settings, strategies as st

from sorani_fst import fst
from sorani_fst.compiler import (ANY, BOUNDARY, CompileError, Compose, Concat, Environment,
                                 GrammarError, Identity, LexError, Optional, PairLiteral, ParseError,
                                 Plus, RewriteRule, RuleSource, Star, Union, VarRef, compile,
                                 compile_grammar, compile_rewrite, parse, parse_expr, pretty,
                                 tokenize)
from sorani_fst.fst import EPSILON, Char, Tag


def lang(m, k=6):
    return {(fst.format_symbols(p.analysis), fst.format_symbols(p.surface))
            for p in fst.enumerate_language(m, k)}


def kinds(text):
    return [t.kind for t in tokenize(text)]


# ---------------------------------------------------------------- lexing

def test_token_kinds():
    assert kinds('$a$ = x:y | <T>* "q r" 0 || b?') == [
        "VAR", "EQ", "CHARS", "PAIR", "CHARS", "UNION", "TAG", "STAR", "STRING", "EPS",
        "COMPOSE", "CHARS", "OPT", "EOF"]


def test_comments_stripped_but_not_inside_strings():
    toks = tokenize('"50%" % trailing comment\n% whole line')
    assert [(t.kind, t.value) for t in toks[:-1]] == [("STRING", "50%")]


def test_string_escapes():
    assert tokenize(r'"a\"b"')[0].value == 'a"b'


def test_token_positions():
    tok = tokenize("\n  naw")[0]
    assert (tok.line, tok.col) == (2, 3)


def test_class_and_rule_tokens():
    toks = tokenize("#CLASS V = { a e }\n#RULE ^ -> y / V _ V OPT")
    assert toks[0].value == ("V", frozenset("ae"))
    assert toks[1].value == ("^", "y", "V", "V", True)


@pytest.mark.parametrize("text", ['"open', "<tag", "$var", "#CLASS V = a", "#RULE a -> b",
                                  "#CLASS V = { ab }", "a } b", "< >"])
def test_lex_errors(text):
    with pytest.raises(LexError):
        tokenize(text)


# ---------------------------------------------------------------- parsing

def test_precedence():
    node = parse_expr("a b | c* || d")
    assert node == Compose(Union((Concat((Identity((Char("a"),)), Identity((Char("b"),)))),
                                  Star(Identity((Char("c"),))))),
                           Identity((Char("d"),)))


def test_pair_literals():
    assert parse_expr("<DEF>:eke") == PairLiteral((Tag("DEF"),), tuple(map(Char, "eke")))
    assert parse_expr("0:be") == PairLiteral((), (Char("b"), Char("e")))


def test_postfix_stacking():
    assert parse_expr("a+?") == Optional(Plus(Identity((Char("a"),))))


def test_statements_split_on_assignment():
    doc = parse(tokenize("$a$ = x y\n$b$ = $a$\n  | z\n$ROOT$ = $b$"))
    assert [name for name, _ in doc.definitions] == ["a", "b", "ROOT"]
    assert doc.definitions[1][1] == Union((VarRef("a"), Identity((Char("z"),))))


@pytest.mark.parametrize("text,needle", [
    ("$a$ = $b$", "before definition"),
    ("$a$ = x\n$a$ = y", "redefined"),
    ("$a$ = (x", "expected RPAREN"),
    ("$a$ = x ||", "expected an expression"),
    ("x y", "expected a statement"),
    ("#RULE ab -> y / * _ *", "single character"),
    ("#RULE a -> y / NOPE _ *", "unknown class"),
    ("#RULE 0 -> 0 / * _ *", "epsilon"),
    ("#CLASS V = { a }\n#CLASS V = { b }", "redefined"),
])
def test_parse_errors_carry_a_line(text, needle):
    with pytest.raises(ParseError) as err:
        parse(tokenize(RuleSource(text, "g.kfst")), name="g.kfst")
    assert needle in err.value.message
    assert err.value.line is not None
    assert str(err.value).startswith("g.kfst:")


def test_predefined_variables_are_known():
    doc = parse(tokenize("$ROOT$ = $NOUN$ <x>:0"), predefined={"NOUN"})
    assert doc.definitions[0][1].children[0] == VarRef("NOUN")
    with pytest.raises(ParseError):
        parse(tokenize("$NOUN$ = a"), predefined={"NOUN"})


# ---------------------------------------------------------------- compiling

def test_compile_pairs_and_operators():
    env = Environment()
    assert lang(compile(parse_expr("naw <DEF>:eke"), env), 8) == {("naw<DEF>", "naweke")}
    assert lang(compile(parse_expr("(a | b) c?"), env)) == {
        ("a", "a"), ("b", "b"), ("ac", "ac"), ("bc", "bc")}


def test_compile_composition():
    m = compile(parse_expr("a:b || (b:c | b:d)"), Environment())
    assert lang(m) == {("a", "c"), ("a", "d")}


def test_compile_grammar_uses_variables_and_root():
    m = compile_grammar("$X$ = a:b\n$ROOT$ = $X$ $X$*")
    assert ("aaa", "bbb") in lang(m)


def test_missing_root():
    with pytest.raises(CompileError):
        compile_grammar("$a$ = x")


def test_unresolved_variable_at_compile_time():
    with pytest.raises(CompileError):
        compile(VarRef("ghost"), Environment())


def test_environment_rejects_redefinition():
    env = Environment()
    env.define("a", fst.epsilon_fst())
    with pytest.raises(CompileError):
        env.define("a", fst.epsilon_fst())


def test_grammar_errors_share_a_base():
    assert issubclass(LexError, GrammarError) and issubclass(CompileError, GrammarError)


def test_rules_apply_to_root_surface():
    text = "#CLASS V = { a e }\n$ROOT$ = <x>:a^e | <y>:n^a\n#RULE ^ -> y / V _ V\n#RULE ^ -> 0 / * _ *"
    assert lang(compile_grammar(text)) == {("<x>", "aye"), ("<y>", "na")}


# ---------------------------------------------------------------- pretty printer

def test_pretty_examples():
    assert pretty(parse_expr("a b | c* || d")) == "((a b) | c*) || d"
    assert pretty(parse_expr('<DEF>:eke "x y" 0')) == '<DEF>:eke "x y" 0'


_atoms = st.one_of(
    st.text("abcê^ł", min_size=1, max_size=3).map(lambda s: Identity(tuple(map(Char, s)))),
    st.sampled_from(["DEF", "SG", "past-1s"]).map(lambda t: Identity((Tag(t),))),
    st.just(Identity(())),
    st.tuples(st.text("ab|", max_size=2), st.text("xy ", max_size=2)).map(
        lambda p: PairLiteral(tuple(map(Char, p[0])), tuple(map(Char, p[1])))),
    st.sampled_from(["A", "B"]).map(VarRef),
)


def _extend(children):
    many = st.lists(children, min_size=2, max_size=3).map(tuple)
    return st.one_of(many.map(Concat), many.map(Union), children.map(Star), children.map(Plus),
                     children.map(Optional), st.tuples(children, children).map(lambda p: Compose(*p)))


@settings(max_examples=200, deadline=None)
@given(st.recursive(_atoms, _extend, max_leaves=8))
def test_pretty_roundtrip(node):
    assert parse_expr(pretty(node), predefined={"A", "B"}) == node


# ---------------------------------------------------------------- rewrite rules

VOWELS = frozenset("ae")


def _insert_y(s):
    out = ""
    for i, c in enumerate(s):
        if i and s[i - 1] in VOWELS and c in VOWELS:
            out += "y"
        out += c
    return out


def _strings(alphabet, n):
    for k in range(n + 1):
        for t in itertools.product(alphabet, repeat=k):
            yield "".join(t)


def test_insertion_rule_brute_force():
    rule = RewriteRule(EPSILON, Char("y"), VOWELS, VOWELS)
    m = compile_rewrite(rule, "anew")
    for s in _strings("anew", 4):
        assert fst.lookup_strings(m, s) == [_insert_y(s)], s


def test_marker_rule_cascade_brute_force():
    ins = compile_rewrite(RewriteRule(Char("^"), Char("y"), VOWELS, VOWELS), "anew^")
    drop = compile_rewrite(RewriteRule(Char("^"), EPSILON, ANY, ANY), "anewy^")
    m = fst.compose(ins, drop)
    for s in _strings("ae^n", 5):
        out = ""
        for i, c in enumerate(s):
            if c == "^":
                prev = s[i - 1] if i else None
                nxt = s[i + 1] if i + 1 < len(s) else None
                if prev in VOWELS and nxt in VOWELS:
                    out += "y"
            else:
                out += c
        assert fst.lookup_strings(m, s) == [out], s


def test_boundary_context():
    rule = RewriteRule(Char("a"), Char("e"), ANY, BOUNDARY)
    m = compile_rewrite(rule, "an")
    assert fst.lookup_strings(m, "ana") == ["ane"]
    assert fst.lookup_strings(m, "aan") == ["aan"]


def test_optional_rule_keeps_both():
    rule = RewriteRule(Char("a"), Char("e"), ANY, ANY, obligatory=False)
    assert fst.lookup_strings(compile_rewrite(rule, "an"), "aa") == ["aa", "ae", "ea", "ee"]


def test_rewrite_is_total_over_its_alphabet():
    rule = RewriteRule(Char("n"), Char("m"), frozenset("a"), BOUNDARY)
    m = compile_rewrite(rule, "anw")
    for s in _strings("anw", 5):
        assert len(fst.lookup(m, s)) == 1, s


def test_rewrite_needs_an_alphabet():
    with pytest.raises(ValueError):
        compile_rewrite(RewriteRule(Char("a"), Char("b"), ANY, ANY), "")


def test_rule_rejects_tags():
    with pytest.raises(ValueError):
        RewriteRule(Tag("X"), Char("b"), ANY, ANY)


def test_compile_alternative_allomorphs():
    m = compile(parse_expr("<IND>:êk | <IND>:yek"), Environment())
    assert fst.lookup_strings(m, "<IND>") == ["yek", "êk"]
    assert lang(compile(parse_expr("x*"), Environment()), 2) == {("", ""), ("x", "x"), ("xx", "xx")}


_small = st.recursive(
    st.text("ab", min_size=1, max_size=2).map(lambda s: Identity(tuple(map(Char, s))))
    | st.tuples(st.text("ab", max_size=1), st.text("xy", max_size=2)).map(
        lambda p: PairLiteral(tuple(map(Char, p[0])), tuple(map(Char, p[1])))),
    lambda ch: st.one_of(st.lists(ch, min_size=2, max_size=2).map(tuple).map(Concat),
                         st.lists(ch, min_size=2, max_size=2).map(tuple).map(Union),
                         ch.map(Star)),
    max_leaves=4)


@settings(max_examples=100, deadline=None)
@given(_small)
def test_compilation_is_compositional(node):
    env = Environment()
    got = fst.enumerate_language(compile(node, env), 4)
    if isinstance(node, Concat):
        want = fst.concat(*(compile(c, env) for c in node.children))
    elif isinstance(node, Union):
        want = fst.union(*(compile(c, env) for c in node.children))
    elif isinstance(node, Star):
        want = fst.star(compile(node.child, env))
    else:
        want = compile(node, env)
    assert got == fst.enumerate_language(want, 4)


def test_derga_demonstrative_through_rules(seed_lexicon):
    from sorani_fst.grammar import build_grammar_fst
    g = build_grammar_fst(seed_lexicon)
    assert fst.lookup_strings(g, "derga<noun><DEM><SG>") == ["dergaye"]
