import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DATA
from slhr.derivation import expand
from slhr.errors import (
    ArityMismatch,
    DuplicateAttachment,
    DuplicateRule,
    GrammarSyntaxError,
    ScriptSyntaxError,
    UnknownSymbol,
    VertexOutOfRange,
)
from slhr.families import random_grammar
from slhr.grammar import validate
from slhr.hypergraph import make_graph
from slhr.textio import (
    parse_grammar,
    parse_graph,
    parse_script,
    serialize_grammar,
    serialize_graph,
    serialize_script,
)

HEADER = "terminal a 2\nnonterminal A 2\nstart\n  vertices 2\n  edge A 1 2\nend\n"


def test_example_fixture(ex):
    g = ex.grammar
    assert [s for s, _ in g.nonterminals] == ["A", "B", "C", "D"]
    assert dict(g.terminals) == {"a": 2, "b": 2}
    d = dict(g.rules)["D"]
    assert (d.n_vertices, d.ext) == (3, (2, 3))
    assert [(e.label, e.att) for e in d.edges] == [("b", (2, 1)), ("b", (1, 3)), ("b", (3, 2))]


def test_example_graph_golden(ex):
    assert serialize_graph(expand(ex)) == (DATA / "example.graph").read_text()


def test_serialize_graph_forms():
    assert serialize_graph(make_graph(1, (), [])) == "vertices 1\next 0\n"
    text = serialize_graph(make_graph(3, (), [("b", (1, 2)), ("a", (3, 1)), ("a", (2, 3))]))
    assert text.splitlines()[2:] == ["edge a 2 3", "edge a 3 1", "edge b 1 2"]
    assert serialize_graph(parse_graph(text)) == text


@pytest.mark.parametrize(
    "body, exc, line",
    [
        ("rule A\n  vertices 2\n  ext 2\n  edge a 1 1\nend\n", DuplicateAttachment, 10),
        ("rule A\n  vertices 2\n  ext 2\n  edge X 1 2\nend\n", UnknownSymbol, 10),
        ("rule A\n  vertices 3\n  ext 2\n  edge a 1 2 3\nend\n", ArityMismatch, 10),
        ("rule A\n  vertices 2\n  ext 2\n  edge a 1 5\nend\n", VertexOutOfRange, 10),
        ("rule A\n  vertices 2\n  ext 2\n  bogus\nend\n", GrammarSyntaxError, 10),
        ("rule A\n  vertices two\nend\n", GrammarSyntaxError, 8),
        ("rule A\n  vertices 2\n  ext 2\nend\nrule A\n  vertices 2\n  ext 2\nend\n", DuplicateRule, 11),
        ("rule Z\nend\n", UnknownSymbol, 7),
        ("rule A\n  vertices 2\n", GrammarSyntaxError, 7),
    ],
)
def test_parse_errors_carry_lines(body, exc, line):
    with pytest.raises(exc) as info:
        parse_grammar(HEADER + body)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}: ")


def test_parse_misc_errors():
    with pytest.raises(GrammarSyntaxError):
        parse_grammar("terminal a 2\nterminal a 2\n")
    with pytest.raises(GrammarSyntaxError):
        parse_grammar("terminal a 2\n")
    with pytest.raises(GrammarSyntaxError):
        parse_grammar("terminal S 1\nstart\n vertices 1\nend\n")


def test_comments_and_blank_lines():
    text = "# hi\n\nterminal a 2   # rank two\nstart\n  vertices 2\n  edge a 1 2\nend\n"
    g = parse_grammar(text)
    assert g.start.edges[0].att == (1, 2)


def test_script_round_trip(ex):
    text = (DATA / "example.script").read_text()
    start, steps = parse_script(text, ex)
    assert start == 1 and steps == [("a", 1, 2), ("b", 1, 2), ("b", 1, 2)]
    assert serialize_script(start, steps) == text


@pytest.mark.parametrize(
    "text, exc",
    [
        ("", ScriptSyntaxError),
        ("step a 1 2\n", ScriptSyntaxError),
        ("start 1\nstart 2\n", ScriptSyntaxError),
        ("start 1\nstep a 1\n", ScriptSyntaxError),
        ("start x\n", ScriptSyntaxError),
        ("start 1\nstep q 1 2\n", UnknownSymbol),
    ],
)
def test_script_errors(ex, text, exc):
    with pytest.raises(exc):
        parse_script(text, ex)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_grammar_round_trip(seed):
    g = random_grammar(seed)
    text = serialize_grammar(g)
    assert parse_grammar(text) == g
    assert serialize_grammar(parse_grammar(text)) == text
    vg = validate(g)
    graph_text = serialize_graph(expand(vg))
    assert serialize_graph(parse_graph(graph_text)) == graph_text
