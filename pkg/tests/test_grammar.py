import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slhr.errors import (
    ArityMismatch,
    CyclicGrammar,
    DuplicateRule,
    GrammarError,
    MissingRule,
    RankMismatch,
    UnknownSymbol,
    UnreachableNonterminal,
)
from slhr.families import random_grammar
from slhr.grammar import Grammar, nt_edge_order, validate
from slhr.hypergraph import make_graph


def tiny(rules, nts=(("A", 1),), start=None):
    start = start or make_graph(1, (), [("A", (1,))])
    return Grammar.build({"a": 2}, nts, start, rules)


def test_example_stats(ex):
    s = ex.stats
    assert (s.kappa, s.height, s.r, s.max_vertex, s.n_rules) == (3, 3, 2, 4, 4)
    assert ex.topo[-1] == "S"


def test_example_height_by_brute_force(ex):
    def longest(a):
        kids = [e.label for e in ex.children(a)]
        return 0 if not kids else 1 + max(longest(b) for b in kids)

    assert longest("S") == ex.stats.height


def test_cyclic():
    g = tiny([("A", make_graph(1, (1,), [("A", (1,))]))])
    with pytest.raises(CyclicGrammar):
        validate(g)


def test_duplicate_rule():
    r = make_graph(1, (1,), [])
    with pytest.raises(DuplicateRule):
        validate(tiny([("A", r), ("A", r)]))


def test_missing_rule():
    with pytest.raises(MissingRule):
        validate(tiny([]))


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        validate(tiny([("A", make_graph(2, (1, 2), []))]))
    bad_start = make_graph(2, (2,), [])
    with pytest.raises(RankMismatch):
        validate(tiny([("A", make_graph(1, (1,), []))], start=bad_start))


def test_unknown_and_arity():
    with pytest.raises(UnknownSymbol):
        validate(tiny([("A", make_graph(2, (2,), [("z", (1, 2))]))]))
    with pytest.raises(ArityMismatch):
        validate(tiny([("A", make_graph(3, (3,), [("a", (1, 2, 3))]))]))


def test_noncanonical_rhs():
    with pytest.raises(GrammarError):
        validate(tiny([("A", make_graph(2, (1,), []))]))


def test_symbol_overlap():
    g = Grammar.build({"A": 1}, {"A": 1}, make_graph(1, (), []), {"A": make_graph(1, (1,), [])})
    with pytest.raises(GrammarError):
        validate(g)


def test_unreachable_strict_and_relaxed(caplog):
    rules = [("A", make_graph(1, (1,), [])), ("B", make_graph(1, (1,), []))]
    g = tiny(rules, nts=(("A", 1), ("B", 1)))
    with pytest.raises(UnreachableNonterminal):
        validate(g)
    with caplog.at_level(logging.WARNING):
        vg = validate(g, strict=False)
    assert vg.warnings and "B" in vg.warnings[0]


def test_nt_edge_order_example(ex):
    rhs_a = ex.rhs("A")
    assert [rhs_a.edges[i].label for i in nt_edge_order(rhs_a, ex)] == ["B", "C"]
    start = ex.rhs("S")
    assert [start.edges[i].att for i in nt_edge_order(start, ex)] == [(1, 2), (2, 1)]
    assert nt_edge_order(ex.rhs("D"), ex) == []


def test_nt_edge_order_ties_by_declaration():
    nts = (("B", 1), ("A", 1))
    rules = [("A", make_graph(1, (1,), [])), ("B", make_graph(1, (1,), []))]
    start = make_graph(1, (), [("A", (1,)), ("B", (1,)), ("A", (1,))])
    vg = validate(Grammar.build({"a": 2}, nts, start, rules))
    assert nt_edge_order(start, vg) == [1, 0, 2]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_topo_and_order_properties(seed):
    vg = validate(random_grammar(seed, max_rules=12))
    seen = set()
    for a in vg.topo:
        assert all(e.label in seen for e in vg.children(a))
        seen.add(a)
    for a in vg.symbols():
        g = vg.rhs(a)
        order = nt_edge_order(g, vg)
        keys = [(g.edges[i].att, vg.nt_pos[g.edges[i].label], i) for i in order]
        assert keys == sorted(keys) and len(set(order)) == len(order)
        assert sorted(order) == [i for i, e in enumerate(g.edges) if e.label in vg.nonterminals]
        assert order == nt_edge_order(g, vg)
