import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slhr.derivation import build_dt, expand, internal_oracle, vertex_of
from slhr.errors import AbsentEntry, IndexOutOfRange, UniqueLabelViolation
from slhr.families import family_grammar, random_grammar
from slhr.grammar import validate
from slhr.hypergraph import unique_label_violations
from slhr.traverse_table import lookup, precompute_traverse, succ
from oracles import adjacency_step


def test_example_entries(ex_tt):
    e = lookup(ex_tt, "S", 1, "a", 1)
    assert (e.path, e.att) == ((1, 2), (2, 1))
    e = lookup(ex_tt, "D", 1, "b", 1)
    assert (e.path, e.att) == ((), (1, 3))
    e = lookup(ex_tt, "C", 1, "b", 1)
    assert (e.path, e.att) == ((1,), (2, 1))
    assert lookup(ex_tt, "D", 1, "a", 1) is None
    e = lookup(ex_tt, "B", 1, "a", 1)
    assert (e.path, e.att) == ((), (1, 3))


def test_example_succ(ex_tt):
    assert succ(ex_tt, "S", 1, "a", 1, 2) == 1
    assert succ(ex_tt, "D", 1, "b", 1, 1) == 1
    assert succ(ex_tt, "D", 1, "b", 1, 2) == 3
    with pytest.raises(AbsentEntry):
        succ(ex_tt, "D", 1, "a", 1, 2)
    with pytest.raises(IndexOutOfRange):
        succ(ex_tt, "D", 1, "b", 1, 3)


def test_example_table_size(ex_tt):
    # every vertex occurrence of every terminal edge of val(A), per A
    assert len(ex_tt) == 28


def test_star3_rejected():
    vg = validate(family_grammar("star", 3))
    with pytest.raises(UniqueLabelViolation) as info:
        precompute_traverse(vg)
    a, x, label, k = info.value.key
    assert (label, k) == ("a", 1)
    assert len(info.value.witnesses) == 2
    v = unique_label_violations(expand(vg))
    assert {(w.label, w.index) for w in v if w.vertex == 1} == {("a", 1)}


def translate(dt, root_path, x):
    # (node, local vertex) of dt(S) to its global id
    node, y = internal_oracle(dt, root_path, x)
    return vertex_of(dt, node, y)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_succ_agrees_with_adjacency(seed):
    vg = validate(random_grammar(seed, max_rules=10, max_vertices=1500))
    tt = precompute_traverse(vg)
    g = expand(vg)
    dt = build_dt(vg, "S")
    for u in dt.paths():
        a = dt.node(u).symbol
        rhs = vg.rhs(a)
        for x in range(1, rhs.n_internal + 1):
            gx = vertex_of(dt, u, x)
            for label, r in vg.terminals.items():
                for k in range(1, r + 1):
                    entry = tt.lookup(a, x, label, k)
                    for l in range(1, r + 1):
                        expected = adjacency_step(g, gx, label, k, l)
                        if entry is None:
                            assert expected == []
                        else:
                            assert expected == [translate(dt, u + entry.path, entry.att[l - 1])]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_inheritance_soundness(seed):
    vg = validate(random_grammar(seed, max_rules=12))
    tt = precompute_traverse(vg)
    for (a, x, label, k), entry in tt.entries.items():
        assert len(entry.att) == vg.rank(label)
        if not entry.path:
            assert entry.att[k - 1] == x
            continue
        i = entry.path[0]
        e = vg.children(a)[i - 1]
        assert x in e.att
        j = e.att.index(x) + 1
        h = vg.rhs(e.label)
        sub = tt.lookup(e.label, h.n_internal + j, label, k)
        assert sub is not None and sub.path == entry.path[1:] and sub.att == entry.att


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_detection_matches_expansion(seed):
    vg = validate(random_grammar(seed, max_rules=6, unique=seed % 3 == 0, max_vertices=500))
    violated = bool(unique_label_violations(expand(vg)))
    try:
        precompute_traverse(vg)
        detected = False
    except UniqueLabelViolation:
        detected = True
    assert detected == violated
