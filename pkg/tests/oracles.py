"""Independent reference implementations used only by the tests."""

from slhr.grammar import nt_edge_order
from slhr.hypergraph import replace_edge

# the graph of the running example, in the order literal replacement yields
EXAMPLE_EDGES = [
    ("a", (3, 5)), ("a", (5, 2)), ("a", (1, 6)), ("a", (6, 3)), ("b", (6, 7)),
    ("b", (7, 4)), ("b", (4, 6)), ("a", (8, 10)), ("a", (10, 1)), ("a", (2, 11)),
    ("a", (11, 8)), ("b", (11, 12)), ("b", (12, 9)), ("b", (9, 11)),
]


def literal_expand(vg):
    """Expand by calling replace_edge once per derivation step.

    Each pending nonterminal edge carries its Dewey address; the edge with the
    smallest address is replaced next, which is a preorder walk of dt(S).
    """
    g = vg.rhs(vg.start_symbol)
    tags = [None] * len(g.edges)
    for i, ei in enumerate(nt_edge_order(g, vg), start=1):
        tags[ei] = (i,)
    while any(t is not None for t in tags):
        e = min((t, i) for i, t in enumerate(tags) if t is not None)[1]
        address = tags[e]
        h = vg.rhs(g.edges[e].label)
        g = replace_edge(g, e, h)
        new_tags = [None] * len(h.edges)
        for i, hi in enumerate(nt_edge_order(h, vg), start=1):
            new_tags[hi] = address + (i,)
        tags = tags[:e] + tags[e + 1:] + new_tags
    return g


def adjacency_step(g, x, label, k, l):
    hits = [e for e in g.edges if e.label == label and e.att[k - 1] == x]
    return [e.att[l - 1] for e in hits]
