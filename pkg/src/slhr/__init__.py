"""Straight-line hyperedge replacement grammars with constant-delay traversal."""

from .cursor import Cursor, start, step
from .derivation import (
    DerivationTree,
    GraphOracle,
    NaiveCursor,
    build_dt,
    expand,
    first_of,
    inodes,
    internal_oracle,
    naive_start,
    naive_step,
    oracle_step,
    vertex_of,
)
from .errors import *  # noqa: F401,F403
from .families import family_grammar, gen_family, random_grammar
from .grammar import Grammar, GrammarStats, ValidatedGrammar, nt_edge_order, validate
from .hypergraph import Hyperedge, Hypergraph, make_graph, replace_edge, unique_label_violations
from .tableau import (
    CellRef,
    Tableau,
    TableauStore,
    concat,
    create_tableau,
    empty_tableau,
    find_vertex,
    precompute_store,
)
from .textio import parse_graph, parse_grammar, parse_script, serialize_grammar, serialize_graph
from .traverse_table import TraverseEntry, TraverseTable, precompute_traverse

__version__ = "0.1.0"
