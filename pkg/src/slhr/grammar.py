"""Straight-line HR grammars: representation, validation and derivation order."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Mapping

from .errors import (
    ArityMismatch,
    CyclicGrammar,
    DuplicateRule,
    GrammarError,
    MissingRule,
    RankMismatch,
    UnknownSymbol,
    UnreachableNonterminal,
)
from .hypergraph import Hyperedge, Hypergraph

log = logging.getLogger(__name__)

START = "S"


@dataclass(frozen=True)
class Grammar:
    """Unvalidated grammar.

    ``nonterminals`` is kept in declaration order, which is the fixed order on
    nonterminals used to break ties in the derivation order. ``rules`` is a
    sequence of ``(lhs, rhs)`` pairs so that duplicates can be reported.
    """

    terminals: tuple[tuple[str, int], ...]
    nonterminals: tuple[tuple[str, int], ...]
    start: Hypergraph
    rules: tuple[tuple[str, Hypergraph], ...]
    start_symbol: str = START

    @classmethod
    def build(
        cls,
        terminals: Mapping[str, int] | Iterable[tuple[str, int]],
        nonterminals: Mapping[str, int] | Iterable[tuple[str, int]],
        start: Hypergraph,
        rules: Mapping[str, Hypergraph] | Iterable[tuple[str, Hypergraph]],
        start_symbol: str = START,
    ) -> "Grammar":
        def pairs(x):
            return tuple(x.items()) if isinstance(x, Mapping) else tuple(x)

        return cls(pairs(terminals), pairs(nonterminals), start, pairs(rules), start_symbol)


@dataclass(frozen=True)
class GrammarStats:
    kappa: int  # max nonterminal rank
    height: int  # longest path in the nonterminal DAG
    r: int  # max rank of a terminal edge occurring in the grammar
    max_vertex: int  # largest right-hand side vertex count
    size: int  # sum over right-hand sides of |V| + total attachment length
    n_rules: int


class ValidatedGrammar:
    """A grammar that passed :func:`validate`, with lookup tables.

    ``topo`` lists the nonterminals and then the start symbol so that every
    rule comes after all rules it references.
    """

    def __init__(self, grammar: Grammar, topo, stats: GrammarStats, warnings):
        self.grammar = grammar
        self.topo: tuple[str, ...] = tuple(topo)
        self.stats = stats
        self.warnings: tuple[str, ...] = tuple(warnings)
        self.start_symbol = grammar.start_symbol
        self.terminals: dict[str, int] = dict(grammar.terminals)
        self.nonterminals: dict[str, int] = dict(grammar.nonterminals)
        self.nt_pos = {a: i for i, (a, _) in enumerate(grammar.nonterminals)}
        self._rhs: dict[str, Hypergraph] = dict(grammar.rules)
        self._rhs[self.start_symbol] = grammar.start
        self._nt_order = {a: tuple(nt_edge_order(g, self)) for a, g in self._rhs.items()}
        # scratch space for derived per-grammar tables (i-nodes, offsets, ...)
        self.cache: dict = {}

    @property
    def kappa(self) -> int:
        return self.stats.kappa

    def rhs(self, a: str) -> Hypergraph:
        return self._rhs[a]

    def rank(self, sym: str) -> int:
        if sym in self.terminals:
            return self.terminals[sym]
        if sym == self.start_symbol:
            return 0
        return self.nonterminals[sym]

    def is_terminal(self, sym: str) -> bool:
        return sym in self.terminals

    def nt_edges(self, a: str) -> tuple[int, ...]:
        """Indices of the nonterminal edges of ``rhs(a)`` in derivation order."""
        return self._nt_order[a]

    def children(self, a: str) -> tuple[Hyperedge, ...]:
        g = self._rhs[a]
        return tuple(g.edges[i] for i in self._nt_order[a])

    def symbols(self) -> tuple[str, ...]:
        """Start symbol followed by the nonterminals in declaration order."""
        return (self.start_symbol,) + tuple(self.nonterminals)


def nt_edge_order(g: Hypergraph, vg) -> list[int]:
    """Nonterminal edge indices of ``g`` sorted by the derivation order.

    Sort key: attachment (lexicographic), then the label's declaration
    position, then the edge's own position in ``g``.
    """
    pos = vg.nt_pos
    idx = [i for i, e in enumerate(g.edges) if e.label in pos]
    return sorted(idx, key=lambda i: (g.edges[i].att, pos[g.edges[i].label], i))


def _check_graph(name: str, g: Hypergraph, ranks: Mapping[str, int]):
    if not g.is_canonical:
        raise GrammarError(f"right-hand side of {name} is not canonical (ext={g.ext})")
    for e in g.edges:
        if e.label not in ranks:
            raise UnknownSymbol(f"undeclared label {e.label!r} in {name}")
        if ranks[e.label] != e.rank:
            raise ArityMismatch(
                f"label {e.label!r} has rank {ranks[e.label]}, edge in {name} attaches {e.rank}"
            )


def validate(grammar: Grammar, strict: bool = True) -> ValidatedGrammar:
    """Check the straight-line conditions and compute order and statistics.

    In strict mode every nonterminal must be reachable from the start graph;
    otherwise unreachable nonterminals are only reported in ``warnings``.
    """
    s = grammar.start_symbol
    terms = dict(grammar.terminals)
    nts = dict(grammar.nonterminals)
    if len(terms) != len(grammar.terminals) or len(nts) != len(grammar.nonterminals):
        raise GrammarError("a symbol is declared twice")
    clash = set(terms) & set(nts)
    if clash:
        raise GrammarError(f"symbols declared both terminal and nonterminal: {sorted(clash)}")
    if s in terms or s in nts:
        raise GrammarError(f"start symbol {s!r} must not be declared")
    ranks = {**terms, **nts}

    rules: dict[str, Hypergraph] = {}
    for a, g in grammar.rules:
        if a not in nts:
            raise UnknownSymbol(f"rule for undeclared nonterminal {a!r}")
        if a in rules:
            raise DuplicateRule(f"two rules for {a}")
        rules[a] = g
    for a in nts:
        if a not in rules:
            raise MissingRule(f"no rule for nonterminal {a}")

    if grammar.start.rank != 0:
        raise RankMismatch(f"start graph has rank {grammar.start.rank}, expected 0")
    _check_graph(s, grammar.start, ranks)
    for a, g in rules.items():
        if g.rank != nts[a]:
            raise RankMismatch(f"{a} has rank {nts[a]} but its right-hand side has rank {g.rank}")
        _check_graph(a, g, ranks)

    graphs = {s: grammar.start, **rules}
    refs = {a: [e.label for e in g.edges if e.label in nts] for a, g in graphs.items()}
    ts = TopologicalSorter()
    for a in (s, *nts):
        ts.add(a, *dict.fromkeys(refs[a]))
    try:
        order = list(ts.static_order())
    except CycleError as exc:
        raise CyclicGrammar(f"nonterminal cycle {' -> '.join(exc.args[1])}") from None

    reach = {s}
    stack = [s]
    while stack:
        for b in refs[stack.pop()]:
            if b not in reach:
                reach.add(b)
                stack.append(b)
    unreachable = [a for a in nts if a not in reach]
    warnings = []
    if unreachable:
        msg = f"nonterminals unreachable from {s}: {', '.join(unreachable)}"
        if strict:
            raise UnreachableNonterminal(msg)
        log.warning(msg)
        warnings.append(msg)

    height: dict[str, int] = {}
    for a in order:
        height[a] = 1 + max((height[b] for b in refs[a]), default=-1)
    term_ranks = [e.rank for g in graphs.values() for e in g.edges if e.label in terms]
    stats = GrammarStats(
        kappa=max(nts.values(), default=0),
        height=max(height.values()),
        r=max(term_ranks, default=0),
        max_vertex=max(g.n_vertices for g in graphs.values()),
        size=sum(g.n_vertices + sum(e.rank for e in g.edges) for g in graphs.values()),
        n_rules=len(rules),
    )
    # keep the start symbol last so reverse-topological passes end at the root
    topo = [a for a in order if a != s] + [s]
    return ValidatedGrammar(grammar, topo, stats, warnings)
