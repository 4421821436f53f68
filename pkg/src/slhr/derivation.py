"""Brute-force oracles over derivation trees, plus the naive O(height) cursor.

Everything here works directly from the definitions: explicit derivation
trees addressed by Dewey paths, full expansion of the represented graph, and
the vertex numbering ``vertex(u, x) = first(u) + x``. These serve as ground
truth for the tableau engine.
"""

from __future__ import annotations

from collections import defaultdict
from typing import NamedTuple

from .errors import (
    BudgetExceeded,
    ExternalVertexQueried,
    IndexOutOfRange,
    InvalidPath,
    NoSuchEdge,
    UndefinedInternal,
    UnknownSymbol,
    VertexOutOfRange,
)
from .grammar import ValidatedGrammar
from .hypergraph import Hyperedge, Hypergraph
from .traverse_table import TraverseTable

MAX_VERTICES = 10**6
MAX_EDGES = 10**7
MAX_DT_NODES = 10**6

NodePath = tuple  # tuple[int, ...], 1-based child indices


def _bottom_up(vg: ValidatedGrammar, name: str, leaf, combine) -> dict[str, int]:
    table = vg.cache.get(name)
    if table is None:
        table = {}
        for a in vg.topo:
            table[a] = leaf(a) + sum(combine(table[e.label]) for e in vg.children(a))
        vg.cache[name] = table
    return table


def inodes_table(vg: ValidatedGrammar) -> dict[str, int]:
    return _bottom_up(vg, "inodes", lambda a: vg.rhs(a).n_internal, lambda v: v)


def inodes(vg: ValidatedGrammar, a: str) -> int:
    """Number of internal vertices of ``val(a)``."""
    return inodes_table(vg)[a]


def child_offsets(vg: ValidatedGrammar, a: str) -> tuple[int, ...]:
    """``first(u.i) - first(u)`` for every child ``i`` of a node labelled ``a``.

    Index 0 is unused so that ``child_offsets(vg, a)[i]`` matches the 1-based
    child index.
    """
    offsets = vg.cache.setdefault("offsets", {})
    if a not in offsets:
        table = inodes_table(vg)
        acc = vg.rhs(a).n_internal
        out = [0]
        for e in vg.children(a):
            out.append(acc)
            acc += table[e.label]
        offsets[a] = tuple(out)
    return offsets[a]


def _terminal_edge_count(vg: ValidatedGrammar) -> dict[str, int]:
    return _bottom_up(
        vg,
        "terminal_edges",
        lambda a: sum(1 for e in vg.rhs(a).edges if vg.is_terminal(e.label)),
        lambda v: v,
    )


def dt_size(vg: ValidatedGrammar, a: str) -> int:
    return _bottom_up(vg, "dt_size", lambda a: 1, lambda v: v)[a]


def expand(vg: ValidatedGrammar, max_vertices: int = MAX_VERTICES, max_edges: int = MAX_EDGES) -> Hypergraph:
    """The represented graph ``val(S)`` with its canonical vertex numbering.

    Nodes are expanded in derivation-tree preorder; each contributes its
    terminal edges in right-hand-side order, which is exactly the edge list
    produced by replacing nonterminal edges one at a time in that order.
    """
    s = vg.start_symbol
    n = inodes(vg, s)
    m = _terminal_edge_count(vg)[s]
    if n > max_vertices:
        raise BudgetExceeded(f"expansion has {n} vertices, budget is {max_vertices}")
    if m > max_edges:
        raise BudgetExceeded(f"expansion has {m} edges, budget is {max_edges}")

    edges: list[Hyperedge] = []
    stack = [(s, 0, ())]
    while stack:
        a, first, outer = stack.pop()
        g = vg.rhs(a)
        n_int = g.n_internal

        def gid(x, first=first, outer=outer, n_int=n_int):
            return first + x if x <= n_int else outer[x - n_int - 1]

        for e in g.edges:
            if vg.is_terminal(e.label):
                edges.append(Hyperedge(e.label, tuple(gid(x) for x in e.att)))
        offs = child_offsets(vg, a)
        kids = vg.children(a)
        for i in range(len(kids), 0, -1):
            e = kids[i - 1]
            stack.append((e.label, first + offs[i], tuple(gid(x) for x in e.att)))
    return Hypergraph(n, (), tuple(edges))


class DTNode(NamedTuple):
    symbol: str
    first: int


class DerivationTree:
    """``dt(root)`` with nodes keyed by Dewey path.

    Nodes are materialised on demand; :func:`build_dt` materialises the whole
    tree under a node budget.
    """

    def __init__(self, vg: ValidatedGrammar, root: str):
        self.vg = vg
        self.root = root
        self._nodes: dict[NodePath, DTNode] = {(): DTNode(root, 0)}

    def node(self, u: NodePath) -> DTNode:
        u = tuple(u)
        found = self._nodes.get(u)
        if found is not None:
            return found
        parent = self.node(u[:-1]) if u else None
        if parent is None:
            raise InvalidPath(f"empty path has no parent")
        i = u[-1]
        kids = self.vg.children(parent.symbol)
        if not 1 <= i <= len(kids):
            raise InvalidPath(f"node {_fmt(u[:-1])} ({parent.symbol}) has no child {i}")
        node = DTNode(kids[i - 1].label, parent.first + child_offsets(self.vg, parent.symbol)[i])
        self._nodes[u] = node
        return node

    def rhs(self, u: NodePath) -> Hypergraph:
        return self.vg.rhs(self.node(u).symbol)

    def materialize(self, max_nodes: int = MAX_DT_NODES) -> None:
        size = dt_size(self.vg, self.root)
        if size > max_nodes:
            raise BudgetExceeded(f"dt({self.root}) has {size} nodes, budget is {max_nodes}")
        stack = [()]
        while stack:
            u = stack.pop()
            sym = self.node(u).symbol
            for i in range(1, len(self.vg.children(sym)) + 1):
                self.node(u + (i,))
                stack.append(u + (i,))

    def paths(self) -> list[NodePath]:
        return sorted(self._nodes)

    def __len__(self) -> int:
        return len(self._nodes)


def _fmt(u: NodePath) -> str:
    return ".".join(map(str, u)) or "ε"


def build_dt(vg: ValidatedGrammar, a: str, max_nodes: int = MAX_DT_NODES) -> DerivationTree:
    dt = DerivationTree(vg, a)
    dt.materialize(max_nodes)
    return dt


def first_of(dt: DerivationTree, u: NodePath) -> int:
    return dt.node(u).first


def vertex_of(dt: DerivationTree, u: NodePath, x: int) -> int:
    g = dt.rhs(u)
    if not 1 <= x <= g.n_vertices:
        raise VertexOutOfRange(f"vertex {x} not in rhs of node {_fmt(tuple(u))}")
    if g.is_external(x):
        raise ExternalVertexQueried(f"vertex {x} is external at node {_fmt(tuple(u))}")
    return dt.node(u).first + x


def internal_oracle(dt: DerivationTree, u: NodePath, x: int) -> tuple[NodePath, int]:
    """Follow external-vertex merges upwards until ``x`` is internal."""
    u = tuple(u)
    while True:
        g = dt.rhs(u)
        if not g.is_external(x):
            return u, x
        j = x - g.n_internal
        if not u:
            raise UndefinedInternal(
                f"external vertex {j} of the root of dt({dt.root}) is never merged", j
            )
        parent = u[:-1]
        e = dt.vg.children(dt.node(parent).symbol)[u[-1] - 1]
        x = e.att[j - 1]
        u = parent


class _Frame(NamedTuple):
    symbol: str
    first: int
    child: int  # index of this node among its parent's children (0 at the root)


class NaiveCursor:
    """Traversal by descending along precomputed paths and popping upwards.

    The cursor keeps the full branch of ``dt(S)`` as an explicit stack. A step
    pushes one frame per node of the traverse path, then pops frames until the
    target vertex is internal, so its cost is bounded by the grammar height.
    ``stack_ops`` counts pushes and pops.
    """

    def __init__(self, vg: ValidatedGrammar, table: TraverseTable, x: int):
        s = vg.start_symbol
        if not 1 <= x <= vg.rhs(s).n_vertices:
            raise VertexOutOfRange(f"start vertex {x} not in the start graph")
        self.vg = vg
        self.table = table
        self.stack = [_Frame(s, 0, 0)]
        self.cnode = x
        self.stack_ops = 0
        self.last_step_ops = 0

    @property
    def position(self) -> tuple[str, int]:
        return self.stack[-1].symbol, self.cnode

    @property
    def current_vertex_id(self) -> int:
        return self.stack[-1].first + self.cnode

    def moves(self) -> list[tuple[str, int, int]]:
        return self.table.moves(*self.position)

    def step(self, label: str, k: int, l: int) -> int:
        vg = self.vg
        if not vg.is_terminal(label):
            raise UnknownSymbol(f"{label!r} is not a terminal")
        r = vg.rank(label)
        if not (1 <= k <= r and 1 <= l <= r):
            raise IndexOutOfRange(f"indices ({k}, {l}) outside [1, {r}] for {label}")
        a, x = self.position
        entry = self.table.lookup(a, x, label, k)
        if entry is None:
            raise NoSuchEdge(f"no {label}-edge with index {k} at vertex {self.current_vertex_id}")
        ops = 0
        stack = self.stack
        for i in entry.path:
            top = stack[-1]
            kid = vg.children(top.symbol)[i - 1]
            stack.append(_Frame(kid.label, top.first + child_offsets(vg, top.symbol)[i], i))
            ops += 1
        y = entry.att[l - 1]
        while True:
            g = vg.rhs(stack[-1].symbol)
            if not g.is_external(y):
                break
            j = y - g.n_internal
            child = stack.pop().child
            ops += 1
            y = vg.children(stack[-1].symbol)[child - 1].att[j - 1]
        self.cnode = y
        self.stack_ops += ops
        self.last_step_ops = ops
        return self.current_vertex_id


def naive_start(vg: ValidatedGrammar, table: TraverseTable, x: int) -> NaiveCursor:
    return NaiveCursor(vg, table, x)


def naive_step(cur: NaiveCursor, label: str, k: int, l: int) -> int:
    return cur.step(label, k, l)


class GraphOracle:
    """Adjacency index over an expanded graph: ``(x, label, k) -> edge``."""

    def __init__(self, g: Hypergraph):
        self.graph = g
        self.index: dict[tuple[int, str, int], Hyperedge] = {}
        self.label_rank: dict[str, int] = {}
        self.at: dict[int, list[tuple[str, int]]] = defaultdict(list)
        for e in g.edges:
            self.label_rank[e.label] = e.rank
            for k, x in enumerate(e.att, start=1):
                self.index.setdefault((x, e.label, k), e)
                self.at[x].append((e.label, k))

    def step(self, x: int, label: str, k: int, l: int) -> int:
        r = self.label_rank.get(label)
        if r is None:
            raise NoSuchEdge(f"no {label}-edge in the graph")
        if not (1 <= k <= r and 1 <= l <= r):
            raise IndexOutOfRange(f"indices ({k}, {l}) outside [1, {r}] for {label}")
        e = self.index.get((x, label, k))
        if e is None:
            raise NoSuchEdge(f"no {label}-edge with index {k} at vertex {x}")
        return e.att[l - 1]

    def moves(self, x: int) -> list[tuple[str, int, int]]:
        out = []
        for label, k in sorted(set(self.at.get(x, ()))):
            for l in range(1, self.label_rank[label] + 1):
                if l != k:
                    out.append((label, k, l))
        return out


def oracle_step(g: Hypergraph, x: int, label: str, k: int, l: int) -> int:
    """Direct scan for the ``label``-edge with ``att[k] == x``; returns ``att[l]``."""
    rank = None
    for e in g.edges:
        if e.label != label:
            continue
        rank = e.rank
        if not (1 <= k <= rank and 1 <= l <= rank):
            raise IndexOutOfRange(f"indices ({k}, {l}) outside [1, {rank}] for {label}")
        if e.att[k - 1] == x:
            return e.att[l - 1]
    raise NoSuchEdge(f"no {label}-edge with index {k} at vertex {x}")
