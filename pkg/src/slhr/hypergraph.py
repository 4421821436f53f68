"""Edge-labelled directed hypergraphs and hyperedge replacement.

Vertices are the integers ``1..n_vertices``; ``0`` is never a vertex. Edges are
identified by their position in ``Hypergraph.edges``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DuplicateAttachment,
    DuplicateExternal,
    EmptyAttachment,
    NonCanonicalReplacement,
    RankMismatch,
    VertexOutOfRange,
)


@dataclass(frozen=True)
class Hyperedge:
    label: str
    att: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.att)


@dataclass(frozen=True)
class Hypergraph:
    """A hypergraph ``(V=[n_vertices], E, att, lab, ext)``.

    The constructor enforces the structural invariants: attachments are
    non-empty, in range and repetition-free, and ``ext`` lists distinct
    vertices. Canonicity (externals are the last ``k`` vertices) is only a
    predicate, see :attr:`is_canonical`.
    """

    n_vertices: int
    ext: tuple[int, ...]
    edges: tuple[Hyperedge, ...]

    def __post_init__(self):
        n = self.n_vertices
        if n < 1:
            raise VertexOutOfRange(f"a graph needs at least one vertex, got {n}")
        if len(set(self.ext)) != len(self.ext):
            raise DuplicateExternal(f"external list {self.ext} repeats a vertex")
        for v in self.ext:
            if not 1 <= v <= n:
                raise VertexOutOfRange(f"external vertex {v} not in [1, {n}]")
        for i, e in enumerate(self.edges):
            if not e.att:
                raise EmptyAttachment(f"edge {i} ({e.label}) has no attached vertices")
            if len(set(e.att)) != len(e.att):
                raise DuplicateAttachment(f"edge {i} ({e.label}) attaches {e.att}")
            for v in e.att:
                if not 1 <= v <= n:
                    raise VertexOutOfRange(
                        f"edge {i} ({e.label}) attaches vertex {v} not in [1, {n}]"
                    )

    @property
    def rank(self) -> int:
        return len(self.ext)

    @property
    def n_internal(self) -> int:
        return self.n_vertices - len(self.ext)

    @property
    def is_canonical(self) -> bool:
        n, k = self.n_vertices, len(self.ext)
        return self.ext == tuple(range(n - k + 1, n + 1))

    def is_external(self, x: int) -> bool:
        # only meaningful for canonical graphs
        return x > self.n_vertices - len(self.ext)


def make_graph(n: int, ext: Sequence[int], edges: Iterable) -> Hypergraph:
    """Build a validated graph; edges may be ``Hyperedge`` or ``(label, att)`` pairs."""
    built = []
    for e in edges:
        if not isinstance(e, Hyperedge):
            label, att = e
            e = Hyperedge(label, tuple(att))
        built.append(e)
    return Hypergraph(n, tuple(ext), tuple(built))


class Violation(NamedTuple):
    vertex: int
    label: str
    index: int
    edges: tuple[int, int]


def unique_label_violations(g: Hypergraph) -> list[Violation]:
    """All pairs of edges sharing label and the vertex at some attachment index."""
    seen: dict[tuple[int, str, int], list[int]] = defaultdict(list)
    for ei, e in enumerate(g.edges):
        for k, x in enumerate(e.att, start=1):
            seen[(x, e.label, k)].append(ei)
    out = []
    for (x, label, k), idx in sorted(seen.items()):
        for pair in combinations(idx, 2):
            out.append(Violation(x, label, k, pair))
    return out


def replace_edge(g: Hypergraph, e: int, h: Hypergraph) -> Hypergraph:
    """Return ``g[e/h]`` with the arithmetic renaming.

    The i-th external vertex of ``h`` is identified with ``att(e)[i]`` and
    every internal vertex ``x`` of ``h`` becomes ``n_g + x``. The edges of
    ``g`` other than ``e`` keep their order; copies of ``h``'s edges follow.
    """
    if not h.is_canonical:
        raise NonCanonicalReplacement("replacement graph must have its externals last")
    edge = g.edges[e]
    if edge.rank != h.rank:
        raise RankMismatch(f"edge {e} has rank {edge.rank}, replacement has rank {h.rank}")
    n = g.n_vertices
    n_int = h.n_internal

    def rho(x: int) -> int:
        if x > n_int:
            return edge.att[x - n_int - 1]
        return n + x

    kept = g.edges[:e] + g.edges[e + 1:]
    added = tuple(Hyperedge(f.label, tuple(rho(x) for x in f.att)) for f in h.edges)
    return Hypergraph(n + n_int, g.ext, kept + added)
