"""Constant-delay traversal over a tableau store."""

from __future__ import annotations

from .errors import IndexOutOfRange, NoSuchEdge, UnknownSymbol, VertexOutOfRange
from .tableau import ISOLATED, CellRef, LinkStats, TableauStore, concat, find_vertex


class _Overlay:
    # per-cursor copies of tableaux, keeping the store's ids
    def __init__(self, store: TableauStore):
        self.store = store
        self.clones = {}

    def __getitem__(self, tid):
        t = self.clones.get(tid)
        return t if t is not None else self.store[tid]

    def writable(self, tid):
        if tid not in self.clones:
            self.clones[tid] = self.store[tid].clone()
        return self.clones[tid]


class Cursor:
    """Traversal state ``(ctab, pos, cnode)``.

    ``stats`` accumulates link operations; ``last_step_ops`` and
    ``max_step_ops`` give the per-step figures.
    """

    def __init__(self, store: TableauStore, x: int):
        vg = store.vg
        s = vg.start_symbol
        if not 1 <= x <= vg.rhs(s).n_vertices:
            raise VertexOutOfRange(f"start vertex {x} not in the start graph")
        self.closed = False
        store.acquire(self)
        self.store = store
        self.vg = vg
        self.tt = store.tt
        self._overlay = _Overlay(store) if store.mode == ISOLATED else None
        self.ctab = store.empty_id(s)
        self.pos = 1
        self.cnode = x
        self.steps = 0
        self.stats = LinkStats()
        self.last_step_ops = 0
        self.max_step_ops = 0

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def close(self) -> None:
        if not self.closed:
            self.closed = True
            self.store.release(self)

    @property
    def arena(self):
        return self._overlay if self._overlay is not None else self.store

    @property
    def nonterminal(self) -> str:
        return self.arena[self.ctab].nt[self.pos - 1]

    @property
    def current_vertex_id(self) -> int:
        t = self.arena[self.ctab]
        return t.first[self.pos - 1] + t.off + self.cnode

    def decomposition(self) -> tuple[int, int, int]:
        """``(first(pos), off, cnode)`` of the current position."""
        t = self.arena[self.ctab]
        return t.first[self.pos - 1], t.off, self.cnode

    def moves(self) -> list[tuple[str, int, int]]:
        return self.tt.moves(self.nonterminal, self.cnode)

    def step(self, label: str, k: int, l: int) -> int:
        vg = self.vg
        if not vg.is_terminal(label):
            raise UnknownSymbol(f"{label!r} is not a terminal")
        r = vg.rank(label)
        if not (1 <= k <= r and 1 <= l <= r):
            raise IndexOutOfRange(f"indices ({k}, {l}) outside [1, {r}] for {label}")
        a, x = self.nonterminal, self.cnode
        entry = self.tt.lookup(a, x, label, k)
        if entry is None:
            raise NoSuchEdge(f"no {label}-edge with index {k} at vertex {self.current_vertex_id}")
        # nothing below can fail, so the cursor is only changed on success
        before = self.stats.ops
        arena = self.arena
        tid = self.store.key_map[(a, x, label, k)]
        if not self.store.is_empty(tid):
            t2 = arena.writable(tid) if self._overlay is not None else arena[tid]
            concat(arena, t2, arena[self.ctab], self.pos, self.stats)
            self.ctab, self.pos = tid, t2.rows
        y = entry.att[l - 1]
        g = vg.rhs(arena[self.ctab].nt[self.pos - 1])
        if g.is_external(y):
            c = find_vertex(arena, CellRef(self.ctab, self.pos, y - g.n_internal), self.stats)
            self.ctab, self.pos = c.tid, c.row
            y = arena[c.tid].vertex(c.row, c.col)
        self.cnode = y
        self.steps += 1
        self.last_step_ops = self.stats.ops - before
        self.max_step_ops = max(self.max_step_ops, self.last_step_ops)
        return self.current_vertex_id


def start(store: TableauStore, x: int) -> Cursor:
    return Cursor(store, x)


def step(cur: Cursor, label: str, k: int, l: int) -> int:
    return cur.step(label, k, l)


def current_vertex_id(cur: Cursor) -> int:
    return cur.current_vertex_id
