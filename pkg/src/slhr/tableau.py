"""Tableaux: matrix encodings of derivation-tree branches.

A tableau for a branch ``u_1 .. u_m`` has one row per node and ``kappa``
columns. Column ``j`` of row ``i`` describes external vertex ``j`` of the
rule at ``u_i``: following its link with :func:`find_vertex` lands on the cell
whose ``vtx`` is the internal vertex it is merged with. Links to an earlier
row or another tableau are upward; links to a later row of the same tableau
are downward and always end at an upward link, so resolution takes at most
two hops.

Rows and columns are 1-based in the public API.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import NamedTuple

from .derivation import build_dt, child_offsets, internal_oracle
from .errors import AbsentLink, InvalidPath, NtMismatch, StoreBusy, UndefinedInternal
from .grammar import ValidatedGrammar
from .traverse_table import TraverseTable

MUTATING = "mutating"
ISOLATED = "isolated"


class CellRef(NamedTuple):
    tid: int
    row: int
    col: int

    def __str__(self) -> str:
        return f"t{self.tid}[{self.row},{self.col}]"


@dataclass
class LinkStats:
    """Instrumentation for link traffic: one op per nxt read and per nxt write."""

    reads: int = 0
    writes: int = 0
    finds: int = 0
    max_hops: int = 0

    @property
    def ops(self) -> int:
        return self.reads + self.writes


class Tableau:
    def __init__(self, tid: int, kappa: int, root: str):
        self.tid = tid
        self.kappa = kappa
        self.nxt: list[list[CellRef | None]] = []
        self.vtx: list[list[int]] = []
        self.nt: list[str] = [root]
        self.first: list[int] = [0]
        self.off = 0
        self.key: tuple[str, tuple[int, ...]] = (root, ())

    @property
    def rows(self) -> int:
        return len(self.nt)

    def link(self, row: int, col: int) -> CellRef | None:
        return self.nxt[row - 1][col - 1]

    def set_link(self, row: int, col: int, ref: CellRef | None) -> None:
        self.nxt[row - 1][col - 1] = ref

    def vertex(self, row: int, col: int) -> int:
        return self.vtx[row - 1][col - 1]

    def n_cells(self) -> int:
        return self.rows * self.kappa

    def clone(self) -> "Tableau":
        t = Tableau(self.tid, self.kappa, self.nt[0])
        t.nxt = [list(r) for r in self.nxt]
        t.vtx = [list(r) for r in self.vtx]
        t.nt = list(self.nt)
        t.first = list(self.first)
        t.off = self.off
        t.key = self.key
        return t

    def dump(self) -> list[str]:
        out = []
        for i in range(1, self.rows + 1):
            for j in range(1, self.kappa + 1):
                ref = self.link(i, j)
                out.append(f"t{self.tid}[{i},{j}] nxt={ref or 0} vtx={self.vertex(i, j)}")
        return out

    def __repr__(self) -> str:
        return f"Tableau(t{self.tid}, nt={self.nt}, first={self.first}, off={self.off})"


def is_downward(src: CellRef, dst: CellRef) -> bool:
    return src.tid == dst.tid and dst.row > src.row


def empty_tableau(vg: ValidatedGrammar, a: str, tid: int = 0) -> Tableau:
    t = Tableau(tid, vg.kappa, a)
    rank = vg.rank(a)
    t.nxt.append([CellRef(tid, 1, j) if j <= rank else None for j in range(1, vg.kappa + 1)])
    t.vtx.append([0] * vg.kappa)
    return t


def create_tableau(vg: ValidatedGrammar, a: str, path, tid: int = 0, counter: list | None = None) -> Tableau:
    """Build the tableau of the branch from the root of ``dt(a)`` along ``path``.

    ``counter``, if given, is a one-element list accumulating cell operations
    (writes plus the cells scanned while looking for links to redirect).
    """
    t = empty_tableau(vg, a, tid)
    kappa = vg.kappa
    ops = kappa
    for l in path:
        m = t.rows
        b = t.nt[m - 1]
        kids = vg.children(b)
        if not 1 <= l <= len(kids):
            raise InvalidPath(f"{b} has no child {l} (path {tuple(path)} in dt({a}))")
        e = kids[l - 1]
        n_int = vg.rhs(b).n_internal
        n = m + 1
        t.nxt.append([None] * kappa)
        t.vtx.append([0] * kappa)
        ops += kappa
        for j, x in enumerate(e.att, start=1):
            if x <= n_int:
                t.set_link(n, j, CellRef(tid, m, j))
                t.vtx[m - 1][j - 1] = x
                ops += 2
                continue
            jp = x - n_int
            target = CellRef(tid, m, jp)
            # cells in earlier rows that currently point at the boundary cell
            redirect = [
                (r, c)
                for r in range(1, m)
                for c in range(1, kappa + 1)
                if t.nxt[r - 1][c - 1] == target
            ]
            ops += (m - 1) * kappa
            new = CellRef(tid, n, j)
            t.set_link(n, j, t.link(m, jp))
            t.set_link(m, jp, new)
            for r, c in redirect:
                t.set_link(r, c, new)
            ops += 2 + len(redirect)
        t.nt.append(e.label)
        t.first.append(t.first[m - 1] + child_offsets(vg, b)[l])
    t.key = (a, tuple(path))
    if counter is not None:
        counter[0] += ops
    return t


def find_vertex(arena, ref: CellRef, stats: LinkStats | None = None) -> CellRef:
    """Resolve a cell to the cell holding its merged vertex (at most two hops)."""
    nxt = arena[ref.tid].link(ref.row, ref.col)
    if nxt is None:
        raise AbsentLink(f"cell {ref} has no link")
    hops = 1
    if is_downward(ref, nxt):
        second = arena[nxt.tid].link(nxt.row, nxt.col)
        if second is None or is_downward(nxt, second):
            raise AssertionError(f"downward link {ref} -> {nxt} does not end at an upward link")
        nxt = second
        hops = 2
    if stats is not None:
        stats.reads += hops
        stats.finds += 1
        stats.max_hops = max(stats.max_hops, hops)
    return nxt


def concat(arena, t2: Tableau, t1: Tableau, i: int, stats: LinkStats | None = None) -> None:
    """Attach ``t2`` below row ``i`` of ``t1``; only ``t2`` is modified."""
    b = t2.nt[0]
    if not 1 <= i <= t1.rows or t1.nt[i - 1] != b:
        found = t1.nt[i - 1] if 1 <= i <= t1.rows else None
        raise NtMismatch(f"cannot attach tableau rooted at {b} to row {i} labelled {found}")
    rank = sum(1 for j in range(1, t2.kappa + 1) if t2.link(1, j) is not None)
    for j in range(1, rank + 1):
        c = CellRef(t2.tid, 1, j)
        n = t2.link(1, j)
        if is_downward(c, n):
            c = n
        target = find_vertex(arena, CellRef(t1.tid, i, j), stats)
        t2.set_link(c.row, c.col, target)
        if stats is not None:
            stats.reads += 1
            stats.writes += 1
    t2.off = t1.off + t1.first[i - 1]


class TableauStore:
    """All precomputed tableaux of a grammar, addressed by traverse key.

    In ``mutating`` mode one cursor at a time owns the store and attaching
    rewrites the stored tableaux in place. In ``isolated`` mode cursors clone a
    tableau before its first attachment and never touch the store.
    """

    def __init__(self, vg: ValidatedGrammar, tt: TraverseTable, mode: str = MUTATING):
        if mode not in (MUTATING, ISOLATED):
            raise ValueError(f"unknown store mode {mode!r}")
        self.vg = vg
        self.tt = tt
        self.mode = mode
        self.tableaux: list[Tableau] = []
        self.empty: dict[str, int] = {}
        self.by_path: dict[tuple[str, tuple[int, ...]], int] = {}
        self.key_map: dict[tuple, int] = {}
        self.build_ops = 0
        self.stats = LinkStats()
        self._owner = None

    def __getitem__(self, tid: int) -> Tableau:
        return self.tableaux[tid]

    def __len__(self) -> int:
        return len(self.tableaux)

    def _add(self, build) -> int:
        tid = len(self.tableaux)
        self.tableaux.append(build(tid))
        return tid

    def empty_id(self, a: str) -> int:
        if a not in self.empty:
            self.empty[a] = self._add(lambda tid: empty_tableau(self.vg, a, tid))
            self.build_ops += self.vg.kappa
        return self.empty[a]

    def tableau_id(self, a: str, path) -> int:
        path = tuple(path)
        if not path:
            return self.empty_id(a)
        key = (a, path)
        if key not in self.by_path:
            counter = [0]
            self.by_path[key] = self._add(
                lambda tid: create_tableau(self.vg, a, path, tid, counter)
            )
            self.build_ops += counter[0]
        return self.by_path[key]

    def lookup(self, a: str, x: int, label: str, k: int) -> int | None:
        return self.key_map.get((a, x, label, k))

    def total_cells(self) -> int:
        return sum(t.n_cells() for t in self.tableaux)

    def is_empty(self, tid: int) -> bool:
        return self.tableaux[tid].rows == 1

    def dump(self) -> str:
        return "\n".join(line for t in self.tableaux for line in t.dump())

    # ownership for mutating mode
    def acquire(self, cursor) -> None:
        if self.mode != MUTATING:
            return
        owner = self._owner() if self._owner is not None else None
        if owner is not None and owner is not cursor and not owner.closed:
            raise StoreBusy("store in mutating mode is already held by another cursor")
        self._owner = weakref.ref(cursor)

    def release(self, cursor) -> None:
        if self._owner is not None and self._owner() is cursor:
            self._owner = None


def precompute_store(vg: ValidatedGrammar, tt: TraverseTable, mode: str = MUTATING) -> TableauStore:
    store = TableauStore(vg, tt, mode)
    store.empty_id(vg.start_symbol)
    for key in sorted(tt.entries, key=lambda k: (k[0], k[1], k[2], k[3])):
        a = key[0]
        store.key_map[key] = store.tableau_id(a, tt.entries[key].path)
    return store


class Mismatch(NamedTuple):
    tid: int
    row: int
    col: int
    expected: object
    found: object


def conformance_violations(store: TableauStore, max_nodes: int = 10**6) -> list[Mismatch]:
    """Compare every boundary resolution of every stored tableau with the oracle.

    For row ``i`` and external column ``j`` of a tableau built for ``(A, path)``
    the oracle is ``internal_oracle(dt(A), path[:i-1], ext_j)``. A defined
    result ``(u, y)`` must resolve to row ``len(u)+1`` with ``vtx == y``; an
    undefined one (chain leaves the root through external ``j0``) must resolve
    to the root row cell in column ``j0``. Only freshly built tableaux are
    meaningful here, since attaching rewires boundary links.
    """
    vg = store.vg
    out = []
    trees = {}
    for t in store.tableaux:
        a, path = t.key
        if a not in trees:
            trees[a] = build_dt(vg, a, max_nodes)
        dt = trees[a]
        for i in range(1, t.rows + 1):
            b = t.nt[i - 1]
            g = vg.rhs(b)
            u = path[: i - 1]
            for j in range(1, vg.rank(b) + 1):
                got = find_vertex(store, CellRef(t.tid, i, j), store.stats)
                try:
                    node, y = internal_oracle(dt, u, g.n_internal + j)
                    expected = (t.tid, len(node) + 1, y)
                    found = (got.tid, got.row, store[got.tid].vertex(got.row, got.col))
                except UndefinedInternal as exc:
                    expected = (t.tid, 1, ("column", exc.root_column))
                    found = (got.tid, got.row, ("column", got.col))
                if expected != found:
                    out.append(Mismatch(t.tid, i, j, expected, found))
    return out
