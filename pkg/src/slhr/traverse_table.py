"""Bottom-up precomputation of the traverse and succ mappings.

For a nonterminal ``A``, a vertex ``x`` of ``rhs(A)``, a terminal ``σ`` and an
attachment index ``k``, the entry locates the unique ``σ``-edge of ``val(A)``
whose ``k``-th attachment is the vertex represented by ``x``: the Dewey path of
the derivation-tree node holding it (relative to ``dt(A)``) and the edge's
attachment inside that node's right-hand side.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .errors import AbsentEntry, IndexOutOfRange, UniqueLabelViolation
from .grammar import ValidatedGrammar

Key = tuple  # (nonterminal, vertex, label, index)


@dataclass(frozen=True)
class TraverseEntry:
    path: tuple[int, ...]
    att: tuple[int, ...]
    witness: str = ""

    def succ(self, l: int) -> int:
        if not 1 <= l <= len(self.att):
            raise IndexOutOfRange(f"index {l} outside [1, {len(self.att)}]")
        return self.att[l - 1]


class TraverseTable:
    def __init__(self, vg: ValidatedGrammar, entries: dict[Key, TraverseEntry], slots: int):
        self.vg = vg
        self.entries = entries
        # number of candidate slots written during the pass (work counter)
        self.slots = slots
        self._by_vertex: dict[tuple[str, int], list[tuple[str, int]]] = defaultdict(list)
        for a, x, label, k in sorted(entries, key=lambda key: (key[0], key[1], key[2], key[3])):
            self._by_vertex[(a, x)].append((label, k))

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, a: str, x: int, label: str, k: int) -> TraverseEntry | None:
        return self.entries.get((a, x, label, k))

    def succ(self, a: str, x: int, label: str, k: int, l: int) -> int:
        entry = self.entries.get((a, x, label, k))
        if entry is None:
            raise AbsentEntry(f"no {label}-edge at index {k} from vertex {x} of {a}")
        return entry.succ(l)

    def moves(self, a: str, x: int) -> list[tuple[str, int, int]]:
        """Defined ``(label, k, l)`` steps from ``(a, x)`` with ``l != k``, sorted."""
        out = []
        for label, k in self._by_vertex.get((a, x), ()):
            for l in range(1, self.vg.rank(label) + 1):
                if l != k:
                    out.append((label, k, l))
        return out


def lookup(t: TraverseTable, a, x, label, k) -> TraverseEntry | None:
    return t.lookup(a, x, label, k)


def succ(t: TraverseTable, a, x, label, k, l) -> int:
    return t.succ(a, x, label, k, l)


def precompute_traverse(vg: ValidatedGrammar) -> TraverseTable:
    """One pass over the rules in reverse nonterminal order.

    A key receives a candidate from every terminal edge of ``rhs(A)`` attached
    at index ``k`` to ``x`` and from every nonterminal edge attached to ``x``
    whose right-hand side has an entry at the corresponding external vertex.
    Two candidates for one key mean the represented graph is not
    unique-labelled, and :class:`UniqueLabelViolation` is raised.
    """
    entries: dict[Key, TraverseEntry] = {}
    # per nonterminal: vertex -> [(label, k, entry)]
    at_vertex: dict[str, dict[int, list]] = {}
    slots = 0
    for a in vg.topo:
        g = vg.rhs(a)
        local: dict[tuple[int, str, int], TraverseEntry] = {}

        def put(x, label, k, entry):
            key = (x, label, k)
            if key in local:
                raise UniqueLabelViolation((a, x, label, k), (local[key].witness, entry.witness))
            local[key] = entry

        for ei, e in enumerate(g.edges):
            if vg.is_terminal(e.label):
                for k, x in enumerate(e.att, start=1):
                    slots += 1
                    put(x, e.label, k, TraverseEntry((), e.att, f"edge {ei} {e.label}{e.att} of {a}"))
        for child, ei in enumerate(vg.nt_edges(a), start=1):
            e = g.edges[ei]
            sub = at_vertex[e.label]
            h = vg.rhs(e.label)
            n_int = h.n_internal
            for j, x in enumerate(e.att, start=1):
                for label, k, entry in sub.get(n_int + j, ()):
                    slots += 1
                    put(
                        x,
                        label,
                        k,
                        TraverseEntry(
                            (child,) + entry.path,
                            entry.att,
                            f"child {child} ({e.label}{e.att}) of {a}",
                        ),
                    )
        per_vertex: dict[int, list] = defaultdict(list)
        for (x, label, k), entry in local.items():
            entries[(a, x, label, k)] = entry
            per_vertex[x].append((label, k, entry))
        at_vertex[a] = per_vertex
    return TraverseTable(vg, entries, slots)
