"""Uniform engine wrappers and walk generators used by tests and ``bench``."""

from __future__ import annotations

import random
from typing import Sequence

from .cursor import Cursor
from .derivation import GraphOracle, NaiveCursor
from .grammar import ValidatedGrammar
from .hypergraph import Hypergraph
from .tableau import TableauStore
from .traverse_table import TraverseTable

ENGINES = ("tableau", "naive", "oracle")

Op = tuple  # ("start", x) or ("step", label, k, l)


class TableauEngine:
    name = "tableau"

    def __init__(self, store: TableauStore):
        self.store = store
        self.cur: Cursor | None = None
        self.ops = 0
        self.max_ops = 0
        self.max_hops = 0

    def start(self, x: int) -> int:
        if self.cur is not None:
            self.cur.close()
        self.cur = Cursor(self.store, x)
        return self.cur.current_vertex_id

    def step(self, label, k, l) -> int:
        y = self.cur.step(label, k, l)
        self.ops += self.cur.last_step_ops
        self.max_ops = max(self.max_ops, self.cur.last_step_ops)
        self.max_hops = max(self.max_hops, self.cur.stats.max_hops)
        return y

    def moves(self):
        return self.cur.moves()

    def close(self):
        if self.cur is not None:
            self.cur.close()


class NaiveEngine:
    name = "naive"

    def __init__(self, vg: ValidatedGrammar, tt: TraverseTable):
        self.vg, self.tt = vg, tt
        self.cur: NaiveCursor | None = None
        self.ops = 0
        self.max_ops = 0

    def start(self, x: int) -> int:
        self.cur = NaiveCursor(self.vg, self.tt, x)
        return self.cur.current_vertex_id

    def step(self, label, k, l) -> int:
        y = self.cur.step(label, k, l)
        self.ops += self.cur.last_step_ops
        self.max_ops = max(self.max_ops, self.cur.last_step_ops)
        return y

    def moves(self):
        return self.cur.moves()

    def close(self):
        pass


class OracleEngine:
    name = "oracle"

    def __init__(self, graph: Hypergraph):
        self.oracle = GraphOracle(graph)
        self.x = 0
        self.ops = 0
        self.max_ops = 0

    def start(self, x: int) -> int:
        self.x = x
        return x

    def step(self, label, k, l) -> int:
        self.x = self.oracle.step(self.x, label, k, l)
        return self.x

    def moves(self):
        return self.oracle.moves(self.x)

    def close(self):
        pass


def live_starts(vg: ValidatedGrammar, tt: TraverseTable) -> list[int]:
    """Start-graph vertices with at least one defined move."""
    s = vg.start_symbol
    return [x for x in range(1, vg.rhs(s).n_vertices + 1) if tt.moves(s, x)]


def random_walk(engine, steps: int, seed: int, starts: Sequence[int]) -> tuple[list[Op], list[int], int]:
    """Seeded walk choosing uniformly among defined moves.

    Dead ends restart at a random vertex of ``starts``. Returns the script,
    the visited ids (one per script op) and the number of restarts.
    """
    rng = random.Random(seed)
    if not starts:
        return [], [], 0
    x = rng.choice(starts)
    script: list[Op] = [("start", x)]
    ids = [engine.start(x)]
    restarts = 0
    done = 0
    while done < steps:
        options = engine.moves()
        if not options:
            x = rng.choice(starts)
            script.append(("start", x))
            ids.append(engine.start(x))
            restarts += 1
            continue
        move = rng.choice(options)
        script.append(("step", *move))
        ids.append(engine.step(*move))
        done += 1
    return script, ids, restarts


def oscillation_walk(steps: int, x: int = 1, label: str = "a") -> list[Op]:
    """Alternate forward and backward over the same edge."""
    script: list[Op] = [("start", x)]
    for i in range(steps):
        script.append(("step", label, 1, 2) if i % 2 == 0 else ("step", label, 2, 1))
    return script


def run_script(engine, script: Sequence[Op]) -> list[int]:
    out = []
    for op in script:
        if op[0] == "start":
            out.append(engine.start(op[1]))
        else:
            out.append(engine.step(*op[1:]))
    return out
