"""Deterministic grammar families and a seeded random generator.

``path(n)`` represents a simple directed a-path with ``2**n`` edges.
``star(n)`` and ``jump(n)`` represent graphs that are *not* unique-labelled
and are used as negative fixtures.
"""

from __future__ import annotations

import random

from .grammar import Grammar
from .hypergraph import Hyperedge, Hypergraph, make_graph
from .textio import serialize_grammar

FAMILIES = ("path", "star", "jump")


def path_grammar(n: int) -> Grammar:
    # A1..An double the path, A{n+1} is the single edge
    if n < 1:
        raise ValueError("n must be at least 1")
    nts = [(f"A{i}", 2) for i in range(1, n + 2)]
    rules = []
    for i in range(1, n + 1):
        nxt = f"A{i + 1}"
        rules.append((f"A{i}", make_graph(3, (2, 3), [(nxt, (2, 1)), (nxt, (1, 3))])))
    rules.append((f"A{n + 1}", make_graph(2, (1, 2), [("a", (1, 2))])))
    start = make_graph(2, (), [("A1", (1, 2))])
    return Grammar((("a", 2),), tuple(nts), start, tuple(rules))


def star_grammar(n: int) -> Grammar:
    if n < 1:
        raise ValueError("n must be at least 1")
    nts = [(f"A{i}", 2) for i in range(1, n + 1)]
    rules = []
    for i in range(1, n):
        nxt = f"A{i + 1}"
        rules.append((f"A{i}", make_graph(3, (2, 3), [(nxt, (2, 3)), (nxt, (2, 1))])))
    rules.append((f"A{n}", make_graph(3, (2, 3), [("a", (2, 3)), ("a", (2, 1))])))
    start = make_graph(3, (), [("A1", (1, 2)), ("A1", (1, 3))])
    return Grammar((("a", 2),), tuple(nts), start, tuple(rules))


def jump_grammar(n: int) -> Grammar:
    if n < 1:
        raise ValueError("n must be at least 1")
    nts = [(f"A{i}", 1) for i in range(1, n + 1)]
    rules = []
    for i in range(1, n):
        nxt = f"A{i + 1}"
        rules.append((f"A{i}", make_graph(1, (1,), [(nxt, (1,)), (nxt, (1,))])))
    leaf = [("a", (3, 2)), ("a", (3, 1)), ("a", (1, 3)), ("a", (2, 3))]
    rules.append((f"A{n}", make_graph(3, (3,), leaf)))
    start = make_graph(1, (), [("A1", (1,)), ("A1", (1,))])
    return Grammar((("a", 2),), tuple(nts), start, tuple(rules))


_BUILDERS = {"path": path_grammar, "star": star_grammar, "jump": jump_grammar}


def family_grammar(name: str, n: int) -> Grammar:
    try:
        return _BUILDERS[name](n)
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None


def gen_family(name: str, n: int) -> str:
    return serialize_grammar(family_grammar(name, n))


TERMINALS = (("a", 2), ("b", 2), ("c", 3), ("d", 1))


def random_grammar(
    seed: int,
    max_rules: int = 30,
    kappa: int = 4,
    max_height: int = 8,
    max_vertices: int = 10**4,
    terminals=TERMINALS,
    unique: bool = True,
) -> Grammar:
    """A random unique-labelled SL HR grammar.

    Rules are built leaves first. An edge is only added to a right-hand side
    if it does not create a second ``(vertex, label, index)`` occurrence,
    counting the occurrences each nonterminal edge inherits at its external
    vertices. Nonterminals unreachable from the start graph are dropped.
    With ``unique=False`` that check is skipped, which gives grammars that
    may or may not be unique-labelled.
    """
    rng = random.Random(seed)
    n_rules = rng.randint(max_rules // 3, max_rules)
    made: list[tuple[str, int]] = []
    nt_rank: dict[str, int] = {}
    rules: dict[str, Hypergraph] = {}
    height: dict[str, int] = {}
    inodes: dict[str, int] = {}
    # per nonterminal and external position: occupied (label, index) pairs
    sig: dict[str, list[set]] = {}

    def build(rank: int, max_h: int):
        n_int = rng.randint(1 if rank == 0 else 0, 4)
        n = n_int + rank
        occ = {v: set() for v in range(1, n + 1)}
        edges: list[Hyperedge] = []
        size = n_int
        h = 0
        for _ in range(rng.randint(n, 3 * n + 2)):
            pool = [b for b, r in made if r <= n and height[b] < max_h]
            if pool and rng.random() < 0.6:
                # favour recently built rules so derivations get deep
                label = pool[-1 - min(int(rng.expovariate(0.7)), len(pool) - 1)]
                att = tuple(rng.sample(range(1, n + 1), nt_rank[label]))
                adds = [(att[j], lk) for j, s in enumerate(sig[label]) for lk in s]
                grow = inodes[label]
            else:
                fits = [t for t in terminals if t[1] <= n]
                if not fits:
                    continue
                label, r = rng.choice(fits)
                att = tuple(rng.sample(range(1, n + 1), r))
                adds = [(x, (label, k)) for k, x in enumerate(att, start=1)]
                grow = 0
            if size + grow > max_vertices:
                continue
            clash = len(set(adds)) != len(adds) or any(lk in occ[x] for x, lk in adds)
            if clash and unique:
                continue
            for x, lk in adds:
                occ[x].add(lk)
            edges.append(Hyperedge(label, att))
            size += grow
            if label in height:
                h = max(h, height[label] + 1)
        g = Hypergraph(n, tuple(range(n_int + 1, n + 1)), tuple(edges))
        return g, h, size, [occ[n_int + j] for j in range(1, rank + 1)]

    for i in range(n_rules):
        name = f"N{i}"
        rank = rng.randint(1, kappa)
        g, h, size, s = build(rank, max_height)
        made.append((name, rank))
        nt_rank[name] = rank
        rules[name] = g
        height[name], inodes[name], sig[name] = h, size, s
    start, _, _, _ = build(0, max_height)

    reach: set[str] = set()
    stack = [e.label for e in start.edges if e.label in rules]
    while stack:
        a = stack.pop()
        if a not in reach:
            reach.add(a)
            stack.extend(e.label for e in rules[a].edges if e.label in rules)
    decl = [(a, r) for a, r in made if a in reach]
    rng.shuffle(decl)
    return Grammar(
        tuple(terminals),
        tuple(decl),
        start,
        tuple((a, rules[a]) for a, _ in decl),
    )
