"""Line-oriented text formats for grammars, graphs and traversal scripts.

Grammar file::

    # comment
    terminal a 2
    nonterminal A 2
    start
      vertices 2
      edge A 1 2
    end
    rule A
      vertices 4
      ext 2          # the last 2 vertices are external
      edge a 1 4
    end

A graph file is the body of such a block on its own.
"""

from __future__ import annotations

from .errors import (
    ArityMismatch,
    DuplicateAttachment,
    DuplicateRule,
    GraphError,
    GrammarSyntaxError,
    ScriptSyntaxError,
    UnknownSymbol,
    VertexOutOfRange,
)
from .grammar import START, Grammar, ValidatedGrammar
from .hypergraph import Hyperedge, Hypergraph


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok: str, no: int, what: str, exc=GrammarSyntaxError) -> int:
    try:
        return int(tok)
    except ValueError:
        raise exc(f"{what} must be an integer, got {tok!r}", line=no) from None


class _Block:
    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        self.n: int | None = None
        self.k = 0
        self.edges: list[Hyperedge] = []
        self.seen_ext = False

    def feed(self, no: int, toks: list[str], ranks: dict[str, int] | None):
        head = toks[0]
        if head == "vertices":
            if self.n is not None or len(toks) != 2:
                raise GrammarSyntaxError("expected a single 'vertices <n>' line per block", line=no)
            self.n = _int(toks[1], no, "vertex count")
            if self.n < 1:
                raise VertexOutOfRange(f"a graph needs at least one vertex, got {self.n}", line=no)
        elif head == "ext":
            if self.seen_ext or len(toks) != 2:
                raise GrammarSyntaxError("expected a single 'ext <k>' line per block", line=no)
            self.seen_ext = True
            self.k = _int(toks[1], no, "external count")
        elif head == "edge":
            if self.n is None:
                raise GrammarSyntaxError("'vertices' must come before the first edge", line=no)
            if len(toks) < 3:
                raise GrammarSyntaxError("edge needs a label and at least one vertex", line=no)
            label = toks[1]
            att = tuple(_int(t, no, "vertex") for t in toks[2:])
            if ranks is not None:
                if label not in ranks:
                    raise UnknownSymbol(f"undeclared label {label!r}", line=no)
                if ranks[label] != len(att):
                    raise ArityMismatch(
                        f"label {label!r} has rank {ranks[label]}, edge attaches {len(att)}",
                        line=no,
                    )
            if len(set(att)) != len(att):
                raise DuplicateAttachment(f"edge {label} attaches {att}", line=no)
            for v in att:
                if not 1 <= v <= self.n:
                    raise VertexOutOfRange(f"vertex {v} not in [1, {self.n}]", line=no)
            self.edges.append(Hyperedge(label, att))
        else:
            raise GrammarSyntaxError(f"unexpected {head!r} inside a block", line=no)

    def graph(self, no: int) -> Hypergraph:
        if self.n is None:
            raise GrammarSyntaxError(f"block {self.name} has no 'vertices' line", line=self.line)
        if not 0 <= self.k <= self.n:
            raise GrammarSyntaxError(f"ext {self.k} out of range for {self.n} vertices", line=self.line)
        try:
            return Hypergraph(self.n, tuple(range(self.n - self.k + 1, self.n + 1)), tuple(self.edges))
        except GraphError as exc:
            exc.line = self.line
            raise


def parse_grammar(text: str) -> Grammar:
    lines = list(_lines(text))
    terminals: list[tuple[str, int]] = []
    nonterminals: list[tuple[str, int]] = []
    ranks: dict[str, int] = {}
    for no, toks in lines:
        if toks[0] in ("terminal", "nonterminal"):
            if len(toks) != 3:
                raise GrammarSyntaxError(f"expected '{toks[0]} <symbol> <rank>'", line=no)
            sym, rank = toks[1], _int(toks[2], no, "rank")
            if rank < 1:
                raise GrammarSyntaxError(f"rank of {sym} must be positive", line=no)
            if sym in ranks:
                raise GrammarSyntaxError(f"symbol {sym!r} declared twice", line=no)
            if sym == START:
                raise GrammarSyntaxError(f"{START!r} is reserved for the start graph", line=no)
            ranks[sym] = rank
            (terminals if toks[0] == "terminal" else nonterminals).append((sym, rank))

    nts = dict(nonterminals)
    start = None
    rules: list[tuple[str, Hypergraph]] = []
    block: _Block | None = None
    for no, toks in lines:
        head = toks[0]
        if block is not None:
            if head == "end":
                if len(toks) != 1:
                    raise GrammarSyntaxError("'end' takes no arguments", line=no)
                g = block.graph(no)
                if block.name == START:
                    start = g
                else:
                    rules.append((block.name, g))
                block = None
            else:
                block.feed(no, toks, ranks)
            continue
        if head in ("terminal", "nonterminal"):
            continue
        if head == "start":
            if len(toks) != 1:
                raise GrammarSyntaxError("'start' takes no arguments", line=no)
            if start is not None:
                raise GrammarSyntaxError("more than one start block", line=no)
            block = _Block(START, no)
        elif head == "rule":
            if len(toks) != 2:
                raise GrammarSyntaxError("expected 'rule <nonterminal>'", line=no)
            name = toks[1]
            if name not in nts:
                raise UnknownSymbol(f"rule for undeclared nonterminal {name!r}", line=no)
            if any(a == name for a, _ in rules):
                raise DuplicateRule(f"two rules for {name}", line=no)
            block = _Block(name, no)
        else:
            raise GrammarSyntaxError(f"unexpected {head!r} at top level", line=no)
    if block is not None:
        raise GrammarSyntaxError(f"block {block.name} is not closed", line=block.line)
    if start is None:
        raise GrammarSyntaxError("missing start block")
    return Grammar(tuple(terminals), tuple(nonterminals), start, tuple(rules))


def _block_lines(g: Hypergraph, indent: str = "  ") -> list[str]:
    out = [f"{indent}vertices {g.n_vertices}"]
    if g.ext:
        out.append(f"{indent}ext {len(g.ext)}")
    out += [f"{indent}edge {e.label} {' '.join(map(str, e.att))}" for e in g.edges]
    return out


def serialize_grammar(grammar: Grammar | ValidatedGrammar) -> str:
    if isinstance(grammar, ValidatedGrammar):
        grammar = grammar.grammar
    out = [f"terminal {s} {r}" for s, r in grammar.terminals]
    out += [f"nonterminal {s} {r}" for s, r in grammar.nonterminals]
    out += ["start", *_block_lines(grammar.start), "end"]
    for a, g in grammar.rules:
        out += [f"rule {a}", *_block_lines(g), "end"]
    return "\n".join(out) + "\n"


def serialize_graph(g: Hypergraph) -> str:
    """Canonical form: edges sorted by label, then attachment."""
    out = [f"vertices {g.n_vertices}", f"ext {len(g.ext)}"]
    for e in sorted(g.edges, key=lambda e: (e.label, e.att)):
        out.append(f"edge {e.label} {' '.join(map(str, e.att))}")
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Hypergraph:
    block = _Block("graph", 1)
    for no, toks in _lines(text):
        block.feed(no, toks, None)
    return block.graph(0)


def parse_script(text: str, vg: ValidatedGrammar | None = None) -> tuple[int, list[tuple[str, int, int]]]:
    """``start <x>`` followed by ``step <label> <k> <l>`` lines."""
    start = None
    steps = []
    for no, toks in _lines(text):
        if toks[0] == "start":
            if start is not None or steps:
                raise ScriptSyntaxError("'start' must appear exactly once, first", line=no)
            if len(toks) != 2:
                raise ScriptSyntaxError("expected 'start <vertex>'", line=no)
            start = _int(toks[1], no, "start vertex", ScriptSyntaxError)
        elif toks[0] == "step":
            if start is None:
                raise ScriptSyntaxError("'step' before 'start'", line=no)
            if len(toks) != 4:
                raise ScriptSyntaxError("expected 'step <label> <k> <l>'", line=no)
            label = toks[1]
            if vg is not None and not vg.is_terminal(label):
                raise UnknownSymbol(f"{label!r} is not a declared terminal", line=no)
            steps.append((label, _int(toks[2], no, "k", ScriptSyntaxError), _int(toks[3], no, "l", ScriptSyntaxError)))
        else:
            raise ScriptSyntaxError(f"unexpected {toks[0]!r}", line=no)
    if start is None:
        raise ScriptSyntaxError("empty script")
    return start, steps


def serialize_script(start: int, steps) -> str:
    return "".join([f"start {start}\n"] + [f"step {s} {k} {l}\n" for s, k, l in steps])
