"""Exception hierarchy for the SL HR grammar toolkit.

Every domain error derives from :class:`SLHRError`; the CLI maps those to exit
code 1. Errors raised while parsing carry the offending line number.
"""

from __future__ import annotations


class SLHRError(Exception):
    """Base class for all domain errors."""

    def __init__(self, message: str = "", *, line: int | None = None):
        self.line = line
        super().__init__(message)

    def __str__(self) -> str:
        msg = super().__str__()
        if self.line is not None:
            return f"line {self.line}: {msg}"
        return msg


# hypergraph construction / replacement
class GraphError(SLHRError):
    pass


class DuplicateAttachment(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class EmptyAttachment(GraphError):
    pass


class DuplicateExternal(GraphError):
    pass


class RankMismatch(GraphError):
    pass


class NonCanonicalReplacement(GraphError):
    pass


# grammar validation
class GrammarError(SLHRError):
    pass


class CyclicGrammar(GrammarError):
    pass


class MissingRule(GrammarError):
    pass


class DuplicateRule(GrammarError):
    pass


class UnreachableNonterminal(GrammarError):
    pass


class UnknownSymbol(GrammarError):
    pass


class ArityMismatch(GrammarError):
    pass


class GrammarSyntaxError(GrammarError):
    pass


# oracles and traversal
class BudgetExceeded(SLHRError):
    pass


class ExternalVertexQueried(SLHRError):
    pass


class UndefinedInternal(SLHRError):
    """An external vertex whose merge chain leaves the root of the tree.

    ``root_column`` is the position of the root external vertex the chain ends at.
    """

    def __init__(self, message: str, root_column: int):
        self.root_column = root_column
        super().__init__(message)


class NoSuchEdge(SLHRError):
    pass


class IndexOutOfRange(SLHRError):
    pass


class AbsentEntry(SLHRError):
    pass


class UniqueLabelViolation(SLHRError):
    """Two distinct edges share (vertex, label, attachment index).

    ``key`` is ``(nonterminal, vertex, label, index)`` and ``witnesses`` holds a
    description of both conflicting derivations.
    """

    def __init__(self, key, witnesses):
        self.key = key
        self.witnesses = tuple(witnesses)
        nt, x, label, k = key
        super().__init__(
            f"unique-label violation at vertex {x} of {nt}: label {label!r}, "
            f"index {k}; witnesses {self.witnesses[0]} and {self.witnesses[1]}"
        )


# tableaux
class InvalidPath(SLHRError):
    pass


class AbsentLink(SLHRError):
    pass


class NtMismatch(SLHRError):
    pass


class StoreBusy(SLHRError):
    pass


class ScriptSyntaxError(SLHRError):
    pass
