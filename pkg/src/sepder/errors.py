"""Exception hierarchy shared by the sepder modules."""


class SepderError(Exception):
    pass


class ParseError(SepderError, ValueError):
    """Input text could not be turned into a graph."""


class MalformedLineError(ParseError):
    pass


class VertexRangeError(ParseError):
    pass


class LoopEdgeError(ParseError):
    pass


class DisconnectedGraphError(SepderError, ValueError):
    """Raised wherever a connected graph is required."""


class NotAMemberError(SepderError, ValueError):
    """A derivation fails the membership test for D(A(G))."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"derivation #{index} is not in D(A(G))")


class IncompletePosetError(SepderError, ValueError):
    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__(f"poset is not complete; {len(self.missing)} element(s) lack complete chains")
