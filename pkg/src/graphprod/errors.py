"""Exception types shared across the toolkit."""


class GraphProdError(Exception):
    """Base class for every error raised by graphprod."""


# finite groups

class GroupValidationError(GraphProdError):
    pass


class MalformedTable(GroupValidationError):
    pass


class NotAssociative(GroupValidationError):
    def __init__(self, a, b, c):
        super().__init__(f"(a*b)*c != a*(b*c) at a={a}, b={b}, c={c}")
        self.triple = (a, b, c)


class NoIdentity(GroupValidationError):
    pass


class NoInverse(GroupValidationError):
    def __init__(self, a):
        super().__init__(f"element {a} has no inverse")
        self.element = a


class NotNormal(GraphProdError):
    pass


class OrderOverflow(GraphProdError):
    pass


class BudgetExceeded(GraphProdError):
    """A bounded search was truncated. Not a disproof."""


# graphs and words

class UnknownVertex(GraphProdError):
    def __init__(self, vertex):
        super().__init__(f"unknown vertex {vertex!r}")
        self.vertex = vertex


class InvalidGraph(GraphProdError):
    pass


class InvalidSyllable(GraphProdError):
    pass


class MoveNotApplicable(GraphProdError):
    def __init__(self, move, reason):
        super().__init__(f"{move}: {reason}")
        self.move = move
        self.reason = reason


class IndexOutOfRange(GraphProdError):
    pass


class OracleCapExceeded(GraphProdError):
    pass


class UndefinedImage(GraphProdError):
    pass


# separation

class TrivialElement(GraphProdError):
    pass


class ClassObstruction(GraphProdError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SeparatorFailed(GraphProdError):
    pass


class PreconditionViolated(GraphProdError):
    pass


# local embeddability

class ChartIncomplete(GraphProdError):
    pass


class InvalidChart(GraphProdError):
    pass


class AlmostHomViolated(GraphProdError):
    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


# documents

class SchemaError(GraphProdError):
    pass
