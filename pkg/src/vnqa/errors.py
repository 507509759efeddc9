"""Exception hierarchy shared across the engine."""


class VnqaError(Exception):
    """Base class for all domain errors raised by this package."""


class DuplicateKeyError(VnqaError):
    """A node with the same key is already registered in the index."""


class UnknownNodeError(VnqaError):
    """A node id was referenced that does not exist in the graph."""


class CypherSyntaxError(VnqaError):
    """Query text could not be parsed.

    Carries the 1-based line/column of the offending token and the set of
    token descriptions the parser would have accepted there.
    """

    def __init__(self, message, line=None, column=None, expected=None):
        super().__init__(message)
        self.line = line
        self.column = column
        self.expected = frozenset(expected or ())

    def __str__(self):
        msg = super().__str__()
        if self.line is not None:
            msg = f"{msg} (line {self.line}, column {self.column})"
        if self.expected:
            msg = f"{msg}; expected one of: {', '.join(sorted(self.expected))}"
        return msg


class UnboundVariableError(CypherSyntaxError):
    """A query references a variable with no START or MATCH binding."""


class EvalError(VnqaError):
    """Query evaluation failed, e.g. an ill-typed comparison."""


class ConfigError(VnqaError):
    """Invalid training or service configuration."""


class NoEntityError(VnqaError):
    """Entity construction found no proper-noun entity in the question."""


class NoTemplateError(VnqaError):
    """No query template matches the question's construction shape."""
