"""Exception types shared by the lexer, parser and evaluator."""


class LucidError(Exception):
    pass


class LexError(LucidError):
    def __init__(self, message, line, col):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class ParseError(LucidError):
    def __init__(self, message, line=None, col=None, expected=()):
        where = f"{line}:{col}: " if line is not None else ""
        text = message
        if expected:
            text += " (expected " + ", ".join(sorted(expected)) + ")"
        super().__init__(where + text)
        self.line = line
        self.col = col
        self.expected = frozenset(expected)


class DesugarError(ParseError):
    pass


# evaluation error kinds
UNBOUND_IDENTIFIER = "unbound-identifier"
TYPE_ERROR = "type-error"
ARITY_ERROR = "arity-error"
UNBOUND_DIMENSION = "unbound-dimension"
MARKER_ARITHMETIC = "marker-arithmetic"
RECURSION_FORBIDDEN = "recursion-forbidden"
DIVISION_BY_ZERO = "division-by-zero"
RESOURCE_LIMIT = "resource-limit"

ERROR_KINDS = (
    UNBOUND_IDENTIFIER,
    TYPE_ERROR,
    ARITY_ERROR,
    UNBOUND_DIMENSION,
    MARKER_ARITHMETIC,
    RECURSION_FORBIDDEN,
    DIVISION_BY_ZERO,
    RESOURCE_LIMIT,
)


class EvalError(LucidError):
    """Evaluation failure. Carries the context that was active when it happened."""

    def __init__(self, kind, message, context=None, position=None):
        assert kind in ERROR_KINDS, kind
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.context = context
        self.position = position

    def __str__(self):
        text = f"{self.kind}: {self.message}"
        if self.position is not None:
            text = f"{self.position[0]}:{self.position[1]}: " + text
        if self.context is not None:
            text += f" at {self.context}"
        return text
