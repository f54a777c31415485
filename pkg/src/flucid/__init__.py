"""Forensic Lucid: bounded intensional streams and a demand-driven interpreter.

The main entry points are :class:`Program` for running source text,
:class:`Session` for evaluating expressions at explicit contexts, and the two
operator libraries :mod:`flucid.pipelined` and :mod:`flucid.indexed`.
"""

from .context import Context, ContextSet, DefEnv, construct_context
from .errors import DesugarError, EvalError, LexError, LucidError, ParseError
from .evaluator import Program, Session, evaluate, explain
from .forensic import combine, product
from .syntax import desugar, parse, print_expr, tokenize
from .values import BOD, EOD, BoundedStream, format_stream, parse_stream, stream

__all__ = [
    "BOD",
    "EOD",
    "BoundedStream",
    "Context",
    "ContextSet",
    "DefEnv",
    "DesugarError",
    "EvalError",
    "LexError",
    "LucidError",
    "ParseError",
    "Program",
    "Session",
    "combine",
    "construct_context",
    "desugar",
    "evaluate",
    "explain",
    "format_stream",
    "parse",
    "parse_stream",
    "print_expr",
    "product",
    "stream",
    "tokenize",
]
