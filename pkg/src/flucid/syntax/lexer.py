"""Tokenizer."""

import re
from dataclasses import dataclass

from ..errors import LexError
from .ast import (
    ADDITIVE_OPS,
    AND_OPS,
    COMPARISON_OPS,
    FBY_OPS,
    FILTER_OPS,
    LOGICAL_PREFIX,
    MARKER_TESTS,
    MULTIPLICATIVE_OPS,
    OR_OPS,
    PREFIX_STREAM_OPS,
)

KEYWORDS = frozenset(
    ("where", "end", "dimension", "if", "then", "else", "fi",
     "true", "false", "T", "F")
    + PREFIX_STREAM_OPS + MARKER_TESTS + LOGICAL_PREFIX
    + FBY_OPS + FILTER_OPS + OR_OPS + AND_OPS
)

# names with fixed meaning that cannot be redefined; they lex as identifiers
# so that they can appear as ordinary call targets and constants
RESERVED_NAMES = frozenset(("combine", "product", "bod", "eod"))

SYMBOLS = sorted(
    set(COMPARISON_OPS + ADDITIVE_OPS + MULTIPLICATIVE_OPS)
    | {"@", "#", ".", ",", ";", ":", "(", ")", "[", "]", "{", "}", "="},
    key=len,
    reverse=True,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", "kw", "sym" or "eof"
    text: str
    line: int
    col: int

    def __str__(self):
        if self.kind == "eof":
            return "end of input"
        return repr(self.text)


_SPACE = re.compile(r"[ \t\r\n]+")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_INT = re.compile(r"[0-9]+")


def tokenize(source):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    n = len(source)

    def advance_to(end):
        nonlocal pos, line, line_start
        chunk = source[pos:end]
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = end

    while pos < n:
        col = pos - line_start + 1
        m = _SPACE.match(source, pos)
        if m:
            advance_to(m.end())
            continue
        if source.startswith("//", pos):
            end = source.find("\n", pos)
            advance_to(n if end < 0 else end)
            continue
        if source.startswith("/*", pos):
            end = source.find("*/", pos + 2)
            if end < 0:
                raise LexError("unterminated comment", line, col)
            advance_to(end + 2)
            continue
        m = _IDENT.match(source, pos)
        if m:
            word = m.group()
            tokens.append(Token("kw" if word in KEYWORDS else "ident", word, line, col))
            advance_to(m.end())
            continue
        m = _INT.match(source, pos)
        if m:
            if m.end() < n and (source[m.end()].isalpha() or source[m.end()] == "_"):
                raise LexError(f"malformed number {source[pos:m.end() + 1]!r}", line, col)
            tokens.append(Token("int", m.group(), line, col))
            advance_to(m.end())
            continue
        if source.startswith("@{", pos):
            raise LexError("'@' must not be followed directly by '{'", line, col)
        for sym in SYMBOLS:
            if source.startswith(sym, pos):
                tokens.append(Token("sym", sym, line, col))
                advance_to(pos + len(sym))
                break
        else:
            raise LexError(f"invalid character {source[pos]!r}", line, col)
    col = pos - line_start + 1
    tokens.append(Token("eof", "", line, col))
    return tokens
