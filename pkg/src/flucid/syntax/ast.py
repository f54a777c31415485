"""Abstract syntax.

Nodes are frozen dataclasses compared structurally; source positions are
carried along but ignored by equality.
"""

from dataclasses import dataclass, field
from typing import Optional


def _pos():
    return field(default=None, compare=False, repr=False)


class Expr:
    pass


@dataclass(frozen=True)
class Id(Expr):
    name: str
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class IntLit(Expr):
    value: int
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Apply(Expr):
    callee: Expr
    args: tuple
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class If(Expr):
    cond: Expr
    then: Expr
    else_: Expr
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class HashQuery(Expr):
    """``#`` (the whole current context) or ``#.d`` (the tag of ``d``)."""

    dim: Optional[Expr] = None
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class AtDim(Expr):
    """``body @.dim tag``"""

    body: Expr
    dim: Expr
    tag: Expr
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class AtCtx(Expr):
    """``body @ ctx`` where ctx evaluates to a context or context set."""

    body: Expr
    ctx: Expr
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class CtxLit(Expr):
    pairs: tuple  # of (dim Expr, tag Expr)
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class CtxSetLit(Expr):
    items: tuple  # of CtxLit
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Where(Expr):
    body: Expr
    defs: tuple
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class UnOp(Expr):
    op: str
    operand: Expr
    dim: Optional[Expr] = None
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr
    dim: Optional[Expr] = None
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Dot(Expr):
    base: Expr
    member: str
    pos: Optional[tuple] = _pos()


class QDef:
    pass


@dataclass(frozen=True)
class DimDecl(QDef):
    name: str
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class VarDef(QDef):
    name: str
    expr: Expr
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class FuncDef(QDef):
    name: str
    formals: tuple
    expr: Expr
    pos: Optional[tuple] = _pos()


# operator vocabulary

PREFIX_STREAM_OPS = ("first", "next", "prev", "last", "second", "prelast")
MARKER_TESTS = ("iseod", "isbod")
LOGICAL_PREFIX = ("not", "neg")

FBY_OPS = ("fby", "pby")
FILTER_OPS = (
    "wvr", "rwvr", "nwvr", "nrwvr",
    "asa", "ala", "nasa", "nala",
    "upon", "rupon", "nupon", "nrupon",
)
OR_OPS = ("or", "xor")
AND_OPS = ("and",)
COMPARISON_OPS = ("==", "!=", "<", "<=", ">", ">=")
ADDITIVE_OPS = ("+", "-")
MULTIPLICATIVE_OPS = ("*", "/", "%")

# operators that need a dimension to navigate along
NAVIGATING_OPS = frozenset(PREFIX_STREAM_OPS + FBY_OPS + FILTER_OPS)
STREAM_OPS = NAVIGATING_OPS | frozenset(LOGICAL_PREFIX + OR_OPS + AND_OPS)


def dim_path(e):
    """``a.b.c`` as a dotted name, or None if ``e`` is not an identifier path."""
    if isinstance(e, Id):
        return e.name
    if isinstance(e, Dot):
        base = dim_path(e.base)
        return None if base is None else f"{base}.{e.member}"
    return None


def path_expr(name, pos=None):
    parts = name.split(".")
    e = Id(parts[0], pos)
    for member in parts[1:]:
        e = Dot(e, member, pos)
    return e
