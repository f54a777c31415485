"""Source rendering and tree dumps of ASTs."""

from .ast import (
    ADDITIVE_OPS,
    AND_OPS,
    COMPARISON_OPS,
    FBY_OPS,
    FILTER_OPS,
    LOGICAL_PREFIX,
    MULTIPLICATIVE_OPS,
    OR_OPS,
    Apply,
    AtCtx,
    AtDim,
    BinOp,
    BoolLit,
    CtxLit,
    CtxSetLit,
    DimDecl,
    Dot,
    FuncDef,
    HashQuery,
    Id,
    If,
    IntLit,
    UnOp,
    VarDef,
    Where,
    dim_path,
)

INDENT = "    "

# binary operator -> (own level, min level of left operand, min level of right)
_BINARY_LEVELS = {}
for _ops, _lvl, _right_assoc in (
    (FBY_OPS, 2, True),
    (FILTER_OPS, 3, False),
    (OR_OPS, 4, False),
    (AND_OPS, 5, False),
    (ADDITIVE_OPS, 8, False),
    (MULTIPLICATIVE_OPS, 9, False),
):
    for _op in _ops:
        _BINARY_LEVELS[_op] = (_lvl, _lvl + 1, _lvl) if _right_assoc else (_lvl, _lvl, _lvl + 1)
for _op in COMPARISON_OPS:
    _BINARY_LEVELS[_op] = (7, 8, 8)

ATOM = 11


def level(e):
    if isinstance(e, Where):
        return 0
    if isinstance(e, (AtDim, AtCtx)):
        return 1
    if isinstance(e, BinOp):
        return _BINARY_LEVELS[e.op][0]
    if isinstance(e, UnOp):
        return 6 if e.op in LOGICAL_PREFIX else 10
    return ATOM


def _path(e):
    p = dim_path(e)
    if p is None:
        raise ValueError(f"dimension must be an identifier path, got {e!r}")
    return p


def _suffix(dim):
    return "" if dim is None else "." + _path(dim)


def _sub(e, min_level):
    text = print_expr(e)
    if level(e) < min_level:
        return f"({text})"
    return text


def print_expr(e):
    """Render ``e`` as parseable source with minimal parentheses."""
    if isinstance(e, Id):
        return e.name
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, Dot):
        return f"{_sub(e.base, ATOM)}.{e.member}"
    if isinstance(e, Apply):
        return _sub(e.callee, ATOM) + "(" + ", ".join(print_expr(a) for a in e.args) + ")"
    if isinstance(e, If):
        return f"if {print_expr(e.cond)} then {print_expr(e.then)} else {print_expr(e.else_)} fi"
    if isinstance(e, HashQuery):
        return "#" + _suffix(e.dim)
    if isinstance(e, AtDim):
        return f"{_sub(e.body, 1)} @.{_path(e.dim)} {_sub(e.tag, 2)}"
    if isinstance(e, AtCtx):
        return f"{_sub(e.body, 1)} @ {_sub(e.ctx, 2)}"
    if isinstance(e, CtxLit):
        return "[" + ", ".join(f"{_path(d)}: {_sub(v, 1)}" for d, v in e.pairs) + "]"
    if isinstance(e, CtxSetLit):
        return "{" + ", ".join(print_expr(c) for c in e.items) + "}"
    if isinstance(e, UnOp):
        if e.op == "-":
            return "-" + _sub(e.operand, 10)
        own = level(e)
        return f"{e.op}{_suffix(e.dim)} {_sub(e.operand, own)}"
    if isinstance(e, BinOp):
        _, lmin, rmin = _BINARY_LEVELS[e.op]
        return f"{_sub(e.left, lmin)} {e.op}{_suffix(e.dim)} {_sub(e.right, rmin)}"
    if isinstance(e, Where):
        lines = [print_expr(e.body) + " where"]
        for q in e.defs:
            lines.extend(INDENT + line for line in print_def(q).split("\n"))
        lines.append("end")
        return "\n".join(lines)
    raise TypeError(f"not an expression: {e!r}")


def print_def(q):
    if isinstance(q, DimDecl):
        return f"dimension {q.name};"
    if isinstance(q, VarDef):
        return f"{q.name} = {print_expr(q.expr)};"
    if isinstance(q, FuncDef):
        return f"{q.name}({', '.join(q.formals)}) = {print_expr(q.expr)};"
    raise TypeError(f"not a definition: {q!r}")


def dump_ast(node):
    """Deterministic tree listing: one node per line, children indented."""
    lines = []
    _dump(node, 0, lines, "")
    return "\n".join(lines)


def _dump(node, depth, lines, label):
    pad = "  " * depth + label
    if isinstance(node, Id):
        lines.append(f"{pad}Id {node.name}")
    elif isinstance(node, IntLit):
        lines.append(f"{pad}IntLit {node.value}")
    elif isinstance(node, BoolLit):
        lines.append(f"{pad}BoolLit {'true' if node.value else 'false'}")
    elif isinstance(node, Dot):
        lines.append(f"{pad}Dot .{node.member}")
        _dump(node.base, depth + 1, lines, "")
    elif isinstance(node, Apply):
        lines.append(f"{pad}Apply")
        _dump(node.callee, depth + 1, lines, "callee: ")
        for a in node.args:
            _dump(a, depth + 1, lines, "arg: ")
    elif isinstance(node, If):
        lines.append(f"{pad}If")
        _dump(node.cond, depth + 1, lines, "cond: ")
        _dump(node.then, depth + 1, lines, "then: ")
        _dump(node.else_, depth + 1, lines, "else: ")
    elif isinstance(node, HashQuery):
        lines.append(f"{pad}HashQuery{' ' + _path(node.dim) if node.dim is not None else ''}")
    elif isinstance(node, AtDim):
        lines.append(f"{pad}AtDim {_path(node.dim)}")
        _dump(node.body, depth + 1, lines, "body: ")
        _dump(node.tag, depth + 1, lines, "tag: ")
    elif isinstance(node, AtCtx):
        lines.append(f"{pad}AtCtx")
        _dump(node.body, depth + 1, lines, "body: ")
        _dump(node.ctx, depth + 1, lines, "ctx: ")
    elif isinstance(node, CtxLit):
        lines.append(f"{pad}CtxLit")
        for d, v in node.pairs:
            _dump(v, depth + 1, lines, f"{_path(d)}: ")
    elif isinstance(node, CtxSetLit):
        lines.append(f"{pad}CtxSetLit")
        for c in node.items:
            _dump(c, depth + 1, lines, "")
    elif isinstance(node, UnOp):
        lines.append(f"{pad}UnOp {node.op}{_suffix(node.dim)}")
        _dump(node.operand, depth + 1, lines, "")
    elif isinstance(node, BinOp):
        lines.append(f"{pad}BinOp {node.op}{_suffix(node.dim)}")
        _dump(node.left, depth + 1, lines, "")
        _dump(node.right, depth + 1, lines, "")
    elif isinstance(node, Where):
        lines.append(f"{pad}Where")
        _dump(node.body, depth + 1, lines, "body: ")
        for q in node.defs:
            _dump(q, depth + 1, lines, "")
    elif isinstance(node, DimDecl):
        lines.append(f"{pad}DimDecl {node.name}")
    elif isinstance(node, VarDef):
        lines.append(f"{pad}VarDef {node.name}")
        _dump(node.expr, depth + 1, lines, "")
    elif isinstance(node, FuncDef):
        lines.append(f"{pad}FuncDef {node.name}({', '.join(node.formals)})")
        _dump(node.expr, depth + 1, lines, "")
    else:
        raise TypeError(f"not a syntax node: {node!r}")
