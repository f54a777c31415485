"""Desugaring to the core forms the evaluator understands.

* ``{[..], ..}`` context-set literals become ``contextset([..], ..)`` calls.
* ``second X`` becomes ``first next X`` and ``prelast X`` becomes
  ``last prev X``.
* Navigating operators written without a ``.d`` suffix get the program's
  default dimension.
* Names bound more than once anywhere in the program are renamed apart, so
  every binder is unique and call-by-name substitution cannot capture.

The rewrite is idempotent.  Functions that can reach themselves through the
definitions of their own scope are rejected.
"""

import itertools

from ..errors import DesugarError
from .ast import (
    NAVIGATING_OPS,
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
    path_expr,
)
from .lexer import RESERVED_NAMES

DEFAULT_DIMENSION = "d"

# names supplied by the evaluator's initial environment
BUILTIN_NAMES = frozenset(
    ("seq", "nth", "len", "contextset", "union", "intersection") + tuple(RESERVED_NAMES)
)


def declared_dimensions(e):
    """Every dimension name declared anywhere in ``e``, in source order."""
    found = []
    for q in _all_defs(e):
        if isinstance(q, DimDecl) and q.name not in found:
            found.append(q.name)
    return found


def _all_defs(e):
    for node in walk(e):
        if isinstance(node, Where):
            yield from node.defs


def walk(e):
    """Pre-order traversal over expressions and definitions."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(list(_children(node))))


def _children(node):
    if isinstance(node, (Id, IntLit, BoolLit, DimDecl)):
        return
    if isinstance(node, Dot):
        yield node.base
    elif isinstance(node, Apply):
        yield node.callee
        yield from node.args
    elif isinstance(node, If):
        yield node.cond
        yield node.then
        yield node.else_
    elif isinstance(node, HashQuery):
        if node.dim is not None:
            yield node.dim
    elif isinstance(node, AtDim):
        yield node.body
        yield node.dim
        yield node.tag
    elif isinstance(node, AtCtx):
        yield node.body
        yield node.ctx
    elif isinstance(node, CtxLit):
        for d, v in node.pairs:
            yield d
            yield v
    elif isinstance(node, CtxSetLit):
        yield from node.items
    elif isinstance(node, UnOp):
        yield node.operand
        if node.dim is not None:
            yield node.dim
    elif isinstance(node, BinOp):
        yield node.left
        yield node.right
        if node.dim is not None:
            yield node.dim
    elif isinstance(node, Where):
        yield node.body
        yield from node.defs
    elif isinstance(node, (VarDef, FuncDef)):
        yield node.expr


def default_dimension(e):
    """The dimension suffixless operators navigate along, or None if ambiguous."""
    dims = declared_dimensions(e)
    if not dims:
        return DEFAULT_DIMENSION
    if len(dims) == 1:
        return dims[0]
    if DEFAULT_DIMENSION in dims:
        return DEFAULT_DIMENSION
    return None


def desugar(e, default=None):
    """Desugar a program; ``default`` overrides the inferred default dimension."""
    return _Desugarer(e, default).run()


class _Desugarer:
    def __init__(self, program, default=None):
        self.program = program
        self.default = default or default_dimension(program)
        self.used = {n.name for n in walk(program) if isinstance(n, Id)}
        self.used |= {q.name for q in _all_defs(program)}
        self.used |= BUILTIN_NAMES
        self.bound = set()

    def run(self):
        return self.expr(self.program, {})

    def fresh(self, name):
        for k in itertools.count(1):
            candidate = f"{name}_{k}"
            if candidate not in self.used:
                self.used.add(candidate)
                return candidate

    def bind(self, name, pos):
        if name in BUILTIN_NAMES:
            raise DesugarError(f"cannot redefine built-in name {name!r}", *(pos or (None, None)))
        if name in self.bound:
            new = self.fresh(name)
        else:
            new = name
        self.bound.add(new)
        return new

    def dim(self, d, env, pos):
        if d is None:
            if self.default is None:
                raise DesugarError(
                    "operator needs an explicit dimension suffix: several dimensions are declared",
                    *(pos or (None, None)),
                )
            d = path_expr(self.default, pos)
        return self.expr(d, env)

    def expr(self, e, env):
        if isinstance(e, Id):
            new = env.get(e.name, e.name)
            return e if new == e.name else Id(new, e.pos)
        if isinstance(e, (IntLit, BoolLit)):
            return e
        if isinstance(e, Dot):
            # compound dimension names are renamed as a whole
            path = dim_path(e)
            if path is not None and path in env:
                return path_expr(env[path], e.pos)
            return Dot(self.expr(e.base, env), e.member, e.pos)
        if isinstance(e, Apply):
            return Apply(self.expr(e.callee, env), tuple(self.expr(a, env) for a in e.args), e.pos)
        if isinstance(e, If):
            return If(self.expr(e.cond, env), self.expr(e.then, env), self.expr(e.else_, env), e.pos)
        if isinstance(e, HashQuery):
            return HashQuery(None if e.dim is None else self.expr(e.dim, env), e.pos)
        if isinstance(e, AtDim):
            return AtDim(self.expr(e.body, env), self.expr(e.dim, env), self.expr(e.tag, env), e.pos)
        if isinstance(e, AtCtx):
            return AtCtx(self.expr(e.body, env), self.expr(e.ctx, env), e.pos)
        if isinstance(e, CtxLit):
            return CtxLit(tuple((self.expr(d, env), self.expr(v, env)) for d, v in e.pairs), e.pos)
        if isinstance(e, CtxSetLit):
            return Apply(Id("contextset", e.pos), tuple(self.expr(c, env) for c in e.items), e.pos)
        if isinstance(e, UnOp):
            if e.op in ("second", "prelast"):
                outer, inner = ("first", "next") if e.op == "second" else ("last", "prev")
                return self.expr(UnOp(outer, UnOp(inner, e.operand, e.dim, e.pos), e.dim, e.pos), env)
            dim = self.dim(e.dim, env, e.pos) if e.op in NAVIGATING_OPS else (
                None if e.dim is None else self.expr(e.dim, env)
            )
            return UnOp(e.op, self.expr(e.operand, env), dim, e.pos)
        if isinstance(e, BinOp):
            dim = self.dim(e.dim, env, e.pos) if e.op in NAVIGATING_OPS else (
                None if e.dim is None else self.expr(e.dim, env)
            )
            return BinOp(e.op, self.expr(e.left, env), self.expr(e.right, env), dim, e.pos)
        if isinstance(e, Where):
            return self.where(e, env)
        raise TypeError(f"not an expression: {e!r}")

    def where(self, e, env):
        names = []
        for q in e.defs:
            if q.name in names:
                raise DesugarError(f"{q.name!r} is defined twice in one where clause", *(q.pos or (None, None)))
            names.append(q.name)
        inner = dict(env)
        for q in e.defs:
            inner[q.name] = self.bind(q.name, q.pos)
        defs = []
        for q in e.defs:
            new = inner[q.name]
            if isinstance(q, DimDecl):
                defs.append(DimDecl(new, q.pos))
            elif isinstance(q, VarDef):
                defs.append(VarDef(new, self.expr(q.expr, inner), q.pos))
            else:
                scope = dict(inner)
                formals = []
                for f in q.formals:
                    if f in formals:
                        raise DesugarError(f"repeated parameter {f!r} in {q.name}", *(q.pos or (None, None)))
                    formals.append(f)
                    scope[f] = self.bind(f, q.pos)
                defs.append(FuncDef(new, tuple(scope[f] for f in q.formals), self.expr(q.expr, scope), q.pos))
        _check_function_cycles(defs)
        return Where(self.expr(e.body, inner), tuple(defs), e.pos)


def _free_names(e):
    return {n.name for n in walk(e) if isinstance(n, Id)}


def _check_function_cycles(defs):
    """Reject functions that reach themselves via the definitions of this scope.

    Variables may refer to themselves (that is how streams are built), so a
    cycle is only an error if it passes through a function.
    """
    local = {q.name: q for q in defs if isinstance(q, (VarDef, FuncDef))}
    edges = {name: _free_names(q.expr) & local.keys() for name, q in local.items()}
    for name, q in local.items():
        if not isinstance(q, FuncDef):
            continue
        seen, stack = set(), list(edges[name])
        while stack:
            n = stack.pop()
            if n == name:
                raise DesugarError(f"function {name!r} is recursive", *(q.pos or (None, None)))
            if n not in seen:
                seen.add(n)
                stack.extend(edges[n])
