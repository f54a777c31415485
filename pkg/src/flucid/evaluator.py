"""Demand-driven big-step evaluator.

``Session.eval(P, e)`` computes the value of ``e`` at context ``P`` by case on
the expression form, demanding sub-values only when they are needed.  Named
variables are memoized per (definition, context); expressions are not.
Stream operators are evaluated with the kernels of :mod:`flucid.indexed`,
whose operands are accessors that evaluate the operand expression at
``P † [d ↦ k]`` on demand.

Evaluation can be traced: each rule conclusion is logged as a
:class:`TraceEntry` once its value is known, so a trace lists a derivation
tree in post-order.
"""

import os
import sys
import threading
from dataclasses import dataclass

from . import forensic, indexed, logic
from .context import (
    EMPTY,
    Const,
    Context,
    ContextSet,
    DefEnv,
    Dim,
    Func,
    Op,
    Var,
    construct_context,
    dot_dimension,
)
from .errors import (
    ARITY_ERROR,
    DIVISION_BY_ZERO,
    MARKER_ARITHMETIC,
    RECURSION_FORBIDDEN,
    RESOURCE_LIMIT,
    TYPE_ERROR,
    UNBOUND_DIMENSION,
    UNBOUND_IDENTIFIER,
    DesugarError,
    EvalError,
)
from .syntax import (
    ADDITIVE_OPS,
    COMPARISON_OPS,
    MULTIPLICATIVE_OPS,
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
    declared_dimensions,
    desugar,
    dim_path,
    parse,
    print_def,
    print_expr,
)
from .syntax.desugar import DEFAULT_DIMENSION, walk
from .values import (
    BOD,
    EOD,
    BoundedStream,
    Ident,
    format_value,
    is_bod,
    is_eod,
    is_int,
    is_marker,
    strict_eq,
    truthy,
)

DEFAULT_DEPTH_LIMIT = 1_000_000
DEPTH_ENV_VAR = "FLUCID_DEPTH_LIMIT"

_RECURSION_LIMIT = 200_000
_STACK_SIZE = 512 * 1024 * 1024


def configured_depth_limit():
    raw = os.environ.get(DEPTH_ENV_VAR)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_DEPTH_LIMIT


# builtins

@dataclass(frozen=True)
class Builtin:
    name: str
    fn: object
    arity: object = None  # None for variadic
    lazy: bool = False  # lazy builtins receive (session, D, P, arg exprs)


def _first_marker(vals):
    for v in vals:
        if is_marker(v):
            return v
    return None


def _seq(*vals):
    m = _first_marker(vals)
    return m if m is not None else tuple(vals)


def _nth(s, i):
    m = _first_marker((s, i))
    if m is not None:
        return m
    if not isinstance(s, tuple) or not is_int(i):
        raise TypeError("nth expects a sequence and an integer")
    if i < 0:
        return BOD
    if i >= len(s):
        return EOD
    return s[i]


def _len(s):
    if is_marker(s):
        return s
    if not isinstance(s, tuple):
        raise TypeError("len expects a sequence")
    return len(s)


def _as_set(c):
    if isinstance(c, ContextSet):
        return c
    if isinstance(c, Context):
        return ContextSet([c])
    raise TypeError(f"not a context or context set: {format_value(c)}")


def _contextset(*cs):
    for c in cs:
        if not isinstance(c, Context):
            raise TypeError(f"context set members must be contexts, got {format_value(c)}")
    return ContextSet(cs)


def _union(a, b):
    return _as_set(a).union(_as_set(b))


def _intersection(a, b):
    return _as_set(a).intersection(_as_set(b))


def _combine(session, D, P, args):
    d = session._dimension(args[2], D, P)
    s = session._materialize(args[0], D, P, d)
    e = session._eval(args[1], D, P)
    if is_marker(e):
        return e
    return forensic.combine(s, e).at(P.query(d))


def _product(session, D, P, args):
    d = session._dimension(args[2], D, P)
    s1 = session._materialize(args[0], D, P, d)
    s2 = session._materialize(args[1], D, P, d)
    return forensic.product(s1, s2).at(P.query(d))


BUILTINS = {
    b.name: b
    for b in (
        Builtin("seq", _seq),
        Builtin("nth", _nth, 2),
        Builtin("len", _len, 1),
        Builtin("contextset", _contextset),
        Builtin("union", _union, 2),
        Builtin("intersection", _intersection, 2),
        Builtin("combine", _combine, 3, lazy=True),
        Builtin("product", _product, 3, lazy=True),
    )
}


def initial_env(implicit_dimension=True):
    """Builtins and markers, plus the default dimension ``d`` if requested."""
    entries = {name: Op(name) for name in BUILTINS}
    entries["bod"] = Const(BOD)
    entries["eod"] = Const(EOD)
    if implicit_dimension:
        entries[DEFAULT_DIMENSION] = Dim()
    return DefEnv(entries)


# substitution for call-by-name application

def substitute(e, mapping):
    """Replace free occurrences of the identifiers in ``mapping``."""
    if not mapping:
        return e
    if isinstance(e, Id):
        return mapping.get(e.name, e)
    if isinstance(e, (IntLit, BoolLit)):
        return e
    if isinstance(e, Dot):
        return e
    if isinstance(e, Apply):
        return Apply(substitute(e.callee, mapping), tuple(substitute(a, mapping) for a in e.args), e.pos)
    if isinstance(e, If):
        return If(substitute(e.cond, mapping), substitute(e.then, mapping), substitute(e.else_, mapping), e.pos)
    if isinstance(e, HashQuery):
        return e if e.dim is None else HashQuery(substitute(e.dim, mapping), e.pos)
    if isinstance(e, AtDim):
        return AtDim(substitute(e.body, mapping), substitute(e.dim, mapping), substitute(e.tag, mapping), e.pos)
    if isinstance(e, AtCtx):
        return AtCtx(substitute(e.body, mapping), substitute(e.ctx, mapping), e.pos)
    if isinstance(e, CtxLit):
        return CtxLit(tuple((substitute(d, mapping), substitute(v, mapping)) for d, v in e.pairs), e.pos)
    if isinstance(e, CtxSetLit):
        return CtxSetLit(tuple(substitute(c, mapping) for c in e.items), e.pos)
    if isinstance(e, UnOp):
        dim = None if e.dim is None else substitute(e.dim, mapping)
        return UnOp(e.op, substitute(e.operand, mapping), dim, e.pos)
    if isinstance(e, BinOp):
        dim = None if e.dim is None else substitute(e.dim, mapping)
        return BinOp(e.op, substitute(e.left, mapping), substitute(e.right, mapping), dim, e.pos)
    if isinstance(e, Where):
        inner = {k: v for k, v in mapping.items() if k not in {q.name for q in e.defs}}
        defs = []
        for q in e.defs:
            if isinstance(q, VarDef):
                q = VarDef(q.name, substitute(q.expr, inner), q.pos)
            elif isinstance(q, FuncDef):
                scope = {k: v for k, v in inner.items() if k not in q.formals}
                q = FuncDef(q.name, q.formals, substitute(q.expr, scope), q.pos)
            defs.append(q)
        return Where(substitute(e.body, inner), tuple(defs), e.pos)
    raise TypeError(f"not an expression: {e!r}")


# tracing

@dataclass
class TraceEntry:
    rule: str
    expr: str
    context: object
    value: object
    depth: int
    cached: bool = False

    def __str__(self):
        mark = " (cache hit)" if self.cached else ""
        value = "" if self.value is None else format_value(self.value)
        return f"{self.rule} | {self.expr} | {self.context} | {value}{mark}"


def _render(e):
    try:
        return " ".join(print_expr(e).split())
    except (TypeError, ValueError):
        return repr(e)


def format_trace(entries):
    return "\n".join("  " * t.depth + str(t) for t in entries)


def trace_tree(entries):
    """Rebuild the derivation forest from a post-order trace.

    Each node is a dict with rule, expr, context, value, cached and children.
    """
    stack = []
    for t in entries:
        children = []
        while stack and stack[-1][0] > t.depth:
            children.append(stack.pop()[1])
        children.reverse()
        node = {
            "rule": t.rule,
            "expr": t.expr,
            "context": str(t.context),
            "value": None if t.value is None else format_value(t.value),
            "cached": t.cached,
            "children": children,
        }
        stack.append((t.depth, node))
    return [node for _, node in stack]


def explain(session):
    """The ordered derivation log of a traced session."""
    return list(session.trace)


def run_deep(fn, *args):
    """Run ``fn`` on a thread with a large stack so deep derivations fit."""
    if getattr(threading.current_thread(), "_flucid_deep", False):
        return fn(*args)
    result = {}

    def target():
        threading.current_thread()._flucid_deep = True
        try:
            result["value"] = fn(*args)
        except BaseException as exc:  # re-raised on the calling thread
            result["error"] = exc

    old_limit = sys.getrecursionlimit()
    old_stack = threading.stack_size()
    try:
        threading.stack_size(_STACK_SIZE)
        sys.setrecursionlimit(max(old_limit, _RECURSION_LIMIT))
        worker = threading.Thread(target=target)
        worker.start()
        worker.join()
    finally:
        threading.stack_size(old_stack)
        sys.setrecursionlimit(old_limit)
    if "error" in result:
        raise result["error"]
    return result["value"]


class Session:
    """Evaluation state: the initial environment, variable cache and trace."""

    def __init__(self, defenv=None, trace=False, depth_limit=None, cache=True):
        self.defenv = defenv if defenv is not None else initial_env()
        self.cache = {}
        self.use_cache = cache
        self.tracing = trace
        self.trace = []
        self.depth_limit = depth_limit if depth_limit is not None else configured_depth_limit()
        self.steps = 0
        self._depth = 0
        self._active = set()
        self._scopes = {}

    # public entry points

    def eval(self, P, e, D=None):
        """Value of ``e`` at context ``P`` (a :class:`Context` or a mapping)."""
        P = P if isinstance(P, Context) else Context(P or {})
        D = self.defenv if D is None else D
        return run_deep(self._eval_top, e, D, P)

    def _eval_top(self, e, D, P):
        self.steps = 0
        self._depth = 0
        try:
            return self._eval(e, D, P)
        except RecursionError:
            raise EvalError(RESOURCE_LIMIT, "evaluation nested too deeply", P) from None

    def eval_stream(self, P, e, d, lo, hi, D=None):
        """Values of ``e`` at ``P † [d ↦ i]`` for ``lo <= i < hi``, cut at eod."""
        out = []
        for v in self.window(P, e, d, lo, hi, D):
            if is_eod(v) or (is_bod(v) and out):
                break
            if not is_bod(v):
                out.append(v)
        return BoundedStream(out)

    def window(self, P, e, d, lo, hi, D=None):
        """Raw values over ``[lo, hi)``, ending with the first eod if one occurs."""
        if lo > hi:
            raise ValueError(f"empty window {lo}..{hi}")
        P = P if isinstance(P, Context) else Context(P or {})
        D = self.defenv if D is None else D
        if not isinstance(D.get(d), Dim):
            raise EvalError(UNBOUND_DIMENSION, f"{d!r} is not a declared dimension", P)
        out = []
        for i in range(lo, hi):
            v = self.eval(P.bind(d, i), e, D)
            out.append(v)
            if is_eod(v):
                break
        return out

    def process_defs(self, D, P, defs):
        """Add one where clause's definitions; returns the extended (D, P)."""
        D2, dims = self._scope(D, defs, None)
        P2 = P.override({d: 0 for d in dims})
        if self.tracing:
            self._log_defs(defs, P2)
        return D2, P2

    # core

    def _eval(self, e, D, P):
        self.steps += 1
        if self.steps > self.depth_limit:
            raise EvalError(
                RESOURCE_LIMIT,
                f"more than {self.depth_limit} rule applications (ill-founded definition?)",
                P,
            )
        self._depth += 1
        try:
            rule, value, cached = self._dispatch[type(e)](self, e, D, P)
        except EvalError as err:
            if err.context is None:
                err.context = P
            if err.position is None and getattr(e, "pos", None) is not None:
                err.position = e.pos
            raise
        finally:
            self._depth -= 1
        if self.tracing:
            self.trace.append(TraceEntry(rule, _render(e), P, value, self._depth, cached))
        return value

    def _id(self, e, D, P):
        entry = D.get(e.name)
        if entry is None:
            raise EvalError(UNBOUND_IDENTIFIER, f"{e.name!r} is not defined", P)
        if isinstance(entry, Dim):
            return "E_did", Ident(e.name), False
        if isinstance(entry, Const):
            return "E_cid", entry.value, False
        if isinstance(entry, Op):
            return "E_opid", Ident(e.name), False
        if isinstance(entry, Func):
            return "E_fid", Ident(e.name), False
        return self._var(e.name, entry, P)

    def _var(self, name, entry, P):
        key = (entry, P)
        if self.use_cache and key in self.cache:
            return "E_vid", self.cache[key], True
        if key in self._active:
            raise EvalError(RESOURCE_LIMIT, f"{name!r} depends on itself at the same context", P)
        self._active.add(key)
        try:
            v = self._eval(entry.expr, entry.env, P)
        finally:
            self._active.discard(key)
        if self.use_cache:
            self.cache[key] = v
        return "E_vid", v, False

    def _literal(self, e, D, P):
        return "E_cid", e.value, False

    def _dot(self, e, D, P):
        path = dim_path(e)
        if path is None:
            raise EvalError(TYPE_ERROR, "only dimension names can be joined with '.'", P)
        parent, _, member = path.rpartition(".")
        return "E_E.did", Ident(dot_dimension(parent, member, D)), False

    def _apply(self, e, D, P):
        callee = self._eval(e.callee, D, P)
        if not isinstance(callee, Ident):
            raise EvalError(TYPE_ERROR, f"{format_value(callee)} cannot be applied", P)
        entry = D.get(callee.name)
        if isinstance(entry, Op):
            b = BUILTINS[entry.name]
            if b.arity is not None and len(e.args) != b.arity:
                raise EvalError(ARITY_ERROR, f"{b.name} takes {b.arity} arguments, got {len(e.args)}", P)
            try:
                if b.lazy:
                    v = b.fn(self, D, P, e.args)
                else:
                    v = b.fn(*(self._eval(a, D, P) for a in e.args))
            except TypeError as exc:
                raise EvalError(TYPE_ERROR, str(exc), P) from None
            return "E_op", v, False
        if isinstance(entry, Func):
            if len(e.args) != len(entry.formals):
                raise EvalError(
                    ARITY_ERROR,
                    f"{callee.name} takes {len(entry.formals)} arguments, got {len(e.args)}",
                    P,
                )
            body = substitute(entry.expr, dict(zip(entry.formals, e.args)))
            return "E_fct", self._eval(body, D, P), False
        raise EvalError(TYPE_ERROR, f"{callee.name!r} is not a function", P)

    def _if(self, e, D, P):
        c = self._eval(e.cond, D, P)
        if is_marker(c):
            return "E_c", c, False
        try:
            flag = truthy(c)
        except TypeError as exc:
            raise EvalError(TYPE_ERROR, str(exc), P) from None
        if flag:
            return "E_cT", self._eval(e.then, D, P), False
        return "E_cF", self._eval(e.else_, D, P), False

    def _dimension(self, dim, D, P):
        if dim is None:
            raise EvalError(UNBOUND_DIMENSION, "operator has no dimension", P)
        path = dim_path(dim)
        if path is not None and path not in D:
            raise EvalError(UNBOUND_DIMENSION, f"{path!r} is not a declared dimension", P)
        v = self._eval(dim, D, P)
        if not isinstance(v, Ident) or not isinstance(D.get(v.name), Dim):
            raise EvalError(TYPE_ERROR, f"{format_value(v)} is not a dimension", P)
        return v.name

    def _hash(self, e, D, P):
        if e.dim is None:
            return "E_#(cxt)", P, False
        return "E_tag", P.query(self._dimension(e.dim, D, P)), False

    def _tag(self, e, D, P):
        t = self._eval(e, D, P)
        if not is_marker(t) and not is_int(t):
            raise EvalError(TYPE_ERROR, f"tag must be an integer, got {format_value(t)}", P)
        return t

    def _at_dim(self, e, D, P):
        d = self._dimension(e.dim, D, P)
        t = self._tag(e.tag, D, P)
        if is_marker(t):
            return "E_at", t, False
        if t < 0:
            return "E_at", BOD, False
        return "E_at", self._eval(e.body, D, P.bind(d, t)), False

    def _at_ctx(self, e, D, P):
        c = self._eval(e.ctx, D, P)
        if is_marker(c):
            return "E_at(cxt)", c, False
        if isinstance(c, Context):
            return "E_at(cxt)", self._at_context(e.body, D, P, c), False
        if isinstance(c, ContextSet):
            return "E_at(cxt)", tuple(self._at_context(e.body, D, P, p) for p in c), False
        raise EvalError(TYPE_ERROR, f"{format_value(c)} is not a context", P)

    def _at_context(self, body, D, P, c):
        if any(t < 0 for t in c.values()):
            return BOD
        return self._eval(body, D, P.override(c))

    def _ctx_pairs(self, e, D, P):
        pairs = []
        for dim, v in e.pairs:
            d = self._dimension(dim, D, P)
            t = self._eval(v, D, P)
            if is_marker(t):
                raise EvalError(MARKER_ARITHMETIC, f"tag for {d!r} is {t}", P)
            pairs.append((d, t))
        try:
            return construct_context(pairs, D)
        except EvalError as err:
            err.context = P
            raise

    def _ctx_lit(self, e, D, P):
        return "E_construction(cxt)", self._ctx_pairs(e, D, P), False

    def _ctx_set(self, e, D, P):
        return "E_construction(cxt)", ContextSet(self._ctx_pairs(c, D, P) for c in e.items), False

    def _where(self, e, D, P):
        D2, dims = self._scope(D, e.defs, e)
        P2 = P.override({d: 0 for d in dims})
        if self.tracing:
            self._log_defs(e.defs, P2)
        return "E_w", self._eval(e.body, D2, P2), False

    def _scope(self, D, defs, node):
        key = None if node is None else (D.uid, id(node))
        if key is not None and key in self._scopes:
            _, D2, dims = self._scopes[key]
            return D2, dims
        entries, dims, variables = {}, [], []
        for q in defs:
            if q.name in entries:
                raise DesugarError(f"{q.name!r} is defined twice in one where clause", *(q.pos or (None, None)))
            if isinstance(q, DimDecl):
                entries[q.name] = Dim()
                dims.append(q.name)
            elif isinstance(q, VarDef):
                var = Var(q.expr)
                entries[q.name] = var
                variables.append(var)
            else:
                entries[q.name] = Func(q.formals, q.expr)
        _check_recursion(defs)
        D2 = D.override(entries)
        for var in variables:
            var.env = D2
        if key is not None:
            self._scopes[key] = (node, D2, dims)
        return D2, dims

    def _log_defs(self, defs, P):
        rules = {DimDecl: "Q_dim", VarDef: "Q_id", FuncDef: "Q_fid"}
        for q in defs:
            self.trace.append(TraceEntry(rules[type(q)], " ".join(print_def(q).split()), P, None, self._depth))
        if len(defs) > 1:
            self.trace.append(TraceEntry("QQ", f"{len(defs)} definitions", P, None, self._depth))

    # operators

    def _along(self, expr, D, P, d):
        def at(k):
            if k < 0:
                return BOD
            return self._eval(expr, D, P.bind(d, k))

        return indexed.IndexedStream(at)

    def _materialize(self, expr, D, P, d):
        try:
            return self._along(expr, D, P, d).extension()
        except RuntimeError as exc:
            raise EvalError(RESOURCE_LIMIT, str(exc), P) from None

    def _kernel(self, make, operands, e, D, P):
        d = self._dimension(e.dim, D, P)
        i = P.query(d)
        try:
            return make(*(self._along(x, D, P, d) for x in operands)).at(i)
        except TypeError as exc:
            raise EvalError(TYPE_ERROR, str(exc), P) from None
        except RuntimeError as exc:
            raise EvalError(RESOURCE_LIMIT, str(exc), P) from None

    def _unop(self, e, D, P):
        op = e.op
        if op in _UNARY_KERNELS:
            return "E_op", self._kernel(_UNARY_KERNELS[op], (e.operand,), e, D, P), False
        x = self._eval(e.operand, D, P)
        if op == "iseod":
            return "E_op", is_eod(x), False
        if op == "isbod":
            return "E_op", is_bod(x), False
        if is_marker(x):
            return "E_op", x, False
        try:
            if op == "-" or op == "neg":
                v = logic.neg(x)
            elif op == "not":
                v = logic.not_(x)
            else:
                raise EvalError(TYPE_ERROR, f"unknown operator {op!r}", P)
        except TypeError as exc:
            raise EvalError(TYPE_ERROR, str(exc), P) from None
        return "E_op", v, False

    def _binop(self, e, D, P):
        op = e.op
        if op in indexed.BINARY and op not in _LOGICAL:
            return "E_op", self._kernel(indexed.BINARY[op], (e.left, e.right), e, D, P), False
        a = self._eval(e.left, D, P)
        b = self._eval(e.right, D, P)
        m = _first_marker((a, b))
        if m is not None:
            return "E_op", m, False
        try:
            return "E_op", _apply_binary(op, a, b), False
        except ZeroDivisionError:
            raise EvalError(DIVISION_BY_ZERO, f"{format_value(a)} {op} 0", P) from None
        except TypeError as exc:
            raise EvalError(TYPE_ERROR, str(exc), P) from None

    _dispatch = {
        Id: _id,
        IntLit: _literal,
        BoolLit: _literal,
        Dot: _dot,
        Apply: _apply,
        If: _if,
        HashQuery: _hash,
        AtDim: _at_dim,
        AtCtx: _at_ctx,
        CtxLit: _ctx_lit,
        CtxSetLit: _ctx_set,
        Where: _where,
        UnOp: _unop,
        BinOp: _binop,
    }


_UNARY_KERNELS = {
    "first": indexed.i_first,
    "next": indexed.i_next,
    "prev": indexed.i_prev,
    "last": indexed.i_last,
    "second": indexed.i_second,
    "prelast": indexed.i_prelast,
}

_LOGICAL = ("and", "or", "xor")


def _ints(op, a, b):
    if not (is_int(a) and is_int(b)):
        raise TypeError(f"{op} expects integers, got {format_value(a)} and {format_value(b)}")


def _trunc_div(a, b):
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def _apply_binary(op, a, b):
    if op == "and":
        return logic.and_(a, b)
    if op == "or":
        return logic.or_(a, b)
    if op == "xor":
        return logic.not_(logic.or_(logic.and_(a, b), logic.not_(logic.or_(a, b))))
    if op == "==":
        return strict_eq(a, b)
    if op == "!=":
        return not strict_eq(a, b)
    _ints(op, a, b)
    if op in COMPARISON_OPS:
        return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]
    if op in ADDITIVE_OPS:
        return a + b if op == "+" else a - b
    if op in MULTIPLICATIVE_OPS:
        if op == "*":
            return a * b
        if b == 0:
            raise ZeroDivisionError
        q = _trunc_div(a, b)
        return q if op == "/" else a - b * q
    raise TypeError(f"unknown operator {op!r}")


def _check_recursion(defs):
    local = {q.name: q for q in defs if isinstance(q, (VarDef, FuncDef))}
    edges = {
        name: {n.name for n in walk(q.expr) if isinstance(n, Id)} & local.keys()
        for name, q in local.items()
    }
    for name, q in local.items():
        if not isinstance(q, FuncDef):
            continue
        seen, stack = set(), list(edges[name])
        while stack:
            n = stack.pop()
            if n == name:
                raise EvalError(RECURSION_FORBIDDEN, f"function {name!r} calls itself")
            if n not in seen:
                seen.add(n)
                stack.extend(edges[n])


class Program:
    """A parsed, desugared program ready to evaluate.

    A top-level ``where`` clause is processed once; its dimensions start at
    tag 0 and ``bindings`` override them per evaluation.
    """

    def __init__(self, source, trace=False, depth_limit=None, cache=True):
        ast = parse(source) if isinstance(source, str) else source
        self.ast = desugar(ast)
        declared = declared_dimensions(self.ast)
        implicit = not declared
        self.session = Session(initial_env(implicit), trace, depth_limit, cache)
        P = Context({DEFAULT_DIMENSION: 0}) if implicit else EMPTY
        if isinstance(self.ast, Where):
            self.defenv, self.context = run_deep(
                self.session.process_defs, self.session.defenv, P, self.ast.defs
            )
            self.body = self.ast.body
        else:
            self.defenv, self.context = self.session.defenv, P
            self.body = self.ast

    @property
    def dimensions(self):
        return [name for name, entry in self.defenv.items() if isinstance(entry, Dim)]

    def ambient(self, bindings=None):
        bindings = dict(bindings or {})
        for d, t in bindings.items():
            if not isinstance(self.defenv.get(d), Dim):
                raise EvalError(UNBOUND_DIMENSION, f"{d!r} is not a declared dimension", self.context)
            if not is_int(t):
                raise EvalError(TYPE_ERROR, f"tag for {d!r} must be an integer", self.context)
        return self.context.override(bindings)

    def evaluate(self, bindings=None):
        return self.session.eval(self.ambient(bindings), self.body, self.defenv)

    def stream(self, d, lo, hi, bindings=None):
        return self.session.eval_stream(self.ambient(bindings), self.body, d, lo, hi, self.defenv)

    def window(self, d, lo, hi, bindings=None):
        return self.session.window(self.ambient(bindings), self.body, d, lo, hi, self.defenv)

    def eval_expr(self, expr, bindings=None):
        """Evaluate another expression in this program's top-level scope."""
        e = desugar(parse(expr)) if isinstance(expr, str) else expr
        return self.session.eval(self.ambient(bindings), e, self.defenv)


def evaluate(source, bindings=None, **kwargs):
    """One-shot: the value of a program at its ambient context."""
    return Program(source, **kwargs).evaluate(bindings)
