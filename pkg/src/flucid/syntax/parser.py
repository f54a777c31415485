"""Recursive-descent parser.

Binding strength, loosest first::

    where            postfix
    @  @.d           left
    fby pby          right
    wvr ... nrupon   left
    or xor           left
    and              left
    not neg          prefix
    == != < <= > >=  non-associative
    + -              left
    * / %            left
    first next ...   prefix (also iseod, isbod, unary minus)
    f(..)  a.b       postfix
"""

from ..errors import ParseError
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
    path_expr,
)
from .lexer import tokenize


class Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    # token helpers

    @property
    def tok(self):
        return self.tokens[self.i]

    def peek(self, k=1):
        j = min(self.i + k, len(self.tokens) - 1)
        return self.tokens[j]

    def advance(self):
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def is_sym(self, *texts):
        return self.tok.kind == "sym" and self.tok.text in texts

    def is_kw(self, *texts):
        return self.tok.kind == "kw" and self.tok.text in texts

    def fail(self, message, expected=()):
        t = self.tok
        raise ParseError(f"{message}, found {t}", t.line, t.col, expected)

    def expect_sym(self, text):
        if not self.is_sym(text):
            self.fail(f"expected {text!r}", {text})
        return self.advance()

    def expect_kw(self, text):
        if not self.is_kw(text):
            self.fail(f"expected {text!r}", {text})
        return self.advance()

    def expect_ident(self):
        if self.tok.kind != "ident":
            self.fail("expected an identifier", {"identifier"})
        return self.advance()

    @staticmethod
    def pos_of(t):
        return (t.line, t.col)

    # entry points

    def parse_program(self):
        e = self.parse_expr()
        if self.tok.kind != "eof":
            self.fail("unexpected input after expression", {"end of input", "where"})
        return e

    def parse_expr(self):
        e = self.parse_at()
        while self.is_kw("where"):
            t = self.advance()
            defs = self.parse_defs()
            self.expect_kw("end")
            e = Where(e, tuple(defs), self.pos_of(t))
        return e

    def parse_defs(self, until=("end",)):
        defs = []
        while True:
            while self.is_sym(";"):
                self.advance()
            if self.tok.kind == "eof" or self.is_kw(*until):
                return defs
            defs.extend(self.parse_def())

    def parse_def(self):
        t = self.tok
        if self.is_kw("dimension"):
            self.advance()
            decls = [DimDecl(self.parse_dim_name(), self.pos_of(self.tok))]
            while self.is_sym(","):
                self.advance()
                decls.append(DimDecl(self.parse_dim_name(), self.pos_of(self.tok)))
            return decls
        if t.kind != "ident":
            self.fail("expected a definition", {"dimension", "identifier", "end"})
        name = self.advance().text
        if self.is_sym("("):
            self.advance()
            formals = []
            if not self.is_sym(")"):
                formals.append(self.expect_ident().text)
                while self.is_sym(","):
                    self.advance()
                    formals.append(self.expect_ident().text)
            self.expect_sym(")")
            self.expect_sym("=")
            return [FuncDef(name, tuple(formals), self.parse_expr(), self.pos_of(t))]
        self.expect_sym("=")
        return [VarDef(name, self.parse_expr(), self.pos_of(t))]

    def parse_dim_name(self):
        parts = [self.expect_ident().text]
        while self.is_sym(".") and self.peek().kind == "ident":
            self.advance()
            parts.append(self.advance().text)
        return ".".join(parts)

    def parse_dim_path(self):
        t = self.tok
        return path_expr(self.parse_dim_name(), self.pos_of(t))

    def parse_suffix(self):
        """Optional ``.d`` after an operator keyword."""
        if self.is_sym("."):
            self.advance()
            return self.parse_dim_path()
        return None

    # expression levels

    def parse_at(self):
        e = self.parse_fby()
        while self.is_sym("@"):
            t = self.advance()
            if self.is_sym("."):
                self.advance()
                dim = self.parse_dim_path()
                e = AtDim(e, dim, self.parse_fby(), self.pos_of(t))
            else:
                e = AtCtx(e, self.parse_fby(), self.pos_of(t))
        return e

    def parse_fby(self):
        left = self.parse_filter()
        if self.is_kw(*FBY_OPS):
            t = self.advance()
            dim = self.parse_suffix()
            right = self.parse_fby()
            return BinOp(t.text, left, right, dim, self.pos_of(t))
        return left

    def _left_assoc(self, operand, is_op, with_suffix):
        left = operand()
        while is_op():
            t = self.advance()
            dim = self.parse_suffix() if with_suffix else None
            left = BinOp(t.text, left, operand(), dim, self.pos_of(t))
        return left

    def parse_filter(self):
        return self._left_assoc(self.parse_or, lambda: self.is_kw(*FILTER_OPS), True)

    def parse_or(self):
        return self._left_assoc(self.parse_and, lambda: self.is_kw(*OR_OPS), True)

    def parse_and(self):
        return self._left_assoc(self.parse_not, lambda: self.is_kw(*AND_OPS), True)

    def parse_not(self):
        if self.is_kw(*LOGICAL_PREFIX):
            t = self.advance()
            dim = self.parse_suffix()
            return UnOp(t.text, self.parse_not(), dim, self.pos_of(t))
        return self.parse_comparison()

    def parse_comparison(self):
        left = self.parse_additive()
        if self.is_sym(*COMPARISON_OPS):
            t = self.advance()
            return BinOp(t.text, left, self.parse_additive(), None, self.pos_of(t))
        return left

    def parse_additive(self):
        return self._left_assoc(self.parse_multiplicative, lambda: self.is_sym(*ADDITIVE_OPS), False)

    def parse_multiplicative(self):
        return self._left_assoc(self.parse_prefix, lambda: self.is_sym(*MULTIPLICATIVE_OPS), False)

    def parse_prefix(self):
        t = self.tok
        if self.is_kw(*PREFIX_STREAM_OPS):
            self.advance()
            dim = self.parse_suffix()
            return UnOp(t.text, self.parse_prefix(), dim, self.pos_of(t))
        if self.is_kw(*MARKER_TESTS):
            self.advance()
            return UnOp(t.text, self.parse_prefix(), None, self.pos_of(t))
        if self.is_sym("-"):
            self.advance()
            return UnOp("-", self.parse_prefix(), None, self.pos_of(t))
        return self.parse_postfix()

    def parse_postfix(self):
        e = self.parse_primary()
        while True:
            if self.is_sym("("):
                t = self.advance()
                args = []
                if not self.is_sym(")"):
                    args.append(self.parse_expr())
                    while self.is_sym(","):
                        self.advance()
                        args.append(self.parse_expr())
                self.expect_sym(")")
                e = Apply(e, tuple(args), self.pos_of(t))
            elif self.is_sym(".") and isinstance(e, (Id, Dot)) and self.peek().kind == "ident":
                t = self.advance()
                e = Dot(e, self.advance().text, self.pos_of(t))
            else:
                return e

    def parse_primary(self):
        t = self.tok
        pos = self.pos_of(t)
        if t.kind == "int":
            self.advance()
            return IntLit(int(t.text), pos)
        if t.kind == "ident":
            self.advance()
            return Id(t.text, pos)
        if self.is_kw("true", "T"):
            self.advance()
            return BoolLit(True, pos)
        if self.is_kw("false", "F"):
            self.advance()
            return BoolLit(False, pos)
        if self.is_kw("if"):
            return self.parse_if()
        if self.is_sym("("):
            self.advance()
            e = self.parse_expr()
            self.expect_sym(")")
            return e
        if self.is_sym("["):
            return self.parse_context()
        if self.is_sym("{"):
            self.advance()
            items = [self.parse_context()]
            while self.is_sym(","):
                self.advance()
                items.append(self.parse_context())
            self.expect_sym("}")
            return CtxSetLit(tuple(items), pos)
        if self.is_sym("#"):
            self.advance()
            if self.is_sym("."):
                self.advance()
                return HashQuery(self.parse_dim_path(), pos)
            return HashQuery(None, pos)
        self.fail(
            "expected an expression",
            {"identifier", "integer", "true", "false", "if", "(", "[", "{", "#"},
        )

    def parse_if(self):
        t = self.expect_kw("if")
        cond = self.parse_expr()
        self.expect_kw("then")
        then = self.parse_expr()
        if self.is_sym(";"):
            self.advance()
        self.expect_kw("else")
        else_ = self.parse_expr()
        if self.is_sym(";"):
            self.advance()
        self.expect_kw("fi")
        return If(cond, then, else_, self.pos_of(t))

    def parse_context(self):
        t = self.expect_sym("[")
        pairs = []
        if not self.is_sym("]"):
            pairs.append(self.parse_pair())
            while self.is_sym(","):
                self.advance()
                pairs.append(self.parse_pair())
        self.expect_sym("]")
        return CtxLit(tuple(pairs), self.pos_of(t))

    def parse_pair(self):
        dim = self.parse_dim_path()
        self.expect_sym(":")
        return (dim, self.parse_at())


def parse(source_or_tokens):
    """Parse a whole program (an expression, usually ending in a where clause)."""
    tokens = tokenize(source_or_tokens) if isinstance(source_or_tokens, str) else source_or_tokens
    return Parser(tokens).parse_program()


def parse_entry(source):
    """Parse one interactive entry: either definitions or an expression.

    Returns ``("defs", [QDef, ...])`` or ``("expr", Expr)``.
    """
    tokens = tokenize(source)
    p = Parser(tokens)
    try:
        defs = p.parse_defs(until=())
        if p.tok.kind == "eof" and defs:
            return "defs", defs
    except ParseError:
        pass
    return "expr", Parser(tokens).parse_program()
