"""Concrete syntax: tokenizer, parser, printer and desugarer."""

from .ast import *  # noqa: F401,F403
from .desugar import declared_dimensions, default_dimension, desugar
from .lexer import Token, tokenize
from .parser import Parser, parse, parse_entry
from .printer import dump_ast, print_def, print_expr
