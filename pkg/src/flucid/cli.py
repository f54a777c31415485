"""Command-line front end: ``flucid run | check | dump-ast | repl``.

Exit status is 0 on success, 1 when evaluation fails and 2 when the source
cannot be read, tokenized or parsed.
"""

import argparse
import json
import sys

from . import harness
from .context import Context, Dim
from .errors import EvalError, LexError, ParseError
from .evaluator import Program, Session, format_trace, initial_env, trace_tree
from .syntax import DimDecl, IntLit, Where, desugar, dump_ast, parse, parse_entry
from .values import format_value

EXIT_OK = 0
EXIT_EVAL = 1
EXIT_PARSE = 2


def parse_bindings(text):
    """``"d=3,e=0"`` -> ``{"d": 3, "e": 0}``"""
    bindings = {}
    if not text:
        return bindings
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, sep, tag = item.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"binding {item!r} is not of the form name=tag")
        try:
            bindings[name.strip()] = int(tag)
        except ValueError:
            raise argparse.ArgumentTypeError(f"tag in {item!r} is not an integer") from None
    return bindings


def parse_window(text):
    """``"0..10"`` -> ``(0, 10)``"""
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window {text!r} is not of the form lo..hi") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"window {text!r} is empty (lo > hi)")
    return lo, hi


def _read_source(args):
    if args.expr is not None:
        return args.expr
    if args.file is None:
        raise FileNotFoundError("no program given (pass a file or -e EXPR)")
    if args.file == "-":
        return sys.stdin.read()
    with open(args.file, encoding="utf-8") as fh:
        return fh.read()


def _print_trace(session, as_json, out):
    if as_json:
        print(json.dumps(trace_tree(session.trace), indent=2), file=out)
    else:
        print(format_trace(session.trace), file=out)


def cmd_run(args, out=None, err=None):
    out, err = out or sys.stdout, err or sys.stderr
    try:
        source = _read_source(args)
        program = Program(source, trace=args.trace or args.trace_json, depth_limit=args.depth)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    except (LexError, ParseError) as exc:
        print(f"syntax error: {exc}", file=err)
        return EXIT_PARSE
    except EvalError as exc:
        print(f"evaluation error: {exc}", file=err)
        return EXIT_EVAL
    try:
        if args.stream:
            lo, hi = args.window
            values = program.window(args.stream, lo, hi, args.ctx)
            text = " ".join(format_value(v) for v in values)
        else:
            text = format_value(program.evaluate(args.ctx))
    except EvalError as exc:
        print(f"evaluation error: {exc}", file=err)
        return EXIT_EVAL
    if args.trace or args.trace_json:
        _print_trace(program.session, args.trace_json, out)
    print(text, file=out)
    return EXIT_OK


def cmd_check(args, out=None, err=None):
    out, err = out or sys.stdout, err or sys.stderr
    only = None
    if args.only:
        only = [name for chunk in args.only for name in chunk.split(",") if name]
    try:
        report = harness.run_suites(seed=args.seed, n_cases=args.cases, only=only)
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    print(report, file=out)
    failed = sum(1 for r in report.results if not r.ok)
    print(f"{len(report.results) - failed} passed, {failed} failed", file=out)
    return EXIT_OK if report.ok else EXIT_EVAL


def cmd_dump_ast(args, out=None, err=None):
    out, err = out or sys.stdout, err or sys.stderr
    try:
        e = parse(_read_source(args))
        if args.desugared:
            e = desugar(e)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    except (LexError, ParseError) as exc:
        print(f"syntax error: {exc}", file=err)
        return EXIT_PARSE
    print(dump_ast(e), file=out)
    return EXIT_OK


class Repl:
    """Interactive session: definitions accumulate, expressions are evaluated."""

    PROMPT = "flucid> "

    def __init__(self, depth_limit=None, out=None, err=None):
        self.session = Session(initial_env(), depth_limit=depth_limit)
        self.defenv = self.session.defenv
        self.context = Context({"d": 0})
        self.dims = []
        self.out = out or sys.stdout
        self.err = err or sys.stderr

    def default_dimension(self):
        return self.dims[-1] if self.dims else "d"

    def handle(self, line):
        """Process one input line; returns False when the session should end."""
        line = line.strip()
        if not line:
            return True
        if line.startswith(":"):
            return self.command(line[1:].split())
        try:
            kind, item = parse_entry(line)
            if kind == "defs":
                new_dims = [q.name for q in item if isinstance(q, DimDecl)]
                default = new_dims[-1] if new_dims else self.default_dimension()
                wrapped = desugar(Where(IntLit(0), tuple(item)), default)
                self.defenv, self.context = self.session.process_defs(
                    self.defenv, self.context, wrapped.defs
                )
                self.dims.extend(q.name for q in wrapped.defs if isinstance(q, DimDecl))
                for q in wrapped.defs:
                    print(f"defined {q.name}", file=self.out)
            else:
                e = desugar(item, self.default_dimension())
                self.session.trace.clear()
                v = self.session.eval(self.context, e, self.defenv)
                if self.session.tracing:
                    print(format_trace(self.session.trace), file=self.out)
                print(format_value(v), file=self.out)
        except (LexError, ParseError) as exc:
            print(f"syntax error: {exc}", file=self.err)
        except EvalError as exc:
            print(f"evaluation error: {exc}", file=self.err)
        return True

    def command(self, words):
        if not words:
            return True
        cmd, rest = words[0], words[1:]
        if cmd in ("q", "quit"):
            return False
        if cmd == "ctx":
            if rest:
                try:
                    bindings = parse_bindings(",".join(rest))
                except argparse.ArgumentTypeError as exc:
                    print(f"error: {exc}", file=self.err)
                    return True
                for d in bindings:
                    if not isinstance(self.defenv.get(d), Dim):
                        print(f"error: {d!r} is not a declared dimension", file=self.err)
                        return True
                self.context = self.context.override(bindings)
            print(self.context, file=self.out)
            return True
        if cmd == "trace" and rest and rest[0] in ("on", "off"):
            self.session.tracing = rest[0] == "on"
            print(f"trace {rest[0]}", file=self.out)
            return True
        print("commands: :ctx [d=tag,...]  :trace on|off  :q", file=self.err)
        return True

    def loop(self, stdin=None):
        stdin = stdin or sys.stdin
        interactive = stdin.isatty()
        while True:
            if interactive:
                print(self.PROMPT, end="", file=self.out, flush=True)
            line = stdin.readline()
            if not line:
                return EXIT_OK
            if not self.handle(line):
                return EXIT_OK


def cmd_repl(args, out=None, err=None):
    out, err = out or sys.stdout, err or sys.stderr
    return Repl(args.depth, out, err).loop()


def build_parser():
    parser = argparse.ArgumentParser(prog="flucid", description="Forensic Lucid interpreter")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate a program")
    run.add_argument("file", nargs="?", help="program file ('-' for stdin)")
    run.add_argument("-e", "--expr", help="program text given inline")
    run.add_argument("--ctx", type=parse_bindings, default={}, help="dimension bindings, e.g. d=3,e=0")
    run.add_argument("--stream", metavar="DIM", help="print the extension along DIM")
    run.add_argument("--window", type=parse_window, default=(0, 10), help="tag range lo..hi (default 0..10)")
    run.add_argument("--trace", action="store_true", help="print the derivation log")
    run.add_argument("--trace-json", action="store_true", help="print the derivation tree as JSON")
    run.add_argument("--depth", type=int, default=None, help="limit on rule applications")
    run.set_defaults(func=cmd_run)

    check = sub.add_parser("check", help="run the verification suites")
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--cases", type=int, default=500)
    check.add_argument(
        "--only", action="append",
        help=f"suite(s) to run: {', '.join(harness.SUITES)} (repeat or comma-separate)",
    )
    check.set_defaults(func=cmd_check)

    dump = sub.add_parser("dump-ast", help="print the syntax tree of a program")
    dump.add_argument("file", nargs="?")
    dump.add_argument("-e", "--expr")
    dump.add_argument("--desugared", action="store_true", help="show the tree after desugaring")
    dump.set_defaults(func=cmd_dump_ast)

    repl = sub.add_parser("repl", help="interactive session")
    repl.add_argument("--depth", type=int, default=None)
    repl.set_defaults(func=cmd_repl)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
