"""Randomized cross-checks of the two operator implementations.

Every property below is a statement about finite streams: the classical
Lucid identities for ``first``/``next``/``fby``/``if``, agreement between the
recursive operators of :mod:`flucid.pipelined` and the ``@``/``#`` kernels of
:mod:`flucid.indexed`, the rank characterization of ``wvr`` and ``upon``,
the reverse/negated dualities, and the golden example table.

Operators are looked up by name at call time, so a patched module is checked
as patched.
"""

import random
from dataclasses import dataclass, field

from . import indexed, pipelined
from .indexed import IndexedStream
from .values import BoundedStream, format_stream, is_marker, reverse, seq_eq, stream, strict_eq, truthy

OPERATORS = (
    "first", "last", "next", "prev",
    "fby", "pby",
    "wvr", "rwvr", "nwvr", "nrwvr",
    "asa", "ala", "nasa", "nala",
    "upon", "rupon", "nupon", "nrupon",
    "neg", "not", "and", "or", "xor",
)
UNARY_OPERATORS = ("first", "last", "next", "prev", "neg", "not")

# the example table: X = 1..10, Y = T F F T F F T T F T

TABLE_X = stream(*range(1, 11))
TABLE_Y = stream(True, False, False, True, False, False, True, True, False, True)

# non-blank values of each row, in order
TABLE_ROWS = {
    "first": [1] * 10,
    "last": [10] * 10,
    "next": [2, 3, 4, 5, 6, 7, 8, 9, 10],
    "fby": [1, True, False, False, True, False, False, True, True, False, True],
    "pby": [True, False, False, True, False, False, True, True, False, True, 1],
    "wvr": [1, 4, 7, 8, 10],
    "rwvr": [10, 8, 7, 4, 1],
    "nwvr": [2, 3, 5, 6, 9],
    "nrwvr": [9, 6, 5, 3, 2],
    "asa": [1] * 10,
    "nasa": [2] * 10,
    "ala": [10] * 10,
    "nala": [9] * 10,
    "upon": [1, 2, 2, 2, 3, 3, 3, 4, 5, 5],
    "rupon": [10, 9, 9, 8, 7, 7, 7, 6, 6, 6],
    "nupon": [1, 1, 2, 3, 3, 4, 5, 5, 5, 6, 6],
    "nrupon": [10, 10, 9, 9, 9, 8, 7, 7, 6, 5, 5],
    "neg": [-1, -2, -3, -4, -5, -6, -7, -8, -9, -10],
    "not": [False, True, True, False, True, True, False, False, True, False],
    "and": [1, 0, 0, 1, 0, 0, 1, 1, 0, 1],
}

# the printed or/xor rows combine the integers bitwise; with logical
# connectives (a nonzero integer is true) the rows read as below instead
PRINTED_LOGIC_ROWS = {
    "or": [1, 2, 3, 5, 5, 6, 7, 9, 9, 11],
    "xor": [0, 2, 3, 5, 5, 6, 6, 9, 9, 11],
}
LOGICAL_ROWS = {
    "or": [1] * 10,
    "xor": [0, 1, 1, 0, 1, 1, 0, 0, 1, 0],
}

# the prev row shows only bod at index 0
TABLE_PREV_HEAD = "bod"


def table_operands(name):
    if name == "neg":
        return (TABLE_X,)
    if name == "not":
        return (TABLE_Y,)
    if name in UNARY_OPERATORS:
        return (TABLE_X,)
    return (TABLE_X, TABLE_Y)


# implementations

def p_op(name):
    return getattr(pipelined, "p_" + name)


def i_op(name):
    return getattr(indexed, "i_" + name)


def run_pipelined(name, *streams):
    return p_op(name)(*streams)


def run_indexed(name, *streams):
    return i_op(name)(*(IndexedStream.of(s) for s in streams)).extension()


def suffix(s, i):
    """``X^i``: the stream from position ``i`` on."""
    return BoundedStream(s.elements[i:])


# rank

class Rank:
    """``rank(i, Y)``: position of the (i+1)-th true element of ``Y``.

    ``rank(-1, Y)`` is -1; positions past the last true element are undefined
    and reported as None.
    """

    def __init__(self, y):
        self.y = y
        self._memo = {-1: -1}

    def __call__(self, i):
        if i < -1:
            raise ValueError("rank is defined from -1 on")
        if i in self._memo:
            return self._memo[i]
        before = self(i - 1)
        result = None
        if before is not None:
            for k in range(before + 1, len(self.y)):
                if truthy(self.y.elements[k]):
                    result = k
                    break
        self._memo[i] = result
        return result

    def sequence(self):
        out, i = [], 0
        while self(i) is not None:
            out.append(self(i))
            i += 1
        return out


def rank(i, y):
    return Rank(y)(i)


# generation

class StreamGen:
    """Deterministic random finite streams."""

    def __init__(self, seed=0, max_len=24, int_range=(-100, 100), bool_bias=0.5):
        self.seed = seed
        self.max_len = max_len
        self.int_range = tuple(int_range)
        self.bool_bias = bool_bias
        self.rng = random.Random(seed)

    def length(self):
        return self.rng.randint(0, self.max_len)

    def ints(self, n=None):
        n = self.length() if n is None else n
        lo, hi = self.int_range
        return BoundedStream(self.rng.randint(lo, hi) for _ in range(n))

    def bools(self, n=None):
        """Conditions: one in five all true, one in five all false."""
        n = self.length() if n is None else n
        mode = self.rng.random()
        if mode < 0.2:
            return BoundedStream([True] * n)
        if mode < 0.4:
            return BoundedStream([False] * n)
        return BoundedStream(self.rng.random() < self.bool_bias for _ in range(n))

    def pair(self, same_length=None):
        """(X, Y): integer data and a boolean condition, usually of equal length."""
        x = self.ints()
        if same_length is None:
            same_length = self.rng.random() < 0.75
        y = self.bools(len(x) if same_length else None)
        return x, y

    def indices(self, x, n=None):
        """A stream of valid positions into ``x``."""
        n = self.length() if n is None else n
        if not len(x):
            return BoundedStream()
        return BoundedStream(self.rng.randrange(len(x)) for _ in range(n))


# reporting

@dataclass
class PropertyResult:
    name: str
    cases: int
    failures: int = 0
    counterexample: object = None

    @property
    def ok(self):
        return self.failures == 0

    def line(self):
        status = "ok  " if self.ok else "FAIL"
        text = f"{status} {self.name:<44} cases={self.cases:<5} failures={self.failures}"
        if not self.ok:
            text += f"  first counterexample: {self.counterexample}"
        return text


@dataclass
class Report:
    results: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def extend(self, other):
        self.results.extend(other.results)
        self.notes.extend(other.notes)
        return self

    def lines(self):
        return [r.line() for r in self.results] + [f"note {n}" for n in self.notes]

    def __str__(self):
        return "\n".join(self.lines())


def _describe(case):
    parts = []
    for v in case:
        parts.append(format_stream(v) if isinstance(v, BoundedStream) else repr(v))
    return "(" + ", ".join(parts) + ")"


def _holds(prop, case):
    try:
        return bool(prop(*case))
    except Exception:
        return False


def shrink(prop, case):
    """Shorten stream arguments by prefix truncation while the failure persists."""
    case = list(case)
    changed = True
    while changed:
        changed = False
        for k, v in enumerate(case):
            if not isinstance(v, BoundedStream):
                continue
            for n in range(len(v)):
                trial = list(case)
                trial[k] = BoundedStream(v.elements[:n])
                if not _holds(prop, trial):
                    case = trial
                    changed = True
                    break
    return tuple(case)


def check_property(name, prop, cases):
    result = PropertyResult(name, 0)
    for case in cases:
        result.cases += 1
        if not _holds(prop, case):
            result.failures += 1
            if result.counterexample is None:
                result.counterexample = _describe(shrink(prop, case))
    return result


def _cases(gen, n_cases, make):
    return [make(gen) for _ in range(n_cases)]


def _pairs(gen, n_cases):
    return _cases(gen, n_cases, lambda g: g.pair())


def _equal_pairs(gen, n_cases):
    return _cases(gen, n_cases, lambda g: g.pair(same_length=True))


def _defined(s):
    return list(s)


def _same(a, b):
    return seq_eq(_defined(a), _defined(b))


# pointwise helpers for the element-level identities

def _indexed_at(s, i):
    return IndexedStream.of(s).at(i)


def _both(name, *streams):
    return run_pipelined(name, *streams), run_indexed(name, *streams)


# axioms

def _axiom_constant(x, y):
    c = indexed.const(7)
    return all(strict_eq(c.at(i), 7) for i in range(len(x) + 1))


def _axiom_plus(x, y):
    s = indexed.plus(IndexedStream.of(x), 3)
    return all(strict_eq(s.at(i), x.at(i) + 3) for i in range(len(x)))


def _axiom_first(x, y):
    return all(
        all(strict_eq(r.at(i), x.at(0)) for i in range(len(x)))
        for r in _both("first", x)
    )


def _axiom_next(x, y):
    return all(
        all(strict_eq(r.at(i), x.at(i + 1)) for i in range(len(x) - 1))
        for r in _both("next", x)
    )


def _axiom_fby_head(x, y):
    if not len(x):
        return True
    return all(strict_eq(r.at(0), x.at(0)) for r in _both("fby", x, y))


def _axiom_fby_tail(x, y):
    if not len(x):
        return True
    return all(
        all(strict_eq(r.at(i + 1), y.at(i)) for i in range(len(y)))
        for r in _both("fby", x, y)
    )


def _if_streams(c, x, y):
    return (
        pipelined.p_if(c, x, y),
        indexed.i_if(IndexedStream.of(c), IndexedStream.of(x), IndexedStream.of(y)).extension(),
    )


def _axiom_if_true(x, y):
    z = BoundedStream(v * 2 for v in x)
    c = BoundedStream([True] * len(x))
    return all(_same(r, x) for r in _if_streams(c, x, z))


def _axiom_if_false(x, y):
    z = BoundedStream(v * 2 for v in x)
    c = BoundedStream([False] * len(x))
    return all(_same(r, z) for r in _if_streams(c, x, z))


def _axiom_if_pointwise(x, y):
    n = min(len(x), len(y))
    z = BoundedStream(-v for v in x)
    for r in _if_streams(y, x, z):
        if len(r) != n:
            return False
        for i in range(n):
            expected = x.at(i) if y.at(i) else z.at(i)
            if not strict_eq(r.at(i), expected):
                return False
    return True


ELEMENT_AXIOMS = (
    ("constant stream [c]_i = c", _axiom_constant),
    ("[X+c]_i = [X]_i + c", _axiom_plus),
    ("[first X]_i = [X]_0", _axiom_first),
    ("[next X]_i = [X]_(i+1)", _axiom_next),
    ("[X fby Y]_0 = [X]_0", _axiom_fby_head),
    ("[X fby Y]_(i+1) = [Y]_i", _axiom_fby_tail),
    ("if true then X else Y = X (elementwise)", _axiom_if_true),
    ("if false then X else Y = Y (elementwise)", _axiom_if_false),
    ("[if C then X else Y]_i pointwise", _axiom_if_pointwise),
)


def _suffix_zero(x, y):
    return _same(suffix(x, 0), x)


def _suffix_head(x, y):
    return all(strict_eq(suffix(x, i).at(0), x.at(i)) for i in range(len(x)))


def _suffix_first(x, y):
    for i in range(len(x)):
        for r in _both("first", suffix(x, i)):
            if not all(strict_eq(v, x.at(i)) for v in r) or len(r) != len(x) - i:
                return False
    return True


def _suffix_next(x, y):
    return all(
        all(_same(r, suffix(x, i + 1)) for r in _both("next", suffix(x, i)))
        for i in range(len(x))
    )


def _next_fby(x, y):
    if not len(x):
        return True
    return all(
        _same(run_pipelined("next", r), y) and _same(run_indexed("next", r), y)
        for r in _both("fby", x, y)
    )


def _first_fby(x, y):
    p_lhs = run_pipelined("fby", run_pipelined("first", x), y)
    i_lhs = run_indexed("fby", run_indexed("first", x), y)
    return _same(p_lhs, run_pipelined("fby", x, y)) and _same(i_lhs, run_indexed("fby", x, y))


STREAM_AXIOMS = (
    ("X^0 = X", _suffix_zero),
    ("[X^i]_0 = [X]_i", _suffix_head),
    ("first X^i = [X]_i", _suffix_first),
    ("next X^i = X^(i+1)", _suffix_next),
    ("next (X fby Y) = Y", _next_fby),
    ("(first X) fby Y = X fby Y", _first_fby),
    ("if true then X else Y = X", _axiom_if_true),
    ("if false then X else Y = Y", _axiom_if_false),
)


def check_axioms(gen=None, n_cases=500):
    gen = gen or StreamGen()
    cases = _pairs(gen, n_cases)
    report = Report()
    for name, prop in ELEMENT_AXIOMS + STREAM_AXIOMS:
        report.results.append(check_property("axiom: " + name, prop, cases))
    return report


# propositions: agreement of the two implementations

def agree(name):
    def prop(x, y):
        return _same(run_pipelined(name, *_operands(name, x, y)), run_indexed(name, *_operands(name, x, y)))

    return prop


def _operands(name, x, y):
    if name == "not":
        return (y,)
    if name in UNARY_OPERATORS:
        return (x,)
    return (x, y)


def _hash_identity(*_):
    return all(indexed.hash_(i) == i for i in range(64)) and all(
        indexed.HASH.at(i) == i for i in range(64)
    )


def _at_identity(x, idx):
    return all(strict_eq(indexed.at_op(x, idx, i), x.at(idx.at(i))) for i in range(len(idx)))


CORE_AGREEMENT = ("first", "next", "fby", "wvr", "asa", "upon")


def check_propositions(gen=None, n_cases=500, operators=OPERATORS):
    gen = gen or StreamGen()
    cases = _pairs(gen, n_cases)
    report = Report()
    report.results.append(check_property("[#]_i = i for 0 <= i < 64", _hash_identity, [()]))
    index_cases = []
    for _ in range(n_cases):
        x = gen.ints(gen.rng.randint(1, gen.max_len))
        index_cases.append((x, gen.indices(x)))
    report.results.append(check_property("[X @ Y]_i = [X]_([Y]_i)", _at_identity, index_cases))
    for name in CORE_AGREEMENT:
        report.results.append(check_property(f"pipelined = indexed: {name}", agree(name), cases))
    for name in operators:
        if name in CORE_AGREEMENT:
            continue
        report.results.append(check_property(f"pipelined = indexed: {name}", agree(name), cases))
    # logical connectives also on two condition streams
    bool_cases = _cases(gen, n_cases, lambda g: (g.bools(), g.bools()))
    for name in ("and", "or", "xor"):
        report.results.append(check_property(f"pipelined = indexed: {name} (booleans)", agree(name), bool_cases))
    return report


# lemmas

def _wvr_rank(x, y):
    r = Rank(y)
    for impl in _both("wvr", x, y):
        for i, v in enumerate(impl):
            if r(i) is None or not strict_eq(v, x.at(r(i))):
                return False
        if len(impl) != len(r.sequence()):
            return False
    return True


def _t_is_rank(x, y):
    t, _ = indexed.wvr_index_streams(IndexedStream.of(y))
    seq = Rank(y).sequence()
    return all(t.at(i) == k for i, k in enumerate(seq)) and is_marker(t.at(len(seq)))


def _u_plateau(x, y):
    _, u = indexed.wvr_index_streams(IndexedStream.of(y))
    r = Rank(y)
    i = -1
    while r(i + 1) is not None:
        for j in range(r(i) + 1, r(i + 1) + 1):
            if u.at(j) != r(i + 1):
                return False
        i += 1
    return True


def _wvr_suffix(x, y):
    # (X wvr Y)^i = X^(r_i) wvr Y^(r_i)
    r = Rank(y)
    for name_impl in (run_pipelined, run_indexed):
        whole = name_impl("wvr", x, y)
        i = 0
        while r(i) is not None:
            if not _same(suffix(whole, i), name_impl("wvr", suffix(x, r(i)), suffix(y, r(i)))):
                return False
            i += 1
    return True


def _upon_index(x, y):
    w = indexed.upon_index_stream(IndexedStream.of(y))
    for impl in _both("upon", x, y):
        for i, v in enumerate(impl):
            if not strict_eq(v, x.at(w.at(i))):
                return False
    return True


def _upon_suffix(x, y):
    # (X upon Y)^i = X^([W]_i) upon Y^i
    w = indexed.upon_index_stream(IndexedStream.of(y))
    for impl in (run_pipelined, run_indexed):
        whole = impl("upon", x, y)
        for i in range(len(whole)):
            if not _same(suffix(whole, i), impl("upon", suffix(x, w.at(i)), suffix(y, i))):
                return False
    return True


LEMMAS = (
    ("wvr element i = X[rank(i, Y)]", _wvr_rank),
    ("internal T = rank sequence", _t_is_rank),
    ("internal U constant on rank gaps", _u_plateau),
    ("(X wvr Y)^i = X^r_i wvr Y^r_i", _wvr_suffix),
    ("upon element i = X[W_i]", _upon_index),
    ("(X upon Y)^i = X^W_i upon Y^i", _upon_suffix),
)


def check_lemmas(gen=None, n_cases=500):
    gen = gen or StreamGen()
    cases = _equal_pairs(gen, n_cases)
    report = Report()
    for name, prop in LEMMAS:
        report.results.append(check_property("lemma: " + name, prop, cases))
    return report


# dualities

def _not(y):
    return pipelined.p_not(y)


DUALITIES = (
    ("rwvr = reverse . wvr", lambda f, x, y: _same(f("rwvr", x, y), reverse(f("wvr", x, y)))),
    ("nrwvr = reverse . nwvr", lambda f, x, y: _same(f("nrwvr", x, y), reverse(f("nwvr", x, y)))),
    ("rupon X Y = upon (rev X) (rev Y)", lambda f, x, y: _same(f("rupon", x, y), f("upon", reverse(x), reverse(y)))),
    ("nrupon X Y = nupon (rev X) (rev Y)", lambda f, x, y: _same(f("nrupon", x, y), f("nupon", reverse(x), reverse(y)))),
    ("nwvr X Y = wvr X (not Y)", lambda f, x, y: _same(f("nwvr", x, y), f("wvr", x, _not(y)))),
    ("nrwvr X Y = rwvr X (not Y)", lambda f, x, y: _same(f("nrwvr", x, y), f("rwvr", x, _not(y)))),
    ("nasa X Y = asa X (not Y)", lambda f, x, y: _same(f("nasa", x, y), f("asa", x, _not(y)))),
    ("nala X Y = ala X (not Y)", lambda f, x, y: _same(f("nala", x, y), f("ala", x, _not(y)))),
    ("nupon X Y = upon X (not Y)", lambda f, x, y: _same(f("nupon", x, y), f("upon", x, _not(y)))),
    ("nrupon X Y = rupon X (not Y)", lambda f, x, y: _same(f("nrupon", x, y), f("rupon", x, _not(y)))),
)


def check_dualities(gen=None, n_cases=500):
    gen = gen or StreamGen()
    cases = _equal_pairs(gen, n_cases)
    report = Report()
    for name, law in DUALITIES:
        def prop(x, y, law=law):
            return law(run_pipelined, x, y) and law(run_indexed, x, y)

        report.results.append(check_property("duality: " + name, prop, cases))
    for name in ("rupon", "nrupon"):
        forward = name.replace("r", "", 1)

        def prop(name=name, forward=forward):
            expected = TABLE_ROWS[name]
            via_reverse = run_indexed(forward, reverse(TABLE_X), reverse(TABLE_Y))
            return seq_eq(via_reverse, expected) and seq_eq(run_pipelined(forward, reverse(TABLE_X), reverse(TABLE_Y)), expected)

        report.results.append(check_property(f"duality: {name} table row via reversal", prop, [()]))
    return report


# golden table

def check_table1():
    report = Report()
    for name, expected in TABLE_ROWS.items():
        args = table_operands(name)

        def prop(name=name, args=args, expected=expected):
            return seq_eq(run_pipelined(name, *args), expected) and seq_eq(run_indexed(name, *args), expected)

        report.results.append(check_property(f"table: X {name} Y", prop, [()]))

    def prev_head():
        return indexed.i_prev(IndexedStream.of(TABLE_X)).at(0) is indexed.BOD

    report.results.append(check_property("table: prev X is bod at 0", prev_head, [()]))
    for name, expected in LOGICAL_ROWS.items():
        def prop(name=name, expected=expected):
            return seq_eq(run_pipelined(name, TABLE_X, TABLE_Y), expected) and seq_eq(
                run_indexed(name, TABLE_X, TABLE_Y), expected
            )

        report.results.append(check_property(f"table: X {name} Y (logical)", prop, [()]))
        printed = PRINTED_LOGIC_ROWS[name]
        if not seq_eq(expected, printed):
            report.notes.append(
                f"X {name} Y: printed row {printed} combines bits; logical result is {expected}"
            )
    return report


SUITES = {
    "axioms": check_axioms,
    "propositions": check_propositions,
    "lemmas": check_lemmas,
    "dualities": check_dualities,
    "table1": check_table1,
}


def run_suites(seed=0, n_cases=500, only=None):
    """Run the named suites (all by default) and merge their reports."""
    names = list(SUITES) if not only else list(only)
    report = Report()
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        if name == "table1":
            report.extend(check_table1())
        else:
            report.extend(SUITES[name](StreamGen(seed), n_cases))
    return report
