"""Stream operators defined by random access through ``@`` and ``#``.

An :class:`IndexedStream` is a function from an integer tag to a value.  Every
operator below builds a new one out of ``at`` lookups on its operands and the
tag stream ``#``, mirroring the iterative Lucid definitions (``next X = X @
(# + 1)``, ``X wvr Y = X @ T`` with the auxiliary streams ``T``/``U``, and so
on).  Nothing here looks at the pipelined implementation.

Streams are finite: operands answer bod below tag 0 and eod past their end,
and every operator result reaches eod past its own extent.  The evaluator uses
these same kernels, passing accessors that evaluate expressions on demand.
"""

from . import logic
from .values import (
    BOD,
    EOD,
    BoundedStream,
    is_bod,
    is_eod,
    is_int,
    is_marker,
    truthy,
)

SCAN_LIMIT = 1_000_000


class IndexedStream:
    """A memoized tag -> value function."""

    __slots__ = ("_fn", "_memo", "name")

    def __init__(self, fn, name=None):
        self._fn = fn
        self._memo = {}
        self.name = name

    @classmethod
    def of(cls, s):
        if isinstance(s, IndexedStream):
            return s
        if not isinstance(s, BoundedStream):
            s = BoundedStream(s)
        return cls(s.at, name="source")

    def at(self, i):
        try:
            return self._memo[i]
        except KeyError:
            v = self._memo[i] = self._fn(i)
            return v

    __call__ = at

    def extension(self, limit=SCAN_LIMIT):
        """Materialize the defined region as a :class:`BoundedStream`.

        Leading bod slots (as produced by ``prev``) are skipped; the first
        marker after that ends the stream.
        """
        out = []
        i = 0
        while i < limit:
            v = self.at(i)
            if is_bod(v) and not out:
                i += 1
                continue
            if is_marker(v):
                return BoundedStream(out)
            out.append(v)
            i += 1
        raise RuntimeError(f"stream did not end within {limit} tags")

    def __repr__(self):
        return f"IndexedStream({self.name or self._fn!r})"


def defined_values(s):
    return list(IndexedStream.of(s).extension())


def hash_(i):
    """Value of ``#`` at tag ``i``."""
    if i < 0:
        return BOD
    return i


HASH = IndexedStream(hash_, name="#")


def eod_position(x, limit=SCAN_LIMIT):
    """Smallest tag k >= 0 at which ``x`` answers eod."""
    x = IndexedStream.of(x)
    k = 0
    while k < limit:
        if is_eod(x.at(k)):
            return k
        k += 1
    raise RuntimeError(f"no eod within {limit} tags")


def at_tag(x, t):
    """``x`` read at tag ``t``, with markers and negative tags mapped to markers."""
    if is_marker(t):
        return t
    if not is_int(t):
        raise TypeError(f"tag must be an integer, got {t!r}")
    if t < 0:
        return BOD
    return x.at(t)


def at_op(x, y, i):
    """``[X @ Y]_i``: ``X`` read at the tag ``Y`` holds at ``i``."""
    return at_tag(IndexedStream.of(x), IndexedStream.of(y).at(i))


def at_stream(x, y):
    x, y = IndexedStream.of(x), IndexedStream.of(y)
    return IndexedStream(lambda i: at_tag(x, y.at(i)), name="@")


def const(c):
    return IndexedStream(lambda i: c, name=f"const {c!r}")


def plus(x, k):
    """Pointwise ``X + k`` with marker propagation."""
    x = IndexedStream.of(x)

    def fn(i):
        v = x.at(i)
        return v if is_marker(v) else v + k

    return IndexedStream(fn, name=f"+{k}")


def _within(x, s):
    # s, cut to the tags where x itself is defined
    def fn(i):
        v = x.at(i)
        return v if is_marker(v) else s.at(i)

    return IndexedStream(fn)


def _constant_over(x, v):
    def fn(i):
        u = x.at(i)
        if is_marker(u):
            return u
        return EOD if is_marker(v) else v

    return IndexedStream(fn)


def _ended(s):
    # reverse traversals: once the result has hit a marker it stays ended
    def fn(i):
        if i > 0 and is_marker(s.at(i - 1)):
            return EOD
        return s.at(i)

    return IndexedStream(fn)


# first / last / next / prev

def i_first(x):
    """first X = X @ 0, over the tags where X is defined."""
    x = IndexedStream.of(x)
    return _within(x, at_stream(x, const(0)))


def i_last(x):
    """The element just before eod, over the tags where X is defined."""
    x = IndexedStream.of(x)

    def fn(i):
        v = x.at(i)
        if is_marker(v):
            return v
        return at_tag(x, eod_position(x) - 1)

    return IndexedStream(fn, name="last")


def i_next(x):
    """next X = X @ (# + 1)"""
    return at_stream(x, plus(HASH, 1))


def i_prev(x):
    """prev X = X @ (# - 1), over the tags where X is defined."""
    x = IndexedStream.of(x)
    return _within(x, at_stream(x, plus(HASH, -1)))


def i_second(x):
    return i_first(i_next(x))


def i_prelast(x):
    return i_last(i_prev(x))


# fby / pby

def i_fby(x, y):
    """X fby Y = if # <= 0 then X else Y @ (# - 1)"""
    x, y = IndexedStream.of(x), IndexedStream.of(y)
    shifted = at_stream(y, plus(HASH, -1))

    def fn(i):
        return x.at(i) if hash_(i) is BOD or hash_(i) <= 0 else shifted.at(i)

    return IndexedStream(fn, name="fby")


def i_pby(x, y):
    """X pby Y = if iseod Y then (first X, once) else Y"""
    x, y = IndexedStream.of(x), IndexedStream.of(y)

    def fn(i):
        if i < 0:
            return BOD
        v = y.at(i)
        if not is_eod(v):
            return v
        if is_eod(y.at(i - 1)):
            return EOD
        return at_tag(x, 0)

    return IndexedStream(fn, name="pby")


# whenever family

def _holds(negate):
    if negate:
        return lambda v: not truthy(v)
    return truthy


def wvr_index_streams(y, negate=False):
    """The auxiliary streams ``(T, U)`` of ``X wvr Y``.

    ``U = if Y then # else next U``: the next qualifying tag at or after ``#``.
    ``T = U fby U @ (T + 1)``: the tag of the ``i``-th qualifying element.
    """
    y = IndexedStream.of(y)
    holds = _holds(negate)

    def u_fn(j):
        k = j
        while True:
            v = y.at(k)
            if is_marker(v):
                return v
            if holds(v):
                return k
            k += 1

    u = IndexedStream(u_fn, name="U")
    t = IndexedStream(None, name="T")

    def t_fn(i):
        if i <= 0:
            return u.at(i)
        return at_tag(u, _plus1(t.at(i - 1)))

    t._fn = t_fn
    return t, u


def rwvr_index_streams(y, negate=False, x=None):
    """The auxiliary streams ``(T, U)`` of ``X rwvr Y``.

    ``U = if Y then # else prev U``: the last qualifying tag at or before ``#``.
    ``T = U pby U @ (T - 1)``: starts from the end of ``Y`` (or of ``X`` if
    that is shorter) and walks back.
    """
    y = IndexedStream.of(y)
    x = None if x is None else IndexedStream.of(x)
    holds = _holds(negate)

    def u_fn(j):
        k = j
        while True:
            v = y.at(k)
            if is_marker(v):
                return v
            if holds(v):
                return k
            k -= 1

    u = IndexedStream(u_fn, name="U")
    t = IndexedStream(None, name="T")

    def t_fn(i):
        if i < 0:
            return BOD
        if i == 0:
            end = eod_position(y) if x is None else min(eod_position(x), eod_position(y))
            return at_tag(u, end - 1)
        prev = t.at(i - 1)
        if is_marker(prev):
            return EOD
        return at_tag(u, prev - 1)

    t._fn = t_fn
    return t, u


def _plus1(v):
    return v if is_marker(v) else v + 1


def i_wvr(x, y):
    t, _ = wvr_index_streams(y)
    return at_stream(x, t)


def i_nwvr(x, y):
    t, _ = wvr_index_streams(y, negate=True)
    return at_stream(x, t)


def i_rwvr(x, y):
    t, _ = rwvr_index_streams(y, x=x)
    return _ended(at_stream(x, t))


def i_nrwvr(x, y):
    t, _ = rwvr_index_streams(y, negate=True, x=x)
    return _ended(at_stream(x, t))


# as soon as / as late as

def i_asa(x, y):
    """first (X wvr Y), spread over the tags of X"""
    x = IndexedStream.of(x)
    return _constant_over(x, i_wvr(x, y).at(0))


def i_nasa(x, y):
    x = IndexedStream.of(x)
    return _constant_over(x, i_nwvr(x, y).at(0))


def _last_of(s):
    return at_tag(s, eod_position(s) - 1)


def i_ala(x, y):
    """last (X wvr Y), spread over the tags of X"""
    x = IndexedStream.of(x)
    return _constant_over(x, _last_of(i_wvr(x, y)))


def i_nala(x, y):
    x = IndexedStream.of(x)
    return _constant_over(x, _last_of(i_nwvr(x, y)))


# upon family

def upon_index_stream(y, negate=False):
    """``W = 0 fby (if Y then (W + 1) else W)``.

    An advance on the last element of ``Y`` runs past the data and yields eod.
    """
    y = IndexedStream.of(y)
    holds = _holds(negate)
    w = IndexedStream(None, name="W")

    def w_fn(i):
        if i < 0:
            return BOD
        if i == 0:
            return 0
        v = y.at(i - 1)
        if is_marker(v):
            return v
        if holds(v):
            if is_eod(y.at(i)):
                return EOD
            return _plus1(w.at(i - 1))
        return w.at(i - 1)

    w._fn = w_fn
    return w


def rupon_index_stream(y, negate=False):
    """``W = 0 pby (if Y then (W - 1) else W)``: offsets back from the end.

    ``Y`` is read from its last element towards its first; an advance on the
    first element runs off the front of the data and yields bod.
    """
    y = IndexedStream.of(y)
    holds = _holds(negate)
    w = IndexedStream(None, name="W")

    def w_fn(i):
        if i < 0:
            return BOD
        if i == 0:
            return 0
        k = eod_position(y) - i
        v = y.at(k)
        if is_marker(v):
            return v
        if holds(v):
            if is_bod(y.at(k - 1)):
                return BOD
            prev = w.at(i - 1)
            return prev if is_marker(prev) else prev - 1
        return w.at(i - 1)

    w._fn = w_fn
    return w


def i_upon(x, y):
    return at_stream(x, upon_index_stream(y))


def i_nupon(x, y):
    return at_stream(x, upon_index_stream(y, negate=True))


def _from_end(x, w):
    x = IndexedStream.of(x)

    def fn(i):
        off = w.at(i)
        if is_marker(off):
            return off
        return at_tag(x, eod_position(x) - 1 + off)

    return _ended(IndexedStream(fn))


def i_rupon(x, y):
    return _from_end(x, rupon_index_stream(y))


def i_nrupon(x, y):
    return _from_end(x, rupon_index_stream(y, negate=True))


# pointwise

def _pointwise(op, *streams):
    streams = [IndexedStream.of(s) for s in streams]

    def fn(i):
        vals = [s.at(i) for s in streams]
        for v in vals:
            if is_marker(v):
                return v
        return op(*vals)

    return IndexedStream(fn, name=op.__name__)


def i_neg(x):
    return _pointwise(logic.neg, x)


def i_not(x):
    return _pointwise(logic.not_, x)


def i_and(x, y):
    return _pointwise(logic.and_, x, y)


def i_or(x, y):
    return _pointwise(logic.or_, x, y)


def i_xor(x, y):
    """X xor Y = not ((X and Y) or not (X or Y))"""
    return i_not(i_or(i_and(x, y), i_not(i_or(x, y))))


def i_if(c, x, y):
    """[if C then X else Y]_i = if [C]_i then [X]_i else [Y]_i"""
    c, x, y = IndexedStream.of(c), IndexedStream.of(x), IndexedStream.of(y)

    def fn(i):
        v = c.at(i)
        if is_marker(v):
            return v
        return x.at(i) if truthy(v) else y.at(i)

    return IndexedStream(fn, name="if")


UNARY = {
    "first": i_first,
    "last": i_last,
    "next": i_next,
    "prev": i_prev,
    "neg": i_neg,
    "not": i_not,
}

BINARY = {
    "fby": i_fby,
    "pby": i_pby,
    "wvr": i_wvr,
    "rwvr": i_rwvr,
    "nwvr": i_nwvr,
    "nrwvr": i_nrwvr,
    "asa": i_asa,
    "ala": i_ala,
    "nasa": i_nasa,
    "nala": i_nala,
    "upon": i_upon,
    "rupon": i_rupon,
    "nupon": i_nupon,
    "nrupon": i_nrupon,
    "and": i_and,
    "or": i_or,
    "xor": i_xor,
}
