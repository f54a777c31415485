"""Stream operators in their original recursive (pipelined) form.

Each operator here is written as structural recursion over finite streams,
following the head/tail definitions of classical Lucid: ``first`` is the head,
``next`` the tail and ``fby`` the cons.  The reverse operators recurse from the
end of the stream instead.  This module is the reference side of the
equivalence checks against :mod:`flucid.indexed`; it shares nothing with it
beyond the element-level logic in :mod:`flucid.logic`.

Recursion depth grows with stream length, so these are meant for the short
streams used in testing, not for long inputs.
"""

from . import logic
from .values import BoundedStream, truthy


def _wrap(fn):
    def op(*streams):
        return BoundedStream(fn(*(tuple(s) for s in streams)))

    op.__name__ = fn.__name__.lstrip("_")
    op.__qualname__ = op.__name__
    op.__doc__ = fn.__doc__
    return op


# head/tail primitives over tuples

def _first(x):
    return x[:1]


def _next(x):
    return x[1:]


def _prev(x):
    return x[:-1]


def _lastel(x):
    return x[-1:]


def _fby(x, y):
    if not x:
        return ()
    return x[:1] + y


def _constant(like, head):
    # a constant stream spans its operand; an empty head means no value
    if not head:
        return ()
    return head * len(like)


# single-stream operators

def _p_first(x):
    """(x0, x0, ...)"""
    return _constant(x, _first(x))


def _p_next(x):
    """(x1, x2, ...)"""
    return _next(x)


def _p_prev(x):
    """x shifted one place later; the slot before x0 is out of range."""
    return _prev(x)


def _p_last(x):
    """(xn, xn, ...): the element just before eod."""
    return _constant(x, _lastel(x))


def _p_second(x):
    return _p_first(_p_next(x))


def _p_prelast(x):
    return _p_last(_p_prev(x))


# followed by / preceded by

def _p_fby(x, y):
    """(x0, y0, y1, ...)"""
    return _fby(x, y)


def _p_pby(x, y):
    """(y0, y1, ..., yn, x0)"""
    return y + _first(x)


# whenever family

def _p_wvr(x, y):
    if not x or not y:
        return ()
    rest = _p_wvr(_next(x), _next(y))
    if truthy(y[0]):
        return _fby(x, rest)
    return rest


def _p_nwvr(x, y):
    if not x or not y:
        return ()
    rest = _p_nwvr(_next(x), _next(y))
    if not truthy(y[0]):
        return _fby(x, rest)
    return rest


def _aligned(x, y):
    # reverse traversals pair elements by position, so drop the unmatched tail
    n = min(len(x), len(y))
    return x[:n], y[:n]


def _rwvr(x, y):
    # mirror of wvr: the head of the result is the last qualifying element
    if not x or not y:
        return ()
    rest = _rwvr(_prev(x), _prev(y))
    if truthy(y[-1]):
        return _lastel(x) + rest
    return rest


def _nrwvr(x, y):
    if not x or not y:
        return ()
    rest = _nrwvr(_prev(x), _prev(y))
    if not truthy(y[-1]):
        return _lastel(x) + rest
    return rest


def _p_rwvr(x, y):
    return _rwvr(*_aligned(x, y))


def _p_nrwvr(x, y):
    return _nrwvr(*_aligned(x, y))


# as soon as / as late as

def _p_asa(x, y):
    return _constant(x, _first(_p_wvr(x, y)))


def _p_ala(x, y):
    return _constant(x, _lastel(_p_wvr(x, y)))


def _p_nasa(x, y):
    return _constant(x, _first(_p_nwvr(x, y)))


def _p_nala(x, y):
    return _constant(x, _lastel(_p_nwvr(x, y)))


# upon family
#
# An advance taken on the final element of the condition stream steps past
# the end of the data, so the result ends there; a hold on the final element
# repeats the current value once more before eod.

def _upon(x, y, advance):
    if not x:
        return ()
    if not y:
        return _first(x)
    if advance(y[0]):
        tail = () if len(y) == 1 else _upon(_next(x), _next(y), advance)
    else:
        tail = _upon(x, _next(y), advance)
    return _first(x) + tail


def _rupon(x, y, advance):
    if not x:
        return ()
    if not y:
        return _lastel(x)
    if advance(y[-1]):
        tail = () if len(y) == 1 else _rupon(_prev(x), _prev(y), advance)
    else:
        tail = _rupon(x, _prev(y), advance)
    return _lastel(x) + tail


def _negated(v):
    return not truthy(v)


def _p_upon(x, y):
    return _upon(x, y, truthy)


def _p_nupon(x, y):
    return _upon(x, y, _negated)


def _p_rupon(x, y):
    return _rupon(x, y, truthy)


def _p_nrupon(x, y):
    return _rupon(x, y, _negated)


# pointwise

def _p_neg(x):
    if not x:
        return ()
    return (logic.neg(x[0]),) + _p_neg(_next(x))


def _p_not(x):
    if not x:
        return ()
    return (logic.not_(x[0]),) + _p_not(_next(x))


def _p_and(x, y):
    if not x or not y:
        return ()
    return (logic.and_(x[0], y[0]),) + _p_and(_next(x), _next(y))


def _p_or(x, y):
    if not x or not y:
        return ()
    return (logic.or_(x[0], y[0]),) + _p_or(_next(x), _next(y))


def _p_xor(x, y):
    return _p_not(_p_or(_p_and(x, y), _p_not(_p_or(x, y))))


def _p_if(c, x, y):
    if not c:
        return ()
    branch = x if truthy(c[0]) else y
    if not branch:
        return ()
    return branch[:1] + _p_if(_next(c), _next(x), _next(y))


p_first = _wrap(_p_first)
p_second = _wrap(_p_second)
p_last = _wrap(_p_last)
p_prelast = _wrap(_p_prelast)
p_next = _wrap(_p_next)
p_prev = _wrap(_p_prev)
p_fby = _wrap(_p_fby)
p_pby = _wrap(_p_pby)
p_wvr = _wrap(_p_wvr)
p_rwvr = _wrap(_p_rwvr)
p_nwvr = _wrap(_p_nwvr)
p_nrwvr = _wrap(_p_nrwvr)
p_asa = _wrap(_p_asa)
p_ala = _wrap(_p_ala)
p_nasa = _wrap(_p_nasa)
p_nala = _wrap(_p_nala)
p_upon = _wrap(_p_upon)
p_rupon = _wrap(_p_rupon)
p_nupon = _wrap(_p_nupon)
p_nrupon = _wrap(_p_nrupon)
p_neg = _wrap(_p_neg)
p_not = _wrap(_p_not)
p_and = _wrap(_p_and)
p_or = _wrap(_p_or)
p_xor = _wrap(_p_xor)
p_if = _wrap(_p_if)

UNARY = {
    "first": p_first,
    "last": p_last,
    "next": p_next,
    "prev": p_prev,
    "neg": p_neg,
    "not": p_not,
}

BINARY = {
    "fby": p_fby,
    "pby": p_pby,
    "wvr": p_wvr,
    "rwvr": p_rwvr,
    "nwvr": p_nwvr,
    "nrwvr": p_nrwvr,
    "asa": p_asa,
    "ala": p_ala,
    "nasa": p_nasa,
    "nala": p_nala,
    "upon": p_upon,
    "rupon": p_rupon,
    "nupon": p_nupon,
    "nrupon": p_nrupon,
    "and": p_and,
    "or": p_or,
    "xor": p_xor,
}
