"""Values and finite bounded streams.

Values are plain Python objects: ``int``, ``bool``, :class:`~flucid.context.Context`,
``tuple`` (a sequence/run), :class:`~flucid.context.ContextSet`, and the two
markers :data:`BOD` and :data:`EOD`.  Because ``True == 1`` in Python, value
comparison goes through :func:`strict_eq`, which keeps booleans and integers
apart.
"""

from dataclasses import dataclass


class Marker:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (_marker, (self.name,))


def _marker(name):
    return BOD if name == "bod" else EOD


BOD = Marker("bod")
EOD = Marker("eod")


@dataclass(frozen=True)
class Ident:
    """Value of an identifier naming a dimension, operator or function."""

    name: str

    def __str__(self):
        return self.name


def is_bod(v):
    return v is BOD


def is_eod(v):
    return v is EOD


def is_marker(v):
    return v is BOD or v is EOD


def is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def strict_eq(a, b):
    """Structural equality that distinguishes ``True`` from ``1``."""
    if is_marker(a) or is_marker(b):
        return a is b
    if isinstance(a, bool) or isinstance(b, bool):
        return type(a) is type(b) and a == b
    if isinstance(a, tuple) or isinstance(b, tuple):
        return (
            isinstance(a, tuple)
            and isinstance(b, tuple)
            and len(a) == len(b)
            and all(strict_eq(x, y) for x, y in zip(a, b))
        )
    return type(a) is type(b) and a == b


def seq_eq(xs, ys):
    xs, ys = list(xs), list(ys)
    return len(xs) == len(ys) and all(strict_eq(x, y) for x, y in zip(xs, ys))


def truthy(v):
    """Truth value of a condition: booleans as-is, integers nonzero."""
    if isinstance(v, bool):
        return v
    if is_int(v):
        return v != 0
    raise TypeError(f"not a truth value: {format_value(v)}")


def format_value(v):
    if v is True:
        return "T"
    if v is False:
        return "F"
    if isinstance(v, tuple):
        return "(" + ",".join(format_value(x) for x in v) + ")"
    return str(v)


@dataclass(frozen=True, eq=False)
class BoundedStream:
    """A finite stream; reading below index 0 gives bod, at or past the end eod."""

    elements: tuple = ()

    def __post_init__(self):
        elements = tuple(self.elements)
        for v in elements:
            if is_marker(v):
                raise ValueError("markers cannot be stream elements")
        object.__setattr__(self, "elements", elements)

    def at(self, i):
        if i < 0:
            return BOD
        if i >= len(self.elements):
            return EOD
        return self.elements[i]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, BoundedStream):
            return NotImplemented
        return seq_eq(self.elements, other.elements)

    def __hash__(self):
        return hash(tuple((type(v).__name__, v) for v in self.elements))

    def __repr__(self):
        return f"BoundedStream({format_stream(self)})"


def stream(*values):
    """Shorthand: ``stream(1, 2, 3)``."""
    return BoundedStream(values)


def at(s, i):
    return s.at(i)


def reverse(s):
    return BoundedStream(s.elements[::-1])


def defined_values(s):
    return list(s.elements)


def format_stream(s):
    return "[" + " ".join(format_value(v) for v in s) + "]"


def parse_stream(text):
    """Read the textual literal produced by :func:`format_stream`.

    >>> parse_stream("[1 T (2,3)]")
    BoundedStream([1 T (2,3)])
    """
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"stream literal must be bracketed: {text!r}")
    items, pos = _parse_items(text, 1, "]")
    if pos != len(text):
        raise ValueError(f"trailing text in stream literal: {text!r}")
    return BoundedStream(items)


def _parse_items(text, pos, close):
    items = []
    while True:
        while pos < len(text) and text[pos] in " \t\n,":
            pos += 1
        if pos >= len(text):
            raise ValueError(f"unterminated literal: {text!r}")
        if text[pos] == close:
            return tuple(items), pos + 1
        if text[pos] == "(":
            run, pos = _parse_items(text, pos + 1, ")")
            items.append(run)
            continue
        end = pos
        while end < len(text) and text[end] not in " \t\n,()[]":
            end += 1
        items.append(_atom(text[pos:end]))
        pos = end


def _atom(word):
    if word == "T":
        return True
    if word == "F":
        return False
    try:
        return int(word)
    except ValueError:
        raise ValueError(f"bad stream element {word!r}") from None
