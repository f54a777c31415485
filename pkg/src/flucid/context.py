"""Evaluation contexts, definition environments and context sets."""

import itertools
from collections.abc import Mapping
from dataclasses import dataclass

from .errors import UNBOUND_DIMENSION, TYPE_ERROR, EvalError, ParseError
from .values import is_int


class Context(Mapping):
    """Immutable partial map from dimension name to integer tag."""

    __slots__ = ("_tags", "_hash")

    def __init__(self, tags=()):
        self._tags = dict(tags)
        self._hash = None

    def __getitem__(self, d):
        return self._tags[d]

    def __iter__(self):
        return iter(self._tags)

    def __len__(self):
        return len(self._tags)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._tags.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Context):
            return self._tags == other._tags
        return NotImplemented

    def override(self, other):
        """``self † other``: other's bindings win."""
        if not other:
            return self
        tags = dict(self._tags)
        tags.update(other)
        return Context(tags)

    def bind(self, d, tag):
        return self.override({d: tag})

    def query(self, d):
        try:
            return self._tags[d]
        except KeyError:
            raise EvalError(UNBOUND_DIMENSION, f"dimension {d!r} is not bound", self) from None

    def __str__(self):
        return "[" + ", ".join(f"{d}:{t}" for d, t in sorted(self._tags.items())) + "]"

    def __repr__(self):
        return f"Context({self._tags!r})"


EMPTY = Context()


def override(p, q):
    return p.override(q)


def query(p, d):
    return p.query(d)


def construct_context(pairs, defenv=None):
    """Build a context from (dimension, tag) pairs, folding ``†`` left to right."""
    p = EMPTY
    for d, v in pairs:
        if defenv is not None and not isinstance(defenv.get(d), Dim):
            raise EvalError(TYPE_ERROR, f"{d!r} is not a dimension", p)
        if not is_int(v):
            raise EvalError(TYPE_ERROR, f"tag for {d!r} must be an integer, got {v!r}", p)
        p = p.override({d: v})
    return p


class ContextSet:
    """Ordered collection of contexts (duplicates are dropped, order kept)."""

    __slots__ = ("contexts",)

    def __init__(self, contexts=()):
        seen = []
        for c in contexts:
            if c not in seen:
                seen.append(c)
        self.contexts = tuple(seen)

    def __iter__(self):
        return iter(self.contexts)

    def __len__(self):
        return len(self.contexts)

    def __eq__(self, other):
        if isinstance(other, ContextSet):
            return self.contexts == other.contexts
        return NotImplemented

    def __hash__(self):
        return hash(self.contexts)

    def union(self, other):
        return ContextSet(self.contexts + other.contexts)

    def intersection(self, other):
        return ContextSet(c for c in self.contexts if c in other.contexts)

    def __str__(self):
        return "{" + ", ".join(str(c) for c in self.contexts) + "}"

    def __repr__(self):
        return f"ContextSet({list(self.contexts)!r})"


def desugar_context_set(groups):
    """``{[d:1, e:2], [d:3]}`` given as nested pairs -> :class:`ContextSet`."""
    groups = list(groups)
    if not groups:
        raise ParseError("empty context set")
    contexts = []
    for group in groups:
        try:
            pairs = [(d, v) for d, v in group]
        except (TypeError, ValueError):
            raise ParseError(f"malformed context group {group!r}") from None
        contexts.append(construct_context(pairs))
    return ContextSet(contexts)


# definition environment


@dataclass(frozen=True)
class Dim:
    pass


@dataclass(frozen=True)
class Const:
    value: object


@dataclass(frozen=True)
class Op:
    name: str


@dataclass(eq=False)
class Var:
    expr: object
    env: object = None  # the DefEnv the definition was made in, set once it exists


@dataclass(frozen=True, eq=False)
class Func:
    formals: tuple
    expr: object


_env_ids = itertools.count()


class DefEnv(Mapping):
    """Immutable map from identifier to one of Dim/Const/Op/Var/Func."""

    __slots__ = ("_entries", "uid")

    def __init__(self, entries=()):
        self._entries = dict(entries)
        self.uid = next(_env_ids)

    def __getitem__(self, name):
        return self._entries[name]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def override(self, entries):
        merged = dict(self._entries)
        merged.update(entries)
        return DefEnv(merged)

    def __repr__(self):
        kinds = {k: type(v).__name__.lower() for k, v in self._entries.items()}
        return f"DefEnv({kinds})"


def dot_dimension(parent, child, defenv):
    """Name of the compound dimension ``parent.child``, which must be declared."""
    name = f"{parent}.{child}"
    if not isinstance(defenv.get(name), Dim):
        raise EvalError(UNBOUND_DIMENSION, f"no dimension {name!r}")
    return name
