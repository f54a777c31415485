"""Element-level arithmetic negation and logical connectives.

Logical results are booleans when every operand is boolean and the integers
0/1 as soon as one operand is numeric.
"""

from .values import is_int, truthy


def neg(v):
    if not is_int(v):
        raise TypeError(f"neg expects an integer, got {v!r}")
    return -v


def _as_result(flag, *operands):
    if all(isinstance(v, bool) for v in operands):
        return flag
    return int(flag)


def not_(v):
    return _as_result(not truthy(v), v)


def and_(a, b):
    return _as_result(truthy(a) and truthy(b), a, b)


def or_(a, b):
    return _as_result(truthy(a) or truthy(b), a, b)
