"""Forensic combinators over finite streams of event runs.

A run is a tuple of events.  ``combine`` extends every run of a stream by one
event (or by every event of a run); ``product`` does so for each run of a
second stream in turn and concatenates the results, outer loop over the
second stream.
"""

from .values import BoundedStream, format_value


def _extend(run, e):
    if not isinstance(run, tuple):
        raise TypeError(f"stream element is not a run: {format_value(run)}")
    return run + (e if isinstance(e, tuple) else (e,))


def combine(s, e, d=None):
    """Append ``e`` to every run of ``s``.

    >>> combine(BoundedStream([("A",), ("B",)]), "c")
    BoundedStream([(A,c) (B,c)])

    ``d`` names the dimension the stream varies in; finite host streams do not
    need it and it is accepted only for symmetry with the language form.
    """
    return BoundedStream(_extend(run, e) for run in s)


def product(s1, s2, d=None):
    """``combine(s1, r)`` for each run ``r`` of ``s2``, concatenated."""
    out = []
    for run in s2:
        if not isinstance(run, tuple):
            raise TypeError(f"stream element is not a run: {format_value(run)}")
        out.extend(combine(s1, run))
    return BoundedStream(out)
