"""Reconstructing candidate event sequences from two witness accounts.

Each witness gives a stream of runs (tuples of events).  `product` pairs
every run of the first account with every run of the second, giving all
combined stories.  The same operation is available to programs.
"""

from flucid import Program, combine, product
from flucid.values import BoundedStream, format_stream

first = BoundedStream([("door-open",), ("window-broken",)])
second = BoundedStream([("alarm",), ("silence",)])

print("first witness :", format_stream(first))
print("second witness:", format_stream(second))
print("each run + 'arrest':", format_stream(combine(first, "arrest")))
print("all combinations  :", format_stream(product(first, second)))

SOURCE = """
product(A, B, d) where
  dimension d;
  A = nth(seq(seq(1), seq(2)), #.d);
  B = nth(seq(seq(30), seq(40)), #.d);
end
"""
print()
print("the same from a program, along d:", format_stream(Program(SOURCE).stream("d", 0, 10)))
