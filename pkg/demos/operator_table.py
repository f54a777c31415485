"""Apply every stream operator to the same pair of bounded streams.

X counts 1..10 and Y is a fixed condition.  Each row is computed twice, once
by the recursive operators and once by the @/# kernels, and the two must
agree.
"""

from flucid import harness
from flucid.values import format_value

X, Y = harness.TABLE_X, harness.TABLE_Y


def row(values):
    return " ".join(f"{format_value(v):>3}" for v in values)


print(f"{'X':>10}  {row(X)}")
print(f"{'Y':>10}  {row(Y)}")
print()
for name in harness.OPERATORS:
    if name == "prev":
        continue
    args = harness.table_operands(name)
    piped = harness.run_pipelined(name, *args)
    indexed = harness.run_indexed(name, *args)
    flag = "" if piped == indexed else "   <-- implementations disagree"
    print(f"{name:>10}  {row(piped)}{flag}")

# or/xor here are logical connectives; combining the integers bit by bit
# would give different rows
print()
for name, printed in harness.PRINTED_LOGIC_ROWS.items():
    print(f"{name:>10}  bitwise would be {row(printed)}")
