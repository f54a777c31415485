"""A classic dataflow program: the running sum of the naturals.

X = 0, 1, 2, ... and Y adds the next X to its own previous value, so Y at
time i is i(i+1)/2.  Evaluation is demand-driven: asking for Y at time 19
pulls in exactly the X and Y values it needs, each computed once.
"""

from flucid import Program

SOURCE = """
Y where
  X = 0 fby X + 1;
  Y = X fby Y + next X;
end
"""

program = Program(SOURCE)
print("Y over time 0..19:")
print(" ".join(str(v) for v in program.stream("d", 0, 20)))

assert all(program.evaluate({"d": i}) == i * (i + 1) // 2 for i in range(20))

# the cache holds one entry per (variable, context) pair that was demanded
print(f"cached values after the run: {len(program.session.cache)}")
