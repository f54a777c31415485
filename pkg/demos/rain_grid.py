"""Two dimensions at once: whether it rained, by city and by day.

The expression `rain` has no single value.  It takes one per point of the
(city, day) plane, and a context picks out that point.
"""

from pathlib import Path

from flucid import Program

SOURCE = (Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "raining.fl").read_text()
CITIES = ["Montreal", "Quebec", "Ottawa"]

program = Program(SOURCE)
print("City       " + " ".join(str(day) for day in range(1, 10)))
for c, city in enumerate(CITIES):
    values = [program.evaluate({"city": c, "day": day}) for day in range(1, 10)]
    print(f"{city:<10} " + " ".join("T" if v else "F" for v in values))

# navigating inside the language instead of from the host
print()
print("Quebec, day 5, asked from within the program:",
      program.eval_expr("rain @ [city: 1, day: 5]"))
print("Ottawa days 2..4 as a context set:",
      program.eval_expr("rain @ {[city: 2, day: 2], [city: 2, day: 3], [city: 2, day: 4]}"))
