"""Watching the evaluator work.

With tracing on, every rule application is logged in the order it finishes,
indented by nesting depth.  A variable demanded twice at the same context is
looked up in the cache the second time.
"""

import json

from flucid import Program
from flucid.evaluator import format_trace, trace_tree

program = Program("X + X @.d 1 where dimension d; X = #.d * 2 end", trace=True)
value = program.evaluate({"d": 1})
print(format_trace(program.session.trace))
print("value:", value)



def outline(node, depth=0):
    mark = " (cached)" if node["cached"] else ""
    print("  " * depth + f"{node['rule']}: {node['expr']} = {node['value']}{mark}")
    for child in node["children"]:
        outline(child, depth + 1)


print()
print("the same derivation rebuilt as a tree (JSON-ready dicts):")
root = trace_tree(program.session.trace)[-1]
outline(root)
print(len(json.dumps(root)), "bytes as JSON")
