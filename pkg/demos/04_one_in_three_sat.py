"""Monotone 1-in-3 satisfiability as a normal surface question.

A clause set becomes a system of abstract matching equations.  The system
has an admissible point with large enough Euler value exactly when some
assignment makes one variable true in every clause.
"""
from normsurf import ClauseSet, brute_force_sat, decide_instance, extract_assignment, reduce_sat

examples = {
    "shared variable": ClauseSet((("a", "b", "c"), ("a", "d", "e"))),
    "chain": ClauseSet((("a", "b", "c"), ("c", "d", "e"), ("e", "f", "a"))),
    "all triples of four": ClauseSet((("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d"))),
}
for name, C in examples.items():
    I = reduce_sat(C)
    d = decide_instance(I)
    line = f"{name:20s} {I.p:2d} tetrahedra  verdict={d.verdict!s:5s} brute force={brute_force_sat(C) is not None}"
    if d.verdict:
        a = extract_assignment(C, d.witness, I)
        line += "  true: " + ",".join(v for v in sorted(a) if a[v])
    print(line)
