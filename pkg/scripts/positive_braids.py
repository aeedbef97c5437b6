"""Positive braid closures through the ladder divide, with timings."""
import sys
import time

from divide_forge import closure_diagram, counts, jones, link_of_graph_divide, parse_braid, positive_braid_to_divide

WORDS = [("s1 s1 s1", 2), ("s1 s2 s1 s2", 3), ("s1 s1 s2 s1 s2 s1 s1 s2 s2 s2", 3)]
if len(sys.argv) > 1:
    WORDS = [(sys.argv[1], int(sys.argv[2]) if len(sys.argv) > 2 else None)]

for word, n in WORDS:
    w = parse_braid(word, n)
    t0 = time.perf_counter()
    d = positive_braid_to_divide(w)
    v = jones(link_of_graph_divide(d))
    dt = time.perf_counter() - t0
    c = counts(d)
    print(f"{word}: chains={c.n} chi(G)={c.euler_G} delta={c.delta} "
          f"match={v == jones(closure_diagram(w))} {dt:.2f}s\n  V = {v}")
