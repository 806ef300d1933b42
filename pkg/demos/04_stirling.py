"""An exact identity between Stirling numbers of both kinds, checked with
Python integers for every admissible triple up to n = 50."""

import time

from betapoly.stirling import build_table, theorem41_triple, verify_theorem41

table = build_table(12)
print("Stirling numbers of the first kind, row 6:", [table.first(6, k) for k in range(7)])
print("Stirling numbers of the second kind, row 6:", [table.second(6, k) for k in range(7)])
print("three sides at (n, d, k) = (10, 6, 3):", theorem41_triple(10, 6, 3, table))

t0 = time.perf_counter()
rep = verify_theorem41(50)
print(f"\nall {rep.checked} triples with n <= 50 agree: {rep.ok} ({time.perf_counter() - t0:.2f}s)")
