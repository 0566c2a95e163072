#!/usr/bin/env python3
# Where does the (s, p) scale embed into the critical space for the
# k-Hessian?  An ASCII map of the classifier over the (s, p) plane with
# the three counterexample regions marked, plus the boundary cases.

import numpy as np

from khessian.besov import embedding_case
from khessian.harness import run_embedding_table

k, n = 3, 3
s_values = np.linspace(1.95, 0.15, 25)
p_values = np.linspace(1.1, 12.0, 56)

print(f"embedding map for k={k}, n={n}   ('#' holds, region tags I/i, II/o, III/x, '.' other fail)")
print()
rows = {(round(s, 6), round(p, 6)): None for s in s_values for p in p_values}
table = run_embedding_table(s_values, p_values, k, n)
lookup = {(round(s, 6), round(p, 6)): (case, region) for s, p, case, region in table}
for s in s_values:
    line = []
    for p in p_values:
        case, region = lookup[(round(s, 6), round(p, 6))]
        if case == "holds":
            line.append("#")
        elif region == "I":
            line.append("i")
        elif region == "II":
            line.append("o")
        elif region == "III":
            line.append("x")
        else:
            line.append(".")
    print(f"s={s:4.2f}  " + "".join(line))
print(" " * 8 + f"p from {p_values[0]:.1f} to {p_values[-1]:.1f} ->")

print()
print("boundary cases at s + 2/k = 2 + max(0, n/p - n/k):")
crit = 2 - 2.0 / k
print(f"  s = 2 - 2/k = {crit:.4f}, p = k = {k}:   {embedding_case(crit, float(k), k, n)}  "
      "(equality with p <= k)")
print(f"  s = 2 - 2/k = {crit:.4f}, p = {2 * k}:   {embedding_case(crit, float(2 * k), k, n)}  "
      "(equality with p > k)")
