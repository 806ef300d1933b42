"""Expected face numbers and solid angles of random half-sphere cones.

The cone C_n is the positive hull of n independent uniform points on the
upper half-sphere in R^d. Each expected face number can be computed from
four algebraically different sums, and they must agree.
"""

import math

from betapoly.cone import ConeParams, check_efron, expected_faces_cone, expected_solid_angle
from betapoly.results import Form

print("E f_k(C_n) in d = 3, all four forms")
for n in (4, 6, 8):
    for k in (1, 2):
        vals = [expected_faces_cone(ConeParams(n, 3, k), form).value for form in Form]
        print(f"  n={n} k={k}: " + "  ".join(f"{v:.12f}" for v in vals))

exact = 6 * (math.pi**2 - 4) / math.pi**2
got = expected_faces_cone(ConeParams(4, 2, 1)).value
print(f"\nE f_1(C_4), d = 2: {got:.15f} vs closed form {exact:.15f}")

print("\nExpected solid angle of C_n in d = 3")
for n in range(4, 9):
    print(f"  n={n}: {expected_solid_angle(ConeParams(n, 3)).value:.12f}")

worst = max(check_efron(n, 3).worst for n in range(4, 10))
print(f"\nsolid angle vs edge count identity, worst residual: {worst:.2e}")
