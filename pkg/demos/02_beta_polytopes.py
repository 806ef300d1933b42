"""Expected face numbers of beta polytopes.

Points have density proportional to (1 - |x|^2)^beta on the unit ball;
beta = -1 is the uniform distribution on the sphere and beta = 0 the uniform
distribution on the ball.
"""

from betapoly.beta import BetaParams, check_cor24, check_prop22, expected_faces_beta
from betapoly.errors import DomainNotRepresentable

for beta in (-1.0, 0.0, 1.5):
    row = [expected_faces_beta(BetaParams(n, 2, beta)).value for n in range(3, 11)]
    print(f"d=2 beta={beta:4}: E f_0 for n=3..10 = " + " ".join(f"{v:.6f}" for v in row))

p = BetaParams(9, 3, 0.0, k=2)
print(f"\nE f_1 of 9 uniform points in the 3-ball: {expected_faces_beta(p).value:.12f}")
print(f"simplex check, n = d + 1 = 4, k = 2: {expected_faces_beta(BetaParams(4, 3, 0.0, k=2)).value:.12f}")

# small alpha pushes the shifted form below the integral domain
for alpha in (1.0, 3.0, 4.0):
    prop = check_prop22(7, 2, alpha).worst
    try:
        cor = f"{check_cor24(7, 2, alpha).worst:.1e}"
    except DomainNotRepresentable:
        cor = "not representable"
    print(f"alpha={alpha}: parity-sum residual {prop:.1e}, shifted-form residual {cor}")
