"""Expected face numbers of beta' polytopes (heavy-tailed points in R^d).

The density is proportional to (1 + |x|^2)^(-beta) with beta > d/2. When
alpha * k <= 1 the defining integrals diverge and the library refuses to
produce a number.
"""

from betapoly.betaprime import BetaPrimeParams, expected_faces_beta_prime
from betapoly.errors import DomainNotRepresentable

for n in (5, 6, 8, 12):
    v = expected_faces_beta_prime(BetaPrimeParams(n, 2, 2.0)).value
    print(f"d=2 beta=2 n={n:2}: E f_0 = {v:.12f}")

try:
    expected_faces_beta_prime(BetaPrimeParams(6, 2, 1.2))
except DomainNotRepresentable as exc:
    print(f"\nd=2 beta=1.2 (alpha=0.4): {exc}")
