"""Random beta' polytopes.

``P~_{n,d}^beta`` is the convex hull of ``n`` i.i.d. points in ``R^d`` with
density proportional to ``(1 + |x|^2)**(-beta)``, ``beta > d/2``. With
``alpha = 2 beta - d`` the face numbers use the kernels
:func:`~betapoly.kernels.tilde_B` and :func:`~betapoly.kernels.tilde_A` and
are available whenever ``alpha * k > 1``.

At ``alpha = 1`` the model is the gnomonic image of the half-sphere cone, so
``expected_faces_beta_prime(BetaPrimeParams(n, d, (d+1)/2, k))`` equals
``expected_faces_cone(ConeParams(n, d, k))`` for ``k >= 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._family import KernelFamily
from .errors import DomainNotRepresentable
from .kernels import DEFAULT_SPEC, QuadSpec
from .results import FaceNumberResult, Form, IdentityCheck

__all__ = [
    "BetaPrimeParams",
    "expected_faces_beta_prime",
    "check_thm32",
    "check_prop32",
    "check_cor34",
]


@dataclass(frozen=True)
class BetaPrimeParams:
    n: int
    d: int
    beta: float
    k: int = 1
    alpha: float = field(init=False)

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.n < self.d + 1:
            raise ValueError("need n >= d + 1")
        if not 1 <= self.k <= self.d:
            raise ValueError("need 1 <= k <= d")
        if not self.beta > self.d / 2:
            raise ValueError("need beta > d/2")
        object.__setattr__(self, "alpha", 2.0 * self.beta - self.d)


def _family(alpha: float, spec: QuadSpec) -> KernelFamily:
    return KernelFamily(alpha, spec, -1)


def expected_faces_beta_prime(
    p: BetaPrimeParams, form="B_side", spec: QuadSpec = DEFAULT_SPEC
) -> FaceNumberResult:
    """Expected number of ``(k-1)``-dimensional faces of ``P~_{n,d}^beta``.

    Raises :class:`DomainNotRepresentable` when ``alpha * k <= 1`` or when
    some kernel of the requested sum has no convergent integral.

    >>> round(expected_faces_beta_prime(BetaPrimeParams(n=4, d=3, beta=3.0, k=2)).value, 9)
    6.0
    """
    form = Form.parse(form)
    if not p.alpha * p.k > 1:
        raise DomainNotRepresentable(f"alpha * k = {p.alpha * p.k:.6g} must exceed 1")
    return _family(p.alpha, spec).face_number(form, p.n, p.d, p.k)


def check_thm32(n: int, d: int, k: int, alpha: float, spec: QuadSpec = DEFAULT_SPEC) -> IdentityCheck:
    """Residuals of the two weighted/shifted identities between tilde kernels."""
    if not (n >= 1 and 1 <= d <= n and 1 <= k <= d + 1):
        raise ValueError("need n >= 1, 1 <= d <= n, 1 <= k <= d+1")
    return _family(alpha, spec).check_main(n, d, k)


def check_prop32(n: int, k: int, alpha: float, spec: QuadSpec = DEFAULT_SPEC) -> IdentityCheck:
    """Even and odd parity sums of the weighted tilde terms against their closed form."""
    return _family(alpha, spec).check_parity_sums(n, k)


def check_cor34(n: int, k: int, alpha: float, spec: QuadSpec = DEFAULT_SPEC) -> IdentityCheck:
    return _family(alpha, spec).check_corollary(n, k)
