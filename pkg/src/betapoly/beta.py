"""Random beta polytopes.

``P_{n,d}^beta`` is the convex hull of ``n`` i.i.d. points in the unit ball of
``R^d`` with density proportional to ``(1 - |x|^2)**beta``; ``beta = -1`` is
the uniform distribution on the unit sphere. Face numbers are expressed
through the kernels :func:`~betapoly.kernels.curly_B` and
:func:`~betapoly.kernels.curly_A` with ``alpha = 2 beta + d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._family import KernelFamily
from .kernels import DEFAULT_SPEC, QuadSpec
from .results import FaceNumberResult, Form, IdentityCheck

__all__ = [
    "BetaParams",
    "expected_faces_beta",
    "check_thm23",
    "check_prop22",
    "check_cor24",
]


@dataclass(frozen=True)
class BetaParams:
    """Parameters of a beta polytope.

    ``k`` counts vertices of a face, so the result is ``E f_{k-1}``.
    """

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
        if not self.beta >= -1:
            raise ValueError("need beta >= -1")
        object.__setattr__(self, "alpha", 2.0 * self.beta + self.d)

    @property
    def is_polygon_case(self) -> bool:
        """``d = 2`` on the circle: the hull is an ``n``-gon."""
        return self.d == 2 and self.beta == -1


def _family(alpha: float, spec: QuadSpec) -> KernelFamily:
    return KernelFamily(alpha, spec, +1)


def expected_faces_beta(p: BetaParams, form="B_side", spec: QuadSpec = DEFAULT_SPEC) -> FaceNumberResult:
    """Expected number of ``(k-1)``-dimensional faces of ``P_{n,d}^beta``.

    Parameters
    ----------
    p : BetaParams
    form : Form or str
        One of the four equivalent sums; complement forms return
        ``C(n, k) - E f_{k-1}``.
    spec : QuadSpec

    Raises
    ------
    DomainNotRepresentable
        If any kernel in the chosen sum lies outside its integral domain.
        No partial sum is ever returned.

    Examples
    --------
    >>> round(expected_faces_beta(BetaParams(n=4, d=3, beta=0.0, k=2)).value, 9)
    6.0
    """
    form = Form.parse(form)
    if p.is_polygon_case:
        value = float(p.n) if not form.is_complement else float(math.comb(p.n, p.k) - p.n)
        return FaceNumberResult(value, form, [], 0.0)
    if p.d < 2:
        raise ValueError("beta polytopes need d >= 2")
    return _family(p.alpha, spec).face_number(form, p.n, p.d, p.k)


def check_thm23(n: int, d: int, k: int, alpha: float, spec: QuadSpec = DEFAULT_SPEC) -> IdentityCheck:
    """Residuals of the two weighted/shifted identities between beta kernels.

    The first compares the sums over ``s = 0, 2, ... <= d-k`` and the second
    the complementary sums over ``s = 2, 4, ... <= n-d``. Empty sums give 0.
    """
    if not (n >= 1 and 1 <= d <= n and 1 <= k <= d + 1):
        raise ValueError("need n >= 1, 1 <= d <= n, 1 <= k <= d+1")
    return _family(alpha, spec).check_main(n, d, k)


def check_prop22(n: int, k: int, alpha: float, spec: QuadSpec = DEFAULT_SPEC) -> IdentityCheck:
    """Even and odd parity sums of the weighted terms against their closed form."""
    return _family(alpha, spec).check_parity_sums(n, k)


def check_cor24(n: int, k: int, alpha: float, spec: QuadSpec = DEFAULT_SPEC) -> IdentityCheck:
    """Shifted-form sums with top index ``n`` and ``n - 1`` against the same closed form."""
    return _family(alpha, spec).check_corollary(n, k)
