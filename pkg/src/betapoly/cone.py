"""Random cones spanned by uniform points on the upper half-sphere.

``C_n`` is the positive hull of ``n`` i.i.d. uniform points on
``{x in R^(d+1): x_0 >= 0, |x| = 1}``. This module evaluates the expected
number of ``k``-faces ``E f_k(C_n)``, the expected solid angle, and the
identities between the ``A``/``B`` arrays that make the different sums agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kernels import DEFAULT_SPEC, KernelValue, QuadSpec, int_A, int_B
from .results import FaceNumberResult, Form, IdentityCheck, TermSum, residual

__all__ = [
    "ConeParams",
    "expected_faces_cone",
    "expected_solid_angle",
    "check_thm13",
    "check_identity_17",
    "check_corollary_18",
    "check_efron",
]

_LOG_PI = math.log(math.pi)
# 0**2 * A[-1,-1] is read as A[1,1] - A[-1,1] = 2/pi
_GUARDED = KernelValue(2.0 / math.pi, 0.0, True, 2.0 / math.pi)


@dataclass(frozen=True)
class ConeParams:
    n: int
    d: int
    k: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.n < self.d + 1:
            raise ValueError("need n >= d + 1")
        if not 1 <= self.k <= self.d:
            raise ValueError("need 1 <= k <= d")


def _weighted_A(j: int, kk: int, spec: QuadSpec) -> tuple[float, KernelValue]:
    """``(j-1)**2 * A[j-2, kk]`` as (coefficient, kernel), guarding ``j = 1, kk = -1``."""
    if j == 1 and kk == -1:
        return 1.0, _GUARDED
    return float((j - 1) ** 2), int_A(j - 2, kk, spec)


def _sum_weighted(acc: TermSum, n: int, js, kk: int, spec: QuadSpec) -> TermSum:
    """Add ``B{n, j} (j-1)^2 A[j-2, kk]`` over ``j``."""
    for idx, j in js:
        coef, a = _weighted_A(j, kk, spec)
        acc.add(idx, coef, int_B(n, j, spec), a)
    return acc


def _S_minus(n, d, k, spec, log_pref=0.0, shifted=False) -> TermSum:
    """sum over s = 0, 2, ... <= d-k of either weighted or shifted terms."""
    acc = TermSum(log_pref)
    steps = range(0, d - k + 1, 2)
    if shifted:
        for s in steps:
            acc.add(s, 1.0, int_B(n + s, d, spec), int_A(d, k + s, spec))
        return acc
    return _sum_weighted(acc, n, [(s, d - s) for s in steps], k - 2, spec)


def _S_plus(n, d, k, spec, log_pref=0.0, shifted=False) -> TermSum:
    """sum over s = 2, 4, ... <= n-d of either weighted or shifted terms."""
    acc = TermSum(log_pref)
    steps = range(2, n - d + 1, 2)
    if shifted:
        for s in steps:
            acc.add(s, 1.0, int_B(n - s, d, spec), int_A(d, k - s, spec))
        return acc
    return _sum_weighted(acc, n, [(s, d + s) for s in steps], k - 2, spec)


def expected_faces_cone(p: ConeParams, form="B_side", spec: QuadSpec = DEFAULT_SPEC) -> FaceNumberResult:
    """Expected number of ``k``-dimensional faces of ``C_n``.

    Complement forms return ``C(n, k) - E f_k(C_n)``.

    >>> round(expected_faces_cone(ConeParams(n=5, d=1, k=1)).value, 12)
    2.0
    """
    form = Form.parse(form)
    n, d, k = p.n, p.d, p.k
    log_pref = math.lgamma(n + 1) + (k - n) * _LOG_PI - math.lgamma(k + 1)
    if form is Form.B_SIDE:
        acc = _S_minus(n, d, k, spec, log_pref)
    elif form is Form.A_SIDE:
        acc = _S_minus(n, d, k, spec, log_pref, shifted=True)
    elif form is Form.COMPLEMENT_B_SIDE:
        acc = _S_plus(n, d, k, spec, log_pref)
    else:
        acc = _S_plus(n, d, k, spec, log_pref, shifted=True)
    return acc.result(form)


def expected_solid_angle(p: ConeParams, form="A_side", spec: QuadSpec = DEFAULT_SPEC) -> FaceNumberResult:
    """Expected solid angle of ``C_n`` as a fraction of the full sphere.

    ``p.k`` is ignored. Complement forms return ``1/2 - E alpha(C_n)``.
    """
    form = Form.parse(form)
    n, d = p.n, p.d
    log_pref = math.lgamma(n + 1) - math.log(2.0) - n * _LOG_PI
    acc = TermSum(log_pref)
    if form is Form.B_SIDE:
        _sum_weighted(acc, n + 1, [(s, d + s) for s in range(2, n + 2 - d, 2)], -1, spec)
    elif form is Form.A_SIDE:
        for s in range(2, n + 2 - d, 2):
            acc.add(s, 1.0, int_B(n + 1 - s, d, spec), int_A(d, 1 - s, spec))
    elif form is Form.COMPLEMENT_B_SIDE:
        _sum_weighted(acc, n + 1, [(s, d - s) for s in range(0, d, 2)], -1, spec)
    else:
        for s in range(0, d, 2):
            acc.add(s, 1.0, int_B(n + 1 + s, d, spec), int_A(d, 1 + s, spec))
    return acc.result(form)


def check_thm13(n: int, d: int, k: int, spec: QuadSpec = DEFAULT_SPEC) -> IdentityCheck:
    """Residuals of the two ``A``/``B`` reaction identities for cones.

    The first compares the weighted and shifted sums over ``s = 0, 2, ... <= d-k``,
    the second the complementary sums over ``s = 2, 4, ... <= n-d``.
    """
    if not (n >= 1 and 1 <= d <= n and 1 <= k <= d + 1):
        raise ValueError("need n >= 1, 1 <= d <= n, 1 <= k <= d+1")
    l1, r1 = _S_minus(n, d, k, spec), _S_minus(n, d, k, spec, shifted=True)
    l2, r2 = _S_plus(n, d, k, spec), _S_plus(n, d, k, spec, shifted=True)
    return IdentityCheck(
        (residual(l1.total, r1.total), residual(l2.total, r2.total)),
        ((l1.total, r1.total), (l2.total, r2.total)),
    )


def check_identity_17(n: int, k: int, spec: QuadSpec = DEFAULT_SPEC) -> IdentityCheck:
    """Even-``j`` and odd-``j`` sums of ``B{n,j}(j-1)^2 A[j-2,k-2]`` against ``pi^(n-k)/(n-k)!``."""
    if not (n >= 1 and 1 <= k <= n - 1):
        raise ValueError("need n >= 1 and 1 <= k <= n-1")
    target = math.pi ** (n - k) / math.factorial(n - k)
    even = _sum_weighted(TermSum(), n, [(j, j) for j in range(k, n + 1) if j % 2 == 0], k - 2, spec)
    odd = _sum_weighted(TermSum(), n, [(j, j) for j in range(k, n + 1) if j % 2 == 1], k - 2, spec)
    return IdentityCheck(
        (residual(even.total, target), residual(odd.total, target)),
        ((even.total, target), (odd.total, target)),
    )


def check_corollary_18(d: int, ell: int, spec: QuadSpec = DEFAULT_SPEC) -> IdentityCheck:
    """Even-``r`` and odd-``r`` sums of ``B{r,d} A[d,r-ell]`` against ``pi^ell/ell!``.

    ``ell = 0`` is accepted as a probe: the identity fails there because the
    single term ``B{d,d} A[d,d]`` equals 2. The check is then flagged as an
    expected failure and its residuals measure the distance to 2.
    """
    if d < 1 or ell < 0:
        raise ValueError("need d >= 1 and ell >= 0")
    sums = {0: TermSum(), 1: TermSum()}
    for r in range(d, d + ell + 1):
        sums[r % 2].add(r, 1.0, int_B(r, d, spec), int_A(d, r - ell, spec))
    even, odd = sums[0].total, sums[1].total
    if ell == 0:
        value = even + odd
        return IdentityCheck(
            (residual(value, 2.0),),
            ((value, 2.0),),
            expected_failure=True,
            note=f"ell=0: B{{d,d}}A[d,d] = {value:.15g} instead of pi^0/0! = 1",
        )
    target = math.pi ** ell / math.factorial(ell)
    return IdentityCheck((residual(even, target), residual(odd, target)), ((even, target), (odd, target)))


def check_efron(n: int, d: int, spec: QuadSpec = DEFAULT_SPEC) -> IdentityCheck:
    """``E alpha(C_n)`` against ``(1 - E f_1(C_{n+1}) / (n+1)) / 2``."""
    angle = expected_solid_angle(ConeParams(n, d), Form.A_SIDE, spec).value
    edges = expected_faces_cone(ConeParams(n + 1, d, 1), Form.B_SIDE, spec).value
    rhs = 0.5 * (1.0 - edges / (n + 1))
    return IdentityCheck((residual(angle, rhs),), ((angle, rhs),))
