"""Summation engine shared by the beta and beta' face-number formulas.

Both families use the same four sums; they differ in the kernel pair, the
sign of the ``1/alpha`` shifts, the weight ``c(m)`` and the prefactor base.
``sign = +1`` selects the beta conventions and ``sign = -1`` the beta' ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy import special

from . import kernels
from .errors import DomainNotRepresentable
from .kernels import KernelIndex, KernelValue, QuadSpec
from .results import FaceNumberResult, Form, IdentityCheck, TermSum, residual

_LOG_2SQRTPI = math.log(2.0 * math.sqrt(math.pi))


@dataclass(frozen=True)
class _Term:
    index: int
    coef: float
    b_idx: KernelIndex
    a_idx: KernelIndex
    # weighted terms fold Gamma(nu+1) of the A kernel into ``coef``
    a_gamma: bool = True


def _idx(nu: float, kappa: float) -> KernelIndex:
    return KernelIndex.of(nu, kappa)


def _steps(lo: int, span: float):
    """Even offsets ``lo, lo+2, ... <= span`` where ``span`` is an integer-valued float."""
    top = round(span)
    if abs(span - top) > 1e-9 * max(1.0, abs(span)):
        raise ValueError("index differences must be integers")
    return range(lo, top + 1, 2)


class KernelFamily:
    def __init__(self, alpha: float, spec: QuadSpec, sign: int):
        if not alpha > 0:
            raise ValueError("alpha must be positive")
        self.alpha = float(alpha)
        self.spec = spec
        self.sign = sign
        if sign > 0:
            self._B: Callable = kernels.curly_B
            self._A: Callable = kernels.curly_A
            self.log_base = math.lgamma(alpha / 2) - _LOG_2SQRTPI - math.lgamma((alpha + 1) / 2)
        else:
            self._B = kernels.tilde_B
            self._A = kernels.tilde_A
            self.log_base = math.lgamma((alpha + 1) / 2) - _LOG_2SQRTPI - math.lgamma((alpha + 2) / 2)

    # --- kernels and domain ---------------------------------------------

    def B(self, idx: KernelIndex) -> KernelValue:
        return self._B(self.alpha, idx, self.spec)

    def A(self, idx: KernelIndex, with_gamma: bool = True) -> KernelValue:
        return self._A(self.alpha, idx, self.spec, with_gamma)

    def b_ok(self, idx: KernelIndex) -> bool:
        if idx.is_null:
            return True
        lower = -1.0 / self.alpha if self.sign > 0 else 0.0
        return idx.kappa > lower

    def a_ok(self, idx: KernelIndex) -> bool:
        if idx.is_null:
            return True
        if self.sign > 0:
            return idx.kappa > 0
        return kernels.tilde_A_decay_rate(self.alpha, idx) > 0

    def weight(self, m: float) -> float:
        """``(m + s/alpha) Gamma(m)``, ``s = +-1``.

        The full weight also divides by ``Gamma(m + 1 + 2s/alpha)``, which is
        exactly the ``Gamma(nu + 1)`` carried by the partner ``A`` kernel. Both
        are dropped, so a pole there (``2/alpha`` an integer in the beta' case)
        cancels instead of producing ``0 * inf``.
        """
        if m <= 0 and m == math.floor(m):
            raise DomainNotRepresentable(f"Gamma({m}) in the weight is a pole")
        return (m + self.sign / self.alpha) * special.gammasgn(m) * math.exp(special.gammaln(m))

    @property
    def shift(self) -> float:
        return 2.0 * self.sign / self.alpha

    # --- term lists --------------------------------------------------------

    def weighted_terms(self, n, k, ms) -> list[_Term]:
        """``B{n,m} c(m) A[m + shift, k + shift]`` over ``(index, m)`` pairs."""
        h = self.shift
        return [_Term(i, self.weight(m), _idx(n, m), _idx(m + h, k + h), False) for i, m in ms]

    def shifted_terms(self, n, d, k, qs, direction: int) -> list[_Term]:
        """``B{n+t, d+direction*q+t} A[d+direction*q+t, k+t]`` with ``t = sign*direction*q/alpha``."""
        out = []
        for q in qs:
            t = self.sign * direction * q / self.alpha
            top = d + direction * q + t
            out.append(_Term(q, 1.0, _idx(n + t, top), _idx(top, k + t)))
        return out

    def evaluate(self, terms: list[_Term], log_pref: float = 0.0) -> TermSum:
        """Evaluate every term; refuse the whole sum if any kernel is out of domain."""
        bad = [t for t in terms if not (self.b_ok(t.b_idx) and self.a_ok(t.a_idx))]
        if bad:
            t = bad[0]
            raise DomainNotRepresentable(
                f"term {t.index}: B index (nu={t.b_idx.nu:.6g}, kappa={t.b_idx.kappa:.6g}) or "
                f"A index (nu={t.a_idx.nu:.6g}, kappa={t.a_idx.kappa:.6g}) is outside the integral domain"
            )
        acc = TermSum(log_pref)
        for t in terms:
            if t.coef == 0.0 or t.b_idx.is_null or t.a_idx.is_null:
                acc.add_value(t.index, 0.0)
                continue
            acc.add(t.index, t.coef, self.B(t.b_idx), self.A(t.a_idx, t.a_gamma))
        return acc

    # --- the four sums -----------------------------------------------------

    def primal_weighted(self, n, d, k) -> list[_Term]:
        return self.weighted_terms(n, k, [(s, d - s) for s in _steps(0, d - k)])

    def primal_shifted(self, n, d, k) -> list[_Term]:
        return self.shifted_terms(n, d, k, _steps(0, d - k), -1)

    def complement_weighted(self, n, d, k) -> list[_Term]:
        return self.weighted_terms(n, k, [(s, d + s) for s in _steps(2, n - d)])

    def complement_shifted(self, n, d, k) -> list[_Term]:
        return self.shifted_terms(n, d, k, _steps(2, n - d), +1)

    def terms_for(self, form: Form, n, d, k) -> list[_Term]:
        return {
            Form.B_SIDE: self.primal_weighted,
            Form.A_SIDE: self.primal_shifted,
            Form.COMPLEMENT_B_SIDE: self.complement_weighted,
            Form.COMPLEMENT_A_SIDE: self.complement_shifted,
        }[form](n, d, k)

    def log_prefactor(self, n: int, k: int) -> float:
        return math.log(2.0) + math.lgamma(n + 1) - math.lgamma(k + 1) + (n - k) * self.log_base

    def full_sum_target(self, n, k) -> float:
        """``(1 / (2 (n-k)!)) * base**-(n-k)``, the common value of the parity sums."""
        j = round(n - k)
        return 0.5 * math.exp(-math.lgamma(j + 1) - j * self.log_base)

    # --- identity checks ---------------------------------------------------

    def face_number(self, form: Form, n: int, d: int, k: int) -> FaceNumberResult:
        acc = self.evaluate(self.terms_for(form, n, d, k), self.log_prefactor(n, k))
        return acc.result(form)

    def check_main(self, n, d, k) -> IdentityCheck:
        l1 = self.evaluate(self.primal_weighted(n, d, k)).total
        r1 = self.evaluate(self.primal_shifted(n, d, k)).total
        l2 = self.evaluate(self.complement_weighted(n, d, k)).total
        r2 = self.evaluate(self.complement_shifted(n, d, k)).total
        return IdentityCheck((residual(l1, r1), residual(l2, r2)), ((l1, r1), (l2, r2)))

    def check_parity_sums(self, n, k) -> IdentityCheck:
        if not round(n - k) >= 1:
            raise ValueError("need n - k a positive integer")
        target = self.full_sum_target(n, k)
        span = n - k
        even = self.evaluate(self.weighted_terms(n, k, [(j, n - j) for j in _steps(0, span)])).total
        odd = self.evaluate(self.weighted_terms(n, k, [(j, n - j) for j in _steps(1, span)])).total
        return IdentityCheck((residual(even, target), residual(odd, target)), ((even, target), (odd, target)))

    def check_corollary(self, n, k) -> IdentityCheck:
        if not round(n - k) >= 1:
            raise ValueError("need n - k a positive integer")
        target = self.full_sum_target(n, k)
        first = self.evaluate(self.shifted_terms(n, n, k, _steps(0, n - k), -1)).total
        second = self.evaluate(self.shifted_terms(n, n - 1, k, _steps(0, n - 1 - k), -1)).total
        return IdentityCheck((residual(first, target), residual(second, target)), ((first, target), (second, target)))
