"""Integral kernels behind the expected face-number formulas.

Six kernel families are evaluated here:

* ``int_B`` / ``int_A`` -- the integer arrays ``B{n,k}`` and ``A[n,k]`` for
  random cones in a half-space;
* ``curly_B`` / ``curly_A`` -- the beta-polytope kernels built from
  ``F(x) = int_{-pi/2}^x cos(y)**alpha dy``;
* ``tilde_B`` / ``tilde_A`` -- the beta'-polytope kernels built from the same
  integral with exponent ``alpha - 1``.

The ``A``-type kernels are integrals along the imaginary axis. Writing
``x = i t`` turns them into real-line integrals of a complex integrand whose
values at ``-t`` and ``t`` are complex conjugates, so only ``2 * Re`` of the
half-line integral is computed.

Every factorial and gamma prefactor is folded into the integrand as a
log-space offset, which keeps intermediate magnitudes bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from .errors import DomainNotRepresentable, NonConvergence
from .quadrature import (
    gauss_legendre_panels,
    log_cosh,
    log_cosh_power_primitive,
    tanh_sinh,
)

__all__ = [
    "QuadSpec",
    "KernelIndex",
    "KernelValue",
    "DEFAULT_SPEC",
    "log_gamma",
    "wallis",
    "int_B",
    "int_A",
    "F_incomplete",
    "F_tilde",
    "F_on_imaginary_axis",
    "curly_B",
    "curly_A",
    "tilde_B",
    "tilde_A",
]

_LOG_PI = math.log(math.pi)
_LOG_2PI = math.log(2.0 * math.pi)
_LOG_MAX = math.log(np.finfo(float).max)
# validated parameter envelope; outside it failures are reported, not raised
_ALPHA_RANGE = (0.1, 50.0)
_NU_MAX = 40.0
_T_CAP = 5000.0


@dataclass(frozen=True)
class QuadSpec:
    """Quadrature policy shared by all kernel evaluations."""

    rel_tol: float = 1e-12
    max_refinements: int = 12
    truncation_tail: float = 1e-18

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be >= 1")
        if not self.truncation_tail > 0:
            raise ValueError("truncation_tail must be positive")


DEFAULT_SPEC = QuadSpec()


@dataclass(frozen=True)
class KernelValue:
    """A kernel value with its quadrature diagnostics.

    ``est_error`` is relative to ``scale``, the larger of ``|value|`` and the
    integral of the absolute integrand (times the prefactor). The two differ
    only when the integrand cancels, e.g. ``A[0,-2] = 0``.
    """

    value: float
    est_error: float
    converged: bool
    scale: float = 0.0

    def __float__(self) -> float:
        return self.value


_ZERO = KernelValue(0.0, 0.0, True, 0.0)


@dataclass(frozen=True)
class KernelIndex:
    """A kernel address ``(nu, kappa)`` with ``nu - kappa = delta`` an integer.

    A negative ``delta`` marks the null index whose kernel value is 0.
    """

    kappa: float
    delta: int

    def __post_init__(self):
        if int(self.delta) != self.delta:
            raise ValueError("delta must be an integer")
        object.__setattr__(self, "delta", int(self.delta))
        object.__setattr__(self, "kappa", float(self.kappa))

    @property
    def nu(self) -> float:
        return self.kappa + self.delta

    @property
    def is_null(self) -> bool:
        return self.delta < 0

    @classmethod
    def of(cls, nu: float, kappa: float) -> "KernelIndex":
        """Build an index from a ``(nu, kappa)`` pair, snapping ``nu - kappa``."""
        diff = float(nu) - float(kappa)
        delta = round(diff)
        if abs(diff - delta) > 1e-9 * max(1.0, abs(nu), abs(kappa)):
            raise ValueError(f"nu - kappa = {diff!r} is not an integer")
        return cls(float(kappa), int(delta))


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``."""
    if not x > 0:
        raise DomainNotRepresentable(f"log_gamma needs x > 0, got {x!r}")
    return math.lgamma(x)


def _signed_lgamma(x: float) -> tuple[float, float]:
    """``(log|Gamma(x)|, sign Gamma(x))``; raises at the poles."""
    if x <= 0 and x == math.floor(x):
        raise DomainNotRepresentable(f"Gamma has a pole at {x!r}")
    return math.lgamma(x), float(special.gammasgn(x))


def wallis(power: float) -> float:
    """``int_{-pi/2}^{pi/2} cos(y)**power dy`` for ``power > -1``."""
    return math.exp(special.betaln(0.5, 0.5 * (power + 1.0)))


def _in_envelope(alpha: float, nu: float) -> bool:
    return _ALPHA_RANGE[0] <= alpha <= _ALPHA_RANGE[1] and abs(nu) <= _NU_MAX


def _finish(res: tuple, spec: QuadSpec, strict: bool, what: str, factor: float = 1.0) -> KernelValue:
    value, err, conv, scale = res
    if not conv and strict:
        raise NonConvergence(f"{what}: estimated relative error {err:.2e} > {spec.rel_tol:.2e}")
    return KernelValue(factor * value, err, conv, abs(factor) * scale)


# ---------------------------------------------------------------------------
# incomplete cosine-power integrals


def _log_F(power: float, x: np.ndarray, da: np.ndarray, db: np.ndarray) -> np.ndarray:
    """log of ``int_{-pi/2}^x cos(y)**power dy`` on (-pi/2, pi/2).

    ``da``/``db`` are the distances of ``x`` to the left/right endpoint. Both
    halves are written in terms of the distance to the nearer endpoint so the
    ``cos**power`` tail is resolved there.
    """
    a = 0.5 * (power + 1.0)
    log_half_w = special.betaln(0.5, a) - math.log(2.0)
    left = da < db
    out = np.empty_like(x)
    with np.errstate(divide="ignore"):
        out[left] = log_half_w + np.log(special.betainc(a, 0.5, np.sin(da[left]) ** 2))
    # right half: 1 + I(sin^2 x; 1/2, a) = 2 - I(cos^2 x; a, 1/2), cos x = sin(db)
    out[~left] = log_half_w + np.log(2.0 - special.betainc(a, 0.5, np.sin(db[~left]) ** 2))
    return out


def _F_real(power: float, x: float) -> float:
    if not -0.5 * math.pi <= x <= 0.5 * math.pi:
        raise ValueError("x must lie in [-pi/2, pi/2]")
    xa = np.array([x])
    val = math.exp(_log_F(power, xa, xa + 0.5 * math.pi, 0.5 * math.pi - xa)[0])
    return val


def F_incomplete(alpha: float, x: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    """``F(x) = int_{-pi/2}^x cos(y)**alpha dy`` for real ``x`` in [-pi/2, pi/2].

    Evaluated through the regularized incomplete beta function, which meets
    any ``spec.rel_tol`` down to about 1e-15.
    """
    _check_alpha(alpha)
    return _F_real(alpha, x)


def F_tilde(alpha: float, x: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    """Same as :func:`F_incomplete` with exponent ``alpha - 1``."""
    _check_alpha(alpha)
    return _F_real(alpha - 1.0, x)


def F_on_imaginary_axis(alpha: float, t: float, spec: QuadSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """Return ``(Re F(it), Im F(it))``.

    The real part is constant, ``F(0)``; the imaginary part is
    ``int_0^t cosh(u)**alpha du``.
    """
    _check_alpha(alpha)
    return _F_imag(alpha, t)


def _F_imag(power: float, t: float) -> tuple[float, float]:
    re = 0.5 * wallis(power)
    if t == 0:
        return re, 0.0
    log_g = float(log_cosh_power_primitive(np.array([abs(t)]), power)[0])
    if log_g >= _LOG_MAX:
        raise OverflowError(f"int_0^{t} cosh^{power} exceeds the float range")
    return re, math.copysign(math.exp(log_g), t)


def _check_alpha(alpha: float) -> None:
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")


# ---------------------------------------------------------------------------
# generic evaluators


def _cos_power_integral(
    log_pref: float,
    cos_power: float,
    f_power: float,
    delta: int,
    spec: QuadSpec,
) -> tuple:
    """``exp(log_pref) * int_{-pi/2}^{pi/2} cos^cos_power * F^delta`` (F with exponent f_power)."""

    def integrand(x, da, db):
        log_cos = np.log(np.sin(np.minimum(da, db)))
        logv = log_pref + cos_power * log_cos
        if delta:
            logv = logv + delta * _log_F(f_power, x, da, db)
        return np.exp(logv)

    h = 0.5 * math.pi
    return tanh_sinh(integrand, -h, h, spec.rel_tol, spec.max_refinements)


def _contour_integral(
    log_pref: float,
    cosh_power: float,
    f_power: float,
    f0: float,
    delta: int,
    spec: QuadSpec,
) -> tuple:
    """``exp(log_pref) * int_R cosh(t)**(-cosh_power) * (f0 + i G(t))**delta dt``

    where ``G(t) = int_0^t cosh(u)**f_power du``. The integrand at ``-t`` is the
    conjugate of the one at ``t``; twice the real half-line integral is returned.
    """
    growth = max(f_power, 0.0)
    rate = cosh_power - delta * growth
    if not rate > 0:
        raise DomainNotRepresentable(
            f"contour integrand does not decay (rate {rate:.3g} <= 0)"
        )
    log_f0 = math.log(f0)

    # closed-form majorant: |f0 + iG| <= f0 + t * max(1, cosh(t)**f_power)
    step = 0.25
    grid = np.arange(0.0, _T_CAP + step, step)
    with np.errstate(divide="ignore"):
        log_g_bound = np.log(grid) + growth * log_cosh(grid)
    bound = -cosh_power * log_cosh(grid) + delta * np.logaddexp(log_f0, log_g_bound)
    slope = (bound[:-1] - bound[1:]) / step
    peak = np.maximum.accumulate(bound)[:-1]
    ref = peak + min(0.0, -0.5 * math.log(cosh_power))
    ok = (slope > 0) & (bound[:-1] - np.log(np.where(slope > 0, slope, 1.0)) <= ref + math.log(spec.truncation_tail))
    ok &= grid[:-1] >= grid[np.argmax(bound)]
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        raise NonConvergence("could not find a truncation point for the contour integral")
    upper = max(grid[hits[0]], 1.0)
    n_panels = max(8, math.ceil(upper / 0.5))

    def integrand(t):
        if f_power == 0.0:
            log_g = np.log(t)
        else:
            log_g = log_cosh_power_primitive(t, f_power)
        logv = log_pref - cosh_power * log_cosh(t)
        if delta:
            logv = logv + 0.5 * delta * np.logaddexp(2.0 * log_f0, 2.0 * log_g)
            phase = delta * np.arctan(np.exp(log_g - log_f0))
            return np.exp(logv) * np.cos(phase)
        return np.exp(logv)

    val, err, conv, scale = gauss_legendre_panels(integrand, upper, n_panels, spec.rel_tol, spec.max_refinements)
    return 2.0 * val, err, conv, 2.0 * scale


# ---------------------------------------------------------------------------
# cone kernels


@lru_cache(maxsize=None)
def _int_B(n: int, k: int, spec: QuadSpec) -> KernelValue:
    if k == 0:
        k = 1
    log_pref = -math.lgamma(k) - math.lgamma(n - k + 1)
    pk, pn = k - 1, n - k

    def integrand(x, da, db):
        logv = log_pref + pn * np.log(da)
        if pk:
            logv = logv + pk * np.log(np.sin(np.minimum(da, db)))
        return np.exp(logv)

    res = tanh_sinh(integrand, 0.0, math.pi, spec.rel_tol, spec.max_refinements)
    return _finish(res, spec, n <= 30, f"B{{{n},{k}}}")


def int_B(n: int, k: int, spec: QuadSpec = DEFAULT_SPEC) -> KernelValue:
    """``B{n,k} = 1/((k-1)!(n-k)!) int_0^pi sin(x)**(k-1) x**(n-k) dx``.

    ``B{n,0} = B{n,1} = pi**n/n!`` and ``B{n,k} = 0`` for ``k > n``.
    """
    if int(n) != n or int(k) != k:
        raise ValueError("int_B takes integer indices")
    n, k = int(n), int(k)
    if k > n:
        return _ZERO
    if n < 1 or k < 0:
        raise DomainNotRepresentable(f"B{{{n},{k}}} is undefined")
    return _int_B(n, k, spec)


@lru_cache(maxsize=None)
def _int_A(n: int, k: int, spec: QuadSpec) -> KernelValue:
    log_pref = math.lgamma(n + 1) - math.lgamma(n - k + 1) - _LOG_PI
    res = _contour_integral(log_pref, n + 1.0, 0.0, 0.5 * math.pi, n - k, spec)
    return _finish(res, spec, n <= 30, f"A[{n},{k}]")


def int_A(n: int, k: int, spec: QuadSpec = DEFAULT_SPEC) -> KernelValue:
    """``A[n,k] = n!/(n-k)! / pi * int_R cosh(x)**(-n-1) (pi/2 + i x)**(n-k) dx``.

    ``A[n,k] = 0`` for ``k > n``. The summand convention for ``0**2 A[-1,-1]``
    is not a kernel value and is handled by the cone formulas.
    """
    if int(n) != n or int(k) != k:
        raise ValueError("int_A takes integer indices")
    n, k = int(n), int(k)
    if k > n:
        return _ZERO
    if n < 0:
        raise DomainNotRepresentable(f"A[{n},{k}] is undefined")
    return _int_A(n, k, spec)


# ---------------------------------------------------------------------------
# beta and beta' kernels

def _as_index(idx) -> KernelIndex:
    if isinstance(idx, KernelIndex):
        return idx
    nu, kappa = idx
    return KernelIndex.of(nu, kappa)


@lru_cache(maxsize=None)
def _curly_B(alpha: float, kappa: float, delta: int, spec: QuadSpec) -> KernelValue:
    log_pref = delta * math.log(alpha) - math.lgamma(delta + 1)
    res = _cos_power_integral(log_pref, alpha * kappa, alpha, delta, spec)
    return _finish(res, spec, _in_envelope(alpha, kappa + delta), f"curly_B({alpha}; {kappa + delta}, {kappa})",
                   float(special.rgamma(kappa)))


def curly_B(alpha: float, idx, spec: QuadSpec = DEFAULT_SPEC) -> KernelValue:
    """Beta-polytope kernel ``B{nu, kappa}``, defined for ``kappa > -1/alpha``.

    ``alpha**(nu-kappa) / (Gamma(kappa) (nu-kappa)!) *
    int_{-pi/2}^{pi/2} cos(x)**(alpha kappa) F(x)**(nu-kappa) dx``
    """
    _check_alpha(alpha)
    idx = _as_index(idx)
    if idx.is_null:
        return _ZERO
    if not idx.kappa > -1.0 / alpha:
        raise DomainNotRepresentable(f"curly_B needs kappa > -1/alpha, got kappa={idx.kappa!r}")
    return _curly_B(float(alpha), idx.kappa, idx.delta, spec)


@lru_cache(maxsize=None)
def _curly_A(alpha: float, kappa: float, delta: int, spec: QuadSpec, with_gamma: bool = True) -> KernelValue:
    nu = kappa + delta
    log_pref = (delta + 1) * math.log(alpha) - math.lgamma(delta + 1) - _LOG_2PI
    if with_gamma:
        log_pref += math.lgamma(nu + 1)
    f0 = 0.5 * wallis(alpha)
    res = _contour_integral(log_pref, alpha * nu, alpha, f0, delta, spec)
    return _finish(res, spec, _in_envelope(alpha, nu), f"curly_A({alpha}; {nu}, {kappa})")


def curly_A(alpha: float, idx, spec: QuadSpec = DEFAULT_SPEC, with_gamma: bool = True) -> KernelValue:
    """Beta-polytope kernel ``A[nu, kappa]``, defined for ``kappa > 0``.

    ``alpha**(nu-kappa+1) / (nu-kappa)! * Gamma(nu+1) / (2 pi) *
    int_R cosh(t)**(-alpha nu) F(it)**(nu-kappa) dt``

    ``with_gamma=False`` drops the ``Gamma(nu+1)`` factor, for callers that
    cancel it against a matching ``1/Gamma`` of their own.
    """
    _check_alpha(alpha)
    idx = _as_index(idx)
    if idx.is_null:
        return _ZERO
    if not idx.kappa > 0:
        raise DomainNotRepresentable(f"curly_A needs kappa > 0, got kappa={idx.kappa!r}")
    return _curly_A(float(alpha), idx.kappa, idx.delta, spec, with_gamma)


@lru_cache(maxsize=None)
def _tilde_B(alpha: float, kappa: float, delta: int, spec: QuadSpec) -> KernelValue:
    log_pref = delta * math.log(alpha) - math.lgamma(delta + 1) - math.lgamma(kappa)
    res = _cos_power_integral(log_pref, alpha * kappa - 1.0, alpha - 1.0, delta, spec)
    return _finish(res, spec, _in_envelope(alpha, kappa + delta), f"tilde_B({alpha}; {kappa + delta}, {kappa})")


def tilde_B(alpha: float, idx, spec: QuadSpec = DEFAULT_SPEC) -> KernelValue:
    """Beta'-polytope kernel ``B~{nu, kappa}``, defined for ``kappa > 0``.

    Uses ``cos(x)**(alpha kappa - 1)`` and the exponent ``alpha - 1`` inside ``F``.
    """
    _check_alpha(alpha)
    idx = _as_index(idx)
    if idx.is_null:
        return _ZERO
    if not idx.kappa > 0:
        raise DomainNotRepresentable(f"tilde_B needs kappa > 0, got kappa={idx.kappa!r}")
    return _tilde_B(float(alpha), idx.kappa, idx.delta, spec)


def tilde_A_decay_rate(alpha: float, idx: KernelIndex) -> float:
    """Exponential decay rate of the ``tilde_A`` integrand; must be positive."""
    return alpha * idx.nu + 1.0 - idx.delta * max(alpha - 1.0, 0.0)


@lru_cache(maxsize=None)
def _tilde_A(alpha: float, kappa: float, delta: int, spec: QuadSpec, with_gamma: bool = True) -> KernelValue:
    nu = kappa + delta
    lg, sign = _signed_lgamma(nu + 1.0) if with_gamma else (0.0, 1.0)
    log_pref = (delta + 1) * math.log(alpha) - math.lgamma(delta + 1) + lg - _LOG_2PI
    f0 = 0.5 * wallis(alpha - 1.0)
    res = _contour_integral(log_pref, alpha * nu + 1.0, alpha - 1.0, f0, delta, spec)
    return _finish(res, spec, _in_envelope(alpha, nu), f"tilde_A({alpha}; {nu}, {kappa})", sign)


def tilde_A(alpha: float, idx, spec: QuadSpec = DEFAULT_SPEC, with_gamma: bool = True) -> KernelValue:
    """Beta'-polytope kernel ``A~[nu, kappa]``.

    Uses ``cosh(t)**(-alpha nu - 1)`` and the exponent ``alpha - 1`` inside
    ``F``. Accepted whenever the integrand decays exponentially, which for
    ``alpha >= 1`` means ``alpha kappa > -1 - (nu - kappa)``. ``with_gamma``
    is as in :func:`curly_A`.
    """
    _check_alpha(alpha)
    idx = _as_index(idx)
    if idx.is_null:
        return _ZERO
    if not tilde_A_decay_rate(alpha, idx) > 0:
        raise DomainNotRepresentable(
            f"tilde_A integrand does not decay for alpha={alpha!r}, nu={idx.nu!r}, kappa={idx.kappa!r}"
        )
    return _tilde_A(float(alpha), idx.kappa, idx.delta, spec, with_gamma)
