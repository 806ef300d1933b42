import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from betapoly import kernels as K
from betapoly.errors import DomainNotRepresentable
from betapoly.kernels import KernelIndex, QuadSpec


# --- integer kernels ---------------------------------------------------------


@pytest.mark.parametrize(
    "n, k, want",
    [
        (5, 1, math.pi ** 5 / 120),
        (5, 0, math.pi ** 5 / 120),
        (2, 3, 0.0),
        (2, 2, 2.0),
        (4, 2, (math.pi ** 2 - 4) / 2),
    ],
)
def test_int_B_closed_forms(n, k, want):
    assert K.int_B(n, k).value == pytest.approx(want, rel=1e-13, abs=0)


@pytest.mark.parametrize(
    "n, k, want",
    [(1, 1, 2 / math.pi), (0, 1, 0.0), (0, 0, 1.0), (2, 1, math.pi / 2), (2, 2, 1.0)],
)
def test_int_A_closed_forms(n, k, want):
    assert K.int_A(n, k).value == pytest.approx(want, rel=1e-13, abs=0)


def test_int_A_against_mpmath_oracle():
    # A[n,k] = n!/(n-k)! / pi * int cosh^-(n+1) (pi/2 + i x)^(n-k) dx
    mp.mp.dps = 30
    for n, k in [(3, 0), (4, 1), (5, -2)]:
        f = lambda x: mp.re(mp.cosh(x) ** -(n + 1) * (mp.pi / 2 + 1j * x) ** (n - k))  # noqa: E731
        pref = mp.factorial(n) / mp.factorial(n - k)
        want = float(pref / mp.pi * mp.quad(f, [-mp.inf, 0, mp.inf]))
        assert K.int_A(n, k).value == pytest.approx(want, rel=1e-12)


def test_int_B_positive_and_finite():
    for n in range(1, 15):
        for k in range(0, n + 1):
            v = K.int_B(n, k).value
            assert math.isfinite(v) and v > 0


@settings(max_examples=40, deadline=None)
@given(n=st.integers(0, 18), k=st.integers(-4, 20))
def test_A_recurrence_property(n, k):
    a, b, c = K.int_A(n + 2, k), K.int_A(n, k), K.int_A(n, k - 2)
    scale = max(a.scale, b.scale, (n + 1) ** 2 * c.scale, 1e-300)
    assert abs(a.value - b.value - (n + 1) ** 2 * c.value) <= 1e-12 * scale * 10


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 18), k=st.integers(0, 18))
def test_B_recurrence_property(n, k):
    a, b, c = K.int_B(n, k), K.int_B(n, k + 2), K.int_B(n + 2, k + 2)
    scale = max(a.scale, b.scale, (k + 1) ** 2 * c.scale, 1e-300)
    assert abs(a.value - b.value - (k + 1) ** 2 * c.value) <= 1e-12 * scale * 10


# --- F and log-gamma ---------------------------------------------------------


def test_F_incomplete_values():
    assert K.F_incomplete(3.7, -math.pi / 2) == 0.0
    assert K.F_incomplete(2.0, math.pi / 2) == pytest.approx(math.pi / 2, rel=1e-14)
    assert K.F_incomplete(1.0, 0.0) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.0, 5.0, 10.0])
def test_F_full_range_is_wallis(alpha):
    want = math.sqrt(math.pi) * math.gamma((alpha + 1) / 2) / math.gamma(alpha / 2 + 1)
    assert K.F_incomplete(alpha, math.pi / 2) == pytest.approx(want, rel=1e-10)
    assert K.wallis(alpha) == pytest.approx(want, rel=1e-13)


@pytest.mark.parametrize("alpha", [0.5, 1.5, 4.0])
@pytest.mark.parametrize("x", [-1.4, -0.3, 0.2, 1.5])
def test_F_against_mpmath(alpha, x):
    # double-precision cos loses digits near -pi/2, so the oracle runs in mpmath
    mp.mp.dps = 30
    want = float(mp.quad(lambda y: mp.cos(y) ** alpha, [-mp.pi / 2, x]))
    assert K.F_incomplete(alpha, x) == pytest.approx(want, rel=1e-13)
    want_t = float(mp.quad(lambda y: mp.cos(y) ** (alpha - 1), [-mp.pi / 2, x]))
    assert K.F_tilde(alpha, x) == pytest.approx(want_t, rel=1e-12)


def test_F_monotone():
    xs = np.linspace(-math.pi / 2, math.pi / 2, 41)
    vals = [K.F_incomplete(2.5, x) for x in xs]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_F_on_imaginary_axis():
    assert K.F_on_imaginary_axis(1.0, 0.0) == pytest.approx((1.0, 0.0))
    re, im = K.F_on_imaginary_axis(2.0, 0.0)
    assert re == pytest.approx(math.pi / 4) and im == 0.0
    re, im = K.F_on_imaginary_axis(1.0, 1.0)
    assert re == pytest.approx(1.0) and im == pytest.approx(math.sinh(1.0), rel=1e-13)
    assert K.F_on_imaginary_axis(1.0, -1.0)[1] == pytest.approx(-math.sinh(1.0), rel=1e-13)
    with pytest.raises(OverflowError):
        K.F_on_imaginary_axis(5.0, 400.0)


def test_log_gamma():
    assert K.log_gamma(1.0) == 0.0
    assert K.log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)
    assert K.log_gamma(6.0) == pytest.approx(math.log(120.0), rel=1e-14)
    with pytest.raises(DomainNotRepresentable):
        K.log_gamma(0.0)


# --- index and spec plumbing -------------------------------------------------


def test_kernel_index():
    idx = KernelIndex.of(3.5, 1.5)
    assert idx.delta == 2 and idx.nu == pytest.approx(3.5)
    assert KernelIndex.of(1.0, 2.0).is_null
    with pytest.raises(ValueError):
        KernelIndex.of(2.3, 1.0)


def test_quadspec_validation():
    with pytest.raises(ValueError):
        QuadSpec(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadSpec(max_refinements=0)


# --- alpha kernels -------------------------------------------------------------


@pytest.mark.parametrize("fn", [K.curly_B, K.curly_A, K.tilde_B, K.tilde_A])
def test_null_index_is_zero(fn):
    assert fn(2.0, (1.0, 2.0)).value == 0.0


def test_curly_closed_forms():
    assert K.curly_B(2.0, (1, 1)).value == pytest.approx(math.pi / 2, rel=1e-13)
    assert K.curly_B(1.0, (2, 1)).value == pytest.approx(2.0, rel=1e-13)
    assert K.curly_A(2.0, (1, 1)).value == pytest.approx(2 / math.pi, rel=1e-13)
    # (alpha/0!) * Gamma(3)/(2 pi) * int sech^2 = 2/pi
    assert K.curly_A(1.0, (2, 2)).value == pytest.approx(2 / math.pi, rel=1e-13)


def test_tilde_closed_forms():
    assert K.tilde_B(1.0, (1, 1)).value == pytest.approx(math.pi, rel=1e-13)
    assert K.tilde_B(3.0, (1, 1)).value == pytest.approx(math.pi / 2, rel=1e-13)
    assert K.tilde_A(2.0, (1, 1)).value == pytest.approx(0.5, rel=1e-13)
    assert K.tilde_A(2.0, (2, 2)).value == pytest.approx(0.75, rel=1e-13)


@pytest.mark.parametrize("n", range(1, 7))
def test_tilde_at_alpha_one_matches_integer_kernels(n):
    for k in range(0 if n > 1 else 1, n + 1):
        if k >= 1:
            assert K.tilde_B(1.0, (n, k)).value == pytest.approx(K.int_B(n, k).value, rel=1e-12)
        assert 2 * K.tilde_A(1.0, (n, k)).value == pytest.approx(K.int_A(n, k).value, rel=1e-11, abs=1e-14)


def _mp_contour(alpha, nu, kappa, tilde):
    """Independent evaluation with mpmath; G(t) = int_0^t cosh^p by nested quadrature."""
    mp.mp.dps = 20
    delta = int(round(nu - kappa))
    p = alpha - 1 if tilde else alpha
    f0 = mp.sqrt(mp.pi) * mp.gamma((p + 1) / 2) / mp.gamma(p / 2 + 1) / 2
    decay = alpha * nu + 1 if tilde else alpha * nu
    G = lambda t: mp.quad(lambda u: mp.cosh(u) ** p, [0, t])  # noqa: E731
    f = lambda t: mp.re(mp.cosh(t) ** (-decay) * (f0 + 1j * G(t)) ** delta)  # noqa: E731
    I = 2 * mp.quad(f, [0, 2, 8, 40])
    pref = mp.mpf(alpha) ** (delta + 1) / mp.factorial(delta) * mp.gamma(nu + 1) / (2 * mp.pi)
    return float(pref * I)


@pytest.mark.parametrize(
    "fn, alpha, nu, kappa, tilde",
    [
        (K.curly_A, 2.0, 3.0, 1.0, False),
        (K.curly_A, 1.5, 2.5, 0.5, False),
        (K.tilde_A, 3.0, 2.0, 1.0, True),
        (K.tilde_A, 2.5, 3.4, 1.4, True),
    ],
)
def test_contour_kernels_against_mpmath(fn, alpha, nu, kappa, tilde):
    want = _mp_contour(alpha, nu, kappa, tilde)
    got = fn(alpha, (nu, kappa))
    assert got.converged
    assert got.value == pytest.approx(want, rel=1e-9)


@pytest.mark.parametrize("alpha, nu, kappa", [(0.5, 1.5, -0.5), (2.0, 3.25, 0.25), (7.0, 3.0, 3.0)])
def test_curly_B_against_quad(alpha, nu, kappa):
    delta = int(round(nu - kappa))
    f = lambda x: math.cos(x) ** (alpha * kappa) * K.F_incomplete(alpha, x) ** delta  # noqa: E731
    I = integrate.quad(f, -math.pi / 2, math.pi / 2, epsrel=1e-12, limit=200)[0]
    want = alpha ** delta / math.factorial(delta) * I / math.gamma(kappa)
    assert K.curly_B(alpha, (nu, kappa)).value == pytest.approx(want, rel=1e-8)


def test_domain_errors():
    with pytest.raises(DomainNotRepresentable):
        K.curly_A(2.0, (2.0, 0.0))
    with pytest.raises(DomainNotRepresentable):
        K.curly_B(2.0, (1.5, -0.5))
    with pytest.raises(DomainNotRepresentable):
        K.tilde_B(2.0, (2.0, 0.0))
    # alpha * nu + 1 - delta * (alpha - 1) <= 0
    with pytest.raises(DomainNotRepresentable):
        K.tilde_A(3.0, (3.0, -2.0))


def test_converged_implies_error_within_tolerance():
    spec = QuadSpec(rel_tol=1e-10)
    v = K.curly_A(3.0, (4.0, 2.0), spec)
    assert v.converged and v.est_error <= spec.rel_tol
