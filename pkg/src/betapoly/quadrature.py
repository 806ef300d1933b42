"""Low-level quadrature rules used by the kernel evaluators.

Two integrators live here:

* :func:`tanh_sinh` -- double-exponential rule on a finite interval. The
  integrand receives the distances to both endpoints as well as the abscissa,
  so endpoint singularities such as ``(cos x)**p`` with ``-1 < p < 0`` can be
  evaluated without cancellation.
* :func:`gauss_legendre_panels` -- composite Gauss-Legendre on ``[0, T]`` with
  dyadic panel refinement, used after an infinite range has been truncated.

Both return ``(value, est_rel_error, converged, scale)`` where ``scale`` is
the magnitude the error estimate is relative to (``max(|I|, int |f|)``).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np

_HALF_PI = 0.5 * math.pi
# Nodes whose distance to an endpoint underflows below this are dropped.
_TINY = 1e-300


@lru_cache(maxsize=64)
def _gl_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _ts_nodes(h: float, odd_only: bool, t_max: float = 6.2):
    """Half-line tanh-sinh nodes ``t = j*h > 0`` mapped to ``u`` in (0, 1).

    Returns (t, one_minus_u, weight) where weight is d u / d t.
    """
    j = np.arange(1, int(t_max / h) + 1)
    if odd_only:
        j = j[j % 2 == 1]
    t = j * h
    s = _HALF_PI * np.sinh(t)
    e2 = np.exp(-2.0 * s)
    comp = 2.0 * e2 / (1.0 + e2)  # 1 - tanh(s), accurate for large s
    w = _HALF_PI * np.cosh(t) * 4.0 * e2 / (1.0 + e2) ** 2
    return t, comp, w


def tanh_sinh(
    f: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray],
    a: float,
    b: float,
    rel_tol: float = 1e-12,
    max_levels: int = 12,
    min_levels: int = 3,
) -> tuple[float, float, bool, float]:
    """Integrate ``f`` over ``[a, b]`` with the tanh-sinh rule.

    Parameters
    ----------
    f : callable
        Vectorised integrand ``f(x, x - a, b - x)``. The two distance arguments
        are computed from the transformed variable directly and stay accurate
        right up to the endpoints.
    a, b : float
        Finite limits with ``a < b``.
    rel_tol : float
        Stop once two successive halvings of the step agree to this
        relative tolerance.
    max_levels : int
        Number of step halvings allowed after the initial ``h = 1`` level.

    Returns
    -------
    value, est_rel_error, converged, scale
    """
    if not b > a:
        raise ValueError("tanh_sinh needs a < b")
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)

    def level_sum(h: float, odd_only: bool) -> float:
        _, comp, w = _ts_nodes(h, odd_only)
        dist = half * comp
        keep = dist > _TINY
        dist, w = dist[keep], w[keep]
        # right side: x = b - dist ; left side: x = a + dist
        right = f(b - dist, 2.0 * half - dist, dist)
        left = f(a + dist, dist, 2.0 * half - dist)
        return float(np.sum(w * (right + left))), float(np.sum(w * (np.abs(right) + np.abs(left))))

    centre = float(f(np.array([mid]), np.array([half]), np.array([half]))[0])
    h = 1.0
    total, mass = level_sum(h, odd_only=False)
    total += centre * _HALF_PI
    mass += abs(centre) * _HALF_PI
    estimate = half * h * total
    err = math.inf
    scale = 0.0
    for level in range(1, max_levels + 1):
        h *= 0.5
        dt, dm = level_sum(h, odd_only=True)
        total += dt
        mass += dm
        new = half * h * total
        scale = max(abs(new), half * h * mass)
        err = abs(new - estimate) / scale if scale > 0 else abs(new - estimate)
        estimate = new
        if level >= min_levels and err <= rel_tol:
            return estimate, err, True, scale
    return estimate, err, False, scale


def gauss_legendre_panels(
    f: Callable[[np.ndarray], np.ndarray],
    upper: float,
    n_panels: int,
    rel_tol: float = 1e-12,
    max_refinements: int = 12,
    order: int = 20,
) -> tuple[float, float, bool, float]:
    """Composite Gauss-Legendre on ``[0, upper]`` with dyadic refinement.

    ``f`` is called once per refinement level with the full sorted node array,
    which lets integrands carry a cumulative inner integral along the sweep.
    The error estimate is relative to ``max(|I|, int |f|)``.
    """
    x, w = _gl_rule(order)
    prev = None
    err = math.inf
    panels = n_panels
    for _ in range(max_refinements + 1):
        edges = np.linspace(0.0, upper, panels + 1)
        lo = edges[:-1, None]
        width = np.diff(edges)[:, None]
        nodes = (lo + 0.5 * width * (x[None, :] + 1.0)).ravel()
        weights = (0.5 * width * w[None, :]).ravel()
        vals = f(nodes)
        value = float(np.sum(weights * vals))
        # measured against the L1 mass so that integrals cancelling to ~0 still converge
        scale = max(abs(value), float(np.sum(weights * np.abs(vals))))
        if prev is not None:
            err = abs(value - prev) / scale if scale > 0 else abs(value - prev)
            if err <= rel_tol:
                return value, err, True, scale
        prev = value
        panels *= 2
    return prev, err, False, scale


def log_cosh(t: np.ndarray) -> np.ndarray:
    """``log(cosh t)`` without overflow."""
    a = np.abs(t)
    return a + np.log1p(np.exp(-2.0 * a)) - math.log(2.0)


def log_cosh_power_primitive(t: np.ndarray, power: float, order: int = 12) -> np.ndarray:
    """Return ``log of integral_0^t cosh(u)**power du`` for sorted ``t >= 0``.

    The nodes are swept once in increasing order and the integral is
    accumulated interval by interval in log space, so the result stays finite
    long after ``cosh(t)**power`` itself would overflow. Intervals longer than
    ``1/max(1, |power|)`` are subdivided first.
    """
    t = np.asarray(t, dtype=float)
    if t.ndim != 1:
        raise ValueError("t must be one-dimensional")
    if t.size and (t[0] < 0 or np.any(np.diff(t) < 0)):
        raise ValueError("t must be sorted and non-negative")
    if power == 0.0:
        with np.errstate(divide="ignore"):
            return np.log(t)
    hmax = 1.0 / max(1.0, abs(power))
    knots = np.concatenate(([0.0], t))
    gaps = np.diff(knots)
    pieces = np.maximum(1, np.ceil(gaps / hmax).astype(int))
    # fine grid: each requested node is the right end of its last piece
    starts = np.repeat(knots[:-1], pieces)
    steps = np.repeat(gaps / pieces, pieces)
    offs = np.concatenate([np.arange(p) for p in pieces]) if pieces.size else np.zeros(0)
    a = starts + offs * steps
    b = a + steps
    x, w = _gl_rule(order)
    u = 0.5 * (a + b)[:, None] + 0.5 * steps[:, None] * x[None, :]
    logv = power * log_cosh(u) + np.log(w)[None, :]
    m = logv.max(axis=1)
    with np.errstate(divide="ignore"):
        log_inc = np.log(0.5 * steps) + m + np.log(np.sum(np.exp(logv - m[:, None]), axis=1))
    log_cum = np.logaddexp.accumulate(log_inc)
    ends = np.cumsum(pieces) - 1
    out = log_cum[ends]
    out[t == 0.0] = -np.inf
    return out
