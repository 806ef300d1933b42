"""Grid-driven verification suites.

Each suite sweeps a grid from the shipped manifest ``data/grids.json`` and
records, per identity, the worst residual, the tuple where it occurred, any
failures, and every tuple skipped because a kernel had no convergent
integral there. A suite passes iff no identity has a failure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Callable, Iterable, Optional

from . import kernels as K
from .beta import BetaParams, check_cor24, check_prop22, check_thm23, expected_faces_beta
from .betaprime import BetaPrimeParams, check_cor34, check_prop32, check_thm32, expected_faces_beta_prime
from .cone import (
    ConeParams,
    check_corollary_18,
    check_efron,
    check_identity_17,
    check_thm13,
    expected_faces_cone,
    expected_solid_angle,
)
from .errors import DomainNotRepresentable, NonConvergence
from .kernels import DEFAULT_SPEC, KernelValue, QuadSpec
from .results import Form, IdentityCheck
from .stirling import build_table, verify_theorem41

__all__ = [
    "SUITES",
    "DEFAULT_TOL",
    "CheckSummary",
    "load_grids",
    "run_suite",
    "a_recurrence_residual",
    "b_recurrence_residual",
    "curly_B_relation",
    "curly_A_relation",
    "tilde_B_relation",
    "tilde_A_relation",
]

SUITES = ("kernels", "cones", "beta", "betaprime", "stirling")
DEFAULT_TOL = {"kernels": 1e-10, "cones": 1e-8, "beta": 1e-7, "betaprime": 1e-7, "stirling": 0.0}
SIMPLEX_TOL = 1e-9
MONOTONE_TOL = 1e-9


def load_grids() -> dict:
    """The parsed grid manifest (``{"version": ..., "grids": {...}}``)."""
    text = resources.files("betapoly").joinpath("data/grids.json").read_text()
    return json.loads(text)


# --- kernel recurrences ------------------------------------------------------


def _combine(terms: Iterable[tuple[float, KernelValue]]) -> float:
    """Residual of ``sum coef * kernel`` relative to the largest term's scale."""
    terms = list(terms)
    total = sum(c * v.value for c, v in terms)
    scale = max(max(abs(c) * max(v.scale, abs(v.value)) for c, v in terms), 1e-300)
    return abs(total) / scale


def a_recurrence_residual(n: int, k: int, spec: QuadSpec = DEFAULT_SPEC) -> float:
    """``A[n+2,k] - A[n,k] - (n+1)^2 A[n,k-2]``, relative."""
    return _combine([
        (1.0, K.int_A(n + 2, k, spec)),
        (-1.0, K.int_A(n, k, spec)),
        (-float((n + 1) ** 2), K.int_A(n, k - 2, spec)),
    ])


def b_recurrence_residual(n: int, k: int, spec: QuadSpec = DEFAULT_SPEC) -> float:
    """``B{n,k} - B{n,k+2} - (k+1)^2 B{n+2,k+2}``, relative."""
    return _combine([
        (1.0, K.int_B(n, k, spec)),
        (-1.0, K.int_B(n, k + 2, spec)),
        (-float((k + 1) ** 2), K.int_B(n + 2, k + 2, spec)),
    ])


def _gamma_ratio(num: float, den: float) -> float:
    return math.exp(math.lgamma(num) - math.lgamma(den))


def curly_B_relation(alpha: float, nu: float, kappa: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    a = alpha
    c = (kappa - 1 / a) * _gamma_ratio(kappa - 2 / a, kappa + 1)
    return _combine([
        (1.0, K.curly_B(a, (nu, kappa + 2), spec)),
        (1.0, K.curly_B(a, (nu, kappa), spec)),
        (-c, K.curly_B(a, (nu - 2 / a, kappa - 2 / a), spec)),
    ])


def curly_A_relation(alpha: float, nu: float, kappa: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    a = alpha
    c = (nu + 1 / a) * _gamma_ratio(nu, nu + 2 / a + 1)
    return _combine([
        (1.0, K.curly_A(a, (nu - 2, kappa), spec)),
        (1.0, K.curly_A(a, (nu, kappa), spec)),
        (-c, K.curly_A(a, (nu + 2 / a, kappa + 2 / a), spec)),
    ])


def tilde_B_relation(alpha: float, nu: float, kappa: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    a = alpha
    c = (kappa + 1 / a) * _gamma_ratio(kappa + 2 / a, kappa + 1)
    return _combine([
        (1.0, K.tilde_B(a, (nu, kappa), spec)),
        (-1.0, K.tilde_B(a, (nu, kappa + 2), spec)),
        (-c, K.tilde_B(a, (nu + 2 / a, kappa + 2 / a), spec)),
    ])


def tilde_A_relation(alpha: float, nu: float, kappa: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    a = alpha
    c = (nu - 1 / a) * _gamma_ratio(nu, nu - 2 / a + 1)
    return _combine([
        (1.0, K.tilde_A(a, (nu, kappa), spec)),
        (-1.0, K.tilde_A(a, (nu - 2, kappa), spec)),
        (-c, K.tilde_A(a, (nu - 2 / a, kappa - 2 / a), spec)),
    ])


# --- bookkeeping -------------------------------------------------------------


@dataclass
class CheckSummary:
    """Outcome of one identity over a grid."""

    name: str
    tol: float
    count: int = 0
    worst: float = 0.0
    worst_at: Optional[tuple] = None
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    expected_failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def run(self, at: tuple, fn: Callable[[], Any]) -> None:
        """Evaluate ``fn`` (a residual, tuple of residuals or IdentityCheck) at ``at``."""
        try:
            out = fn()
        except DomainNotRepresentable as exc:
            self.skipped.append({"at": list(at), "reason": str(exc)})
            return
        except NonConvergence as exc:
            self.failures.append({"at": list(at), "reason": str(exc)})
            return
        self.count += 1
        if isinstance(out, IdentityCheck) and out.expected_failure:
            entry = {"at": list(at), "residual": out.worst, "note": out.note}
            self.expected_failures.append(entry)
            if not out.worst <= self.tol:
                self.failures.append(entry)
            return
        r = max(out) if isinstance(out, (IdentityCheck, tuple, list)) else float(out)
        r = float(r)
        if r > self.worst or self.worst_at is None:
            self.worst, self.worst_at = r, at
        if not r <= self.tol:
            self.failures.append({"at": list(at), "residual": r})

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "tol": self.tol,
            "checked": self.count,
            "worst": self.worst,
            "worst_at": list(self.worst_at) if self.worst_at is not None else None,
            "passed": self.passed,
            "failures": self.failures,
            "skipped": self.skipped,
            "expected_failures": self.expected_failures,
        }


def _rel(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


def _four_form_checks(prefix: str, evaluate: Callable[[Form], float], binom: int, at: tuple,
                      forms: CheckSummary, totals: CheckSummary) -> dict:
    """B_side vs A_side, and every primal + complement pair against ``C(n, k)``."""
    values = {}
    for f in Form:
        try:
            values[f] = evaluate(f)
        except DomainNotRepresentable as exc:
            forms.skipped.append({"at": list(at) + [f.value], "reason": str(exc)})
    if Form.B_SIDE in values and Form.A_SIDE in values:
        forms.run(at, lambda: _rel(values[Form.B_SIDE], values[Form.A_SIDE]))
    for p in (Form.B_SIDE, Form.A_SIDE):
        for c in (Form.COMPLEMENT_B_SIDE, Form.COMPLEMENT_A_SIDE):
            if p in values and c in values:
                totals.run(at + (p.value, c.value), lambda: abs(values[p] + values[c] - binom) / binom)
    return values


# --- suites ------------------------------------------------------------------


def _suite_kernels(g: dict, tol: float, spec: QuadSpec) -> list[CheckSummary]:
    ga, gb, gr = g["a_recurrence"], g["b_recurrence"], g["relations"]
    a_rec = CheckSummary("A recurrence", tol)
    for n in range(0, ga["n_max"] + 1):
        for k in range(-ga["k_below"], n + ga["k_above"] + 1):
            a_rec.run((n, k), lambda: a_recurrence_residual(n, k, spec))
    b_rec = CheckSummary("B recurrence", tol)
    for n in range(1, gb["n_max"] + 1):
        for k in range(0, n + 1):
            b_rec.run((n, k), lambda: b_recurrence_residual(n, k, spec))
    # the relations are three-term sums of quadratures; allow two digits of slack
    rel_tol = tol * 1e2 if tol < 1e-10 else tol
    out = [a_rec, b_rec]
    for name, fn in (("curly B relation", curly_B_relation), ("curly A relation", curly_A_relation),
                     ("tilde B relation", tilde_B_relation), ("tilde A relation", tilde_A_relation)):
        s = CheckSummary(name, rel_tol)
        for alpha in gr["alpha"]:
            for off in gr["kappa_offsets"]:
                kappa = 2.0 / alpha + off
                for delta in range(gr["delta_max"] + 1):
                    s.run((alpha, kappa + delta, kappa), lambda: fn(alpha, kappa + delta, kappa, spec))
        out.append(s)
    return out


def _suite_cones(g: dict, tol: float, spec: QuadSpec) -> list[CheckSummary]:
    forms = CheckSummary("face numbers: B_side vs A_side", tol)
    totals = CheckSummary("face numbers: primal + complement = C(n,k)", tol)
    aforms = CheckSummary("solid angle: B_side vs A_side", tol)
    atotals = CheckSummary("solid angle: primal + complement = 1/2", tol)
    spot = CheckSummary("E f_1(C_4), d=2, closed form", tol)
    gf = g["four_forms"]
    for d in range(1, gf["d_max"] + 1):
        for n in range(d + 1, gf["n_max"] + 1):
            for k in range(1, d + 1):
                p = ConeParams(n, d, k)
                _four_form_checks("cone", lambda f: expected_faces_cone(p, f, spec).value,
                                  math.comb(n, k), (n, d, k), forms, totals)
            q = ConeParams(n, d)
            v = {f: expected_solid_angle(q, f, spec).value for f in Form}
            aforms.run((n, d), lambda: _rel(v[Form.B_SIDE], v[Form.A_SIDE]))
            atotals.run((n, d), lambda: max(abs(v[Form.B_SIDE] + v[Form.COMPLEMENT_B_SIDE] - 0.5),
                                            abs(v[Form.A_SIDE] + v[Form.COMPLEMENT_A_SIDE] - 0.5)) / 0.5)
    closed = 6.0 * (math.pi ** 2 - 4.0) / math.pi ** 2
    spot.run((4, 2, 1), lambda: abs(expected_faces_cone(ConeParams(4, 2, 1), Form.A_SIDE, spec).value - closed))

    react = CheckSummary("A/B reaction identities", tol)
    for n in range(1, g["reaction"]["n_max"] + 1):
        for d in range(1, n + 1):
            for k in range(1, d + 2):
                react.run((n, d, k), lambda: check_thm13(n, d, k, spec))
    parity = CheckSummary("parity sums = pi^(n-k)/(n-k)!", tol)
    for n in range(2, g["parity_sums"]["n_max"] + 1):
        for k in range(1, n):
            parity.run((n, k), lambda: check_identity_17(n, k, spec))
    cor = CheckSummary("sums of B{r,d} A[d,r-l] = pi^l/l!", tol)
    for d in range(1, g["corollary"]["d_max"] + 1):
        for ell in range(0, g["corollary"]["ell_max"] + 1):
            cor.run((d, ell), lambda: check_corollary_18(d, ell, spec))
    efron = CheckSummary("solid angle vs edge count (Efron)", tol)
    ge = g["efron"]
    for d in range(1, ge["d_max"] + 1):
        for n in range(d + 1, ge["n_max"] + 1):
            efron.run((n, d), lambda: check_efron(n, d, spec))
    return [forms, totals, spot, aforms, atotals, react, parity, cor, efron]


def _polytope_grid_checks(label, tuples, evaluate, tol):
    """Shared four-form, simplex, positivity and monotonicity sweeps."""
    forms = CheckSummary(f"{label}: B_side vs A_side", tol)
    totals = CheckSummary(f"{label}: primal + complement = C(n,k)", tol)
    simplex = CheckSummary(f"{label}: simplex n = d+1 gives C(d+1,k)", SIMPLEX_TOL)
    bounds = CheckSummary(f"{label}: 0 < E f <= C(n,k)", 0.0)
    mono = CheckSummary(f"{label}: E f_0 non-decreasing in n", MONOTONE_TOL)
    vertex_rows: dict = {}
    for (d, beta, n, k) in tuples:
        binom = math.comb(n, k)
        at = (d, beta, n, k)
        vals = _four_form_checks(label, lambda f: evaluate(d, beta, n, k, f), binom, at, forms, totals)
        primal = vals.get(Form.B_SIDE, vals.get(Form.A_SIDE))
        if primal is None:
            continue
        bounds.run(at, lambda: 0.0 if 0 < primal <= binom * (1 + 1e-12) else 1.0)
        if n == d + 1:
            simplex.run(at, lambda: abs(primal - binom))
        if k == 1:
            vertex_rows.setdefault((d, beta), []).append((n, primal))
    for (d, beta), rows in vertex_rows.items():
        rows.sort()
        for (n0, v0), (n1, v1) in zip(rows, rows[1:]):
            mono.run((d, beta, n0, n1), lambda: max(0.0, (v0 - v1) / max(abs(v0), 1.0)))
    return [forms, totals, simplex, bounds, mono]


def _identity_checks(label, alphas, n_max, main, parity, corollary, tol):
    s_main = CheckSummary(f"{label}: weighted vs shifted sums", tol)
    s_par = CheckSummary(f"{label}: parity sums closed form", tol)
    s_cor = CheckSummary(f"{label}: shifted-form closed form", tol)
    for alpha in alphas:
        for n in range(1, n_max + 1):
            for d in range(1, n + 1):
                for k in range(1, d + 2):
                    s_main.run((alpha, n, d, k), lambda: main(n, d, k, alpha))
            for k in range(1, n):
                s_par.run((alpha, n, k), lambda: parity(n, k, alpha))
                s_cor.run((alpha, n, k), lambda: corollary(n, k, alpha))
    return [s_main, s_par, s_cor]


def _suite_beta(g: dict, tol: float, spec: QuadSpec) -> list[CheckSummary]:
    gf = g["four_forms"]
    tuples = [
        (d, float(beta), n, k)
        for d in gf["d"] for beta in gf["beta"] if not (d == 2 and beta == -1)
        for n in range(d + 1, gf["n_max"] + 1) for k in range(1, d + 1)
    ]
    out = _polytope_grid_checks(
        "beta", tuples, lambda d, b, n, k, f: expected_faces_beta(BetaParams(n, d, b, k), f, spec).value, tol
    )
    gi = g["identities"]
    out += _identity_checks(
        "beta", gi["alpha"], gi["n_max"],
        lambda n, d, k, a: check_thm23(n, d, k, a, spec),
        lambda n, k, a: check_prop22(n, k, a, spec),
        lambda n, k, a: check_cor24(n, k, a, spec),
        tol,
    )
    return out


def _suite_betaprime(g: dict, tol: float, spec: QuadSpec) -> list[CheckSummary]:
    gf = g["four_forms"]
    tuples = []
    for d in gf["d"]:
        betas = [d / 2 + off for off in gf["beta_offsets"]] + ([float(d)] if gf.get("beta_equals_d") else [])
        for beta in sorted(set(betas)):
            tuples += [(d, beta, n, k) for n in range(d + 1, gf["n_max"] + 1) for k in range(1, d + 1)]
    out = _polytope_grid_checks(
        "beta'", tuples,
        lambda d, b, n, k, f: expected_faces_beta_prime(BetaPrimeParams(n, d, b, k), f, spec).value, tol,
    )
    gi = g["identities"]
    out += _identity_checks(
        "beta'", gi["alpha"], gi["n_max"],
        lambda n, d, k, a: check_thm32(n, d, k, a, spec),
        lambda n, k, a: check_prop32(n, k, a, spec),
        lambda n, k, a: check_cor34(n, k, a, spec),
        tol,
    )
    cone = CheckSummary("beta' at alpha = 1 vs half-sphere cone", tol)
    for d in gf["d"]:
        for n in range(d + 1, gf["n_max"] + 1):
            for k in range(2, d + 1):
                cone.run((n, d, k), lambda: _rel(
                    expected_faces_beta_prime(BetaPrimeParams(n, d, (d + 1) / 2, k), Form.B_SIDE, spec).value,
                    expected_faces_cone(ConeParams(n, d, k), Form.B_SIDE, spec).value,
                ))
    return out + [cone]


def _suite_stirling(g: dict, tol: float, spec: QuadSpec) -> list[CheckSummary]:
    max_n = g["max_n"]
    table = build_table(max_n + 1)
    rec = CheckSummary("Stirling recurrences", 0.0)
    rec.run((max_n + 1,), lambda: float(table.recurrence_defects()))
    rows = CheckSummary("row sums of the first kind = n!", 0.0)
    rows.run((max_n + 1,), lambda: float(sum(
        sum(table.first_kind[n]) != math.factorial(n) for n in range(max_n + 2))))
    thm = CheckSummary(f"L = M = R for all n <= {max_n}", 0.0)
    report = verify_theorem41(max_n, table)
    thm.run((max_n,), lambda: 0.0 if report.ok else 1.0)
    thm.count = report.checked
    if report.counterexample:
        thm.failures[-1]["counterexample"] = list(report.counterexample[:3]) + [
            [str(x) for x in report.counterexample[3]]
        ]
    return [rec, rows, thm]


_RUNNERS = {
    "kernels": _suite_kernels,
    "cones": _suite_cones,
    "beta": _suite_beta,
    "betaprime": _suite_betaprime,
    "stirling": _suite_stirling,
}


def run_suite(suite: str, grid: str = "default", tol: Optional[float] = None,
              spec: QuadSpec = DEFAULT_SPEC) -> dict:
    """Run one suite (or ``"all"``) and return a JSON-ready report.

    ``tol`` overrides the suite's default tolerance for the numerical
    identities; exact checks always use zero tolerance.
    """
    manifest = load_grids()
    if grid not in manifest["grids"]:
        raise ValueError(f"unknown grid {grid!r}")
    names = SUITES if suite == "all" else (suite,)
    out = {"grid": grid, "grid_version": manifest["version"], "suites": {}}
    for name in names:
        if name not in _RUNNERS:
            raise ValueError(f"unknown suite {name!r}")
        t = DEFAULT_TOL[name] if tol is None or name == "stirling" else tol
        checks = _RUNNERS[name](manifest["grids"][grid][name], t, spec)
        out["suites"][name] = {
            "passed": all(c.passed for c in checks),
            "tol": t,
            "checks": [c.to_dict() for c in checks],
        }
    out["passed"] = all(s["passed"] for s in out["suites"].values())
    return out
