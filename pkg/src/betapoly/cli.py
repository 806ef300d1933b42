"""Command-line front end: ``betapoly <subcommand> ...``.

Exit codes: 0 success, 1 a verification or simulation check failed, 2 the
requested quantity is outside the representable domain, 3 a quadrature did
not converge, 64 invalid usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Optional

from . import __version__
from .errors import DegenerateInput, DomainNotRepresentable, NonConvergence
from .kernels import QuadSpec
from .results import FaceNumberResult, Form

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_NONCONV, EXIT_USAGE = 0, 1, 2, 3, 64


@dataclass
class RunManifest:
    command: str
    params: dict
    tool_version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))
    seed: Optional[int] = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(x) -> str:
    """Shortest string that round-trips the double (at most 17 significant digits)."""
    if x is None:
        return ""
    if hasattr(x, "item") and not isinstance(x, str):
        x = x.item()
    if isinstance(x, float):
        return repr(x) if math.isfinite(x) else str(x)
    return str(x)


def _clean(obj):
    """Turn numpy scalars and non-finite floats into JSON-safe values."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def _emit_json(doc: dict, out) -> None:
    out.write(json.dumps(_clean(doc), indent=2) + "\n")


def _emit_csv(header: list[str], rows: list[list], manifest: RunManifest, out) -> None:
    out.write("# manifest: " + json.dumps(_clean(asdict(manifest))) + "\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_num(v) for v in r])


def _spec(args) -> QuadSpec:
    return QuadSpec(rel_tol=args.tol) if args.tol is not None else QuadSpec()


def _params(args, *names) -> dict:
    return {n: getattr(args, n) for n in names if getattr(args, n, None) is not None}


# --- fvector / angle ---------------------------------------------------------


def _face_number(family: str, n: int, d: int, k: int, beta, form, spec) -> FaceNumberResult:
    from .beta import BetaParams, expected_faces_beta
    from .betaprime import BetaPrimeParams, expected_faces_beta_prime
    from .cone import ConeParams, expected_faces_cone

    if family == "cone":
        return expected_faces_cone(ConeParams(n, d, k), form, spec)
    if beta is None:
        raise ValueError(f"--beta is required for the {family} family")
    if family == "beta":
        return expected_faces_beta(BetaParams(n, d, beta, k), form, spec)
    return expected_faces_beta_prime(BetaPrimeParams(n, d, beta, k), form, spec)


def _report_result(command: str, params: dict, res: FaceNumberResult, args, out) -> int:
    manifest = RunManifest(command, params)
    if args.csv:
        rows = [["value", "", res.value], ["est_error", "", res.est_error]]
        rows += [["summand", i, v] for i, v in res.summands]
        _emit_csv(["field", "index", "value"], rows, manifest, out)
    elif args.json:
        _emit_json({
            "manifest": asdict(manifest),
            "value": res.value,
            "form": res.form.value,
            "est_error": res.est_error,
            "summands": [{"index": i, "value": v} for i, v in res.summands],
        }, out)
    else:
        out.write(f"{res.value:.6g}  ({res.form.value}, est. rel. error {res.est_error:.1e})\n")
        for i, v in res.summands:
            out.write(f"  term {i:>3}: {v:.6g}\n")
    return EXIT_OK


def cmd_fvector(args, out) -> int:
    res = _face_number(args.family, args.n, args.d, args.k, args.beta, Form.parse(args.form), _spec(args))
    params = _params(args, "family", "n", "d", "k", "beta", "form", "tol")
    return _report_result("fvector", params, res, args, out)


def cmd_angle(args, out) -> int:
    from .cone import ConeParams, expected_solid_angle

    res = expected_solid_angle(ConeParams(args.n, args.d), Form.parse(args.form), _spec(args))
    return _report_result("angle", _params(args, "n", "d", "form", "tol"), res, args, out)


# --- verify / stirling -------------------------------------------------------


def cmd_verify(args, out) -> int:
    from .verify import run_suite

    report = run_suite(args.suite, args.grid, args.tol)
    manifest = RunManifest("verify", _params(args, "suite", "grid", "tol"))
    _emit_json({"manifest": asdict(manifest), **report}, out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_stirling(args, out) -> int:
    from .stirling import build_table, theorem41_triple, verify_theorem41

    manifest = RunManifest("stirling", _params(args, "max_n", "triple"))
    doc: dict = {"manifest": asdict(manifest)}
    ok = True
    if args.triple:
        n, d, k = args.triple
        L, M, R = theorem41_triple(n, d, k, build_table(n + 1))
        # integers can exceed double range, so they travel as strings
        doc["triple"] = {"n": n, "d": d, "k": k, "L": str(L), "M": str(M), "R": str(R), "equal": L == M == R}
        ok = L == M == R
    else:
        rep = verify_theorem41(args.max_n)
        doc["verification"] = {
            "max_n": rep.max_n,
            "tuples": rep.checked,
            "passed": rep.ok,
            "counterexample": None if rep.ok else [
                *rep.counterexample[:3], [str(x) for x in rep.counterexample[3]]
            ],
        }
        ok = rep.ok
    _emit_json(doc, out)
    return EXIT_OK if ok else EXIT_FAIL


# --- simulate ----------------------------------------------------------------


def cmd_simulate(args, out) -> int:
    from .geomsim import run_experiment

    params = {"d": args.d}
    if args.beta is not None:
        params["beta"] = args.beta
    report = run_experiment(args.model, params, args.n, args.reps, args.seed, args.threads)
    manifest = RunManifest("simulate", _params(args, "model", "d", "beta", "n", "reps"), seed=args.seed)
    passed = report.passed()
    _emit_json({"manifest": asdict(manifest), **report.to_dict(), "passed": passed}, out)
    if any(a is None for a in report.analytic):
        return EXIT_NONCONV
    return EXIT_OK if passed else EXIT_FAIL


# --- table -------------------------------------------------------------------


def _parse_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..")
        elif "-" in text.strip("-"):
            lo, hi = text.split("-")
        else:
            lo = hi = text
        return range(int(lo), int(hi) + 1)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a range like 3..8, got {text!r}") from exc


def cmd_table(args, out) -> int:
    spec = _spec(args)
    forms = list(Form)
    header = ["n", "k"] + [f.value for f in forms] + ["max_residual"]
    rows = []
    for n in args.n_range:
        for k in args.k_range:
            if not (n >= args.d + 1 and 1 <= k <= args.d):
                continue
            vals: list = []
            for f in forms:
                try:
                    vals.append(_face_number(args.family, n, args.d, k, args.beta, f, spec).value)
                except DomainNotRepresentable:
                    vals.append("domain")
            binom = math.comb(n, k)
            num = {f: v for f, v in zip(forms, vals) if not isinstance(v, str)}
            res = []
            if Form.B_SIDE in num and Form.A_SIDE in num:
                res.append(abs(num[Form.B_SIDE] - num[Form.A_SIDE]) / max(abs(num[Form.B_SIDE]), 1e-300))
            for p in (Form.B_SIDE, Form.A_SIDE):
                for c in (Form.COMPLEMENT_B_SIDE, Form.COMPLEMENT_A_SIDE):
                    if p in num and c in num:
                        res.append(abs(num[p] + num[c] - binom) / binom)
            rows.append([n, k] + vals + [max(res) if res else None])
    manifest = RunManifest("table", _params(args, "family", "d", "beta", "tol") | {
        "n_range": [args.n_range.start, args.n_range.stop - 1],
        "k_range": [args.k_range.start, args.k_range.stop - 1],
    })
    if args.json:
        _emit_json({"manifest": asdict(manifest), "columns": header, "rows": rows}, out)
    else:
        _emit_csv(header, rows, manifest, out)
    return EXIT_OK


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="betapoly", description="Expected face numbers of random beta, beta' polytopes and cones.")
    p.add_argument("--version", action="version", version=f"betapoly {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def output_flags(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", action="store_true", help="JSON document with manifest")
        g.add_argument("--csv", action="store_true", help="CSV with a manifest comment line")

    def json_only(sp):
        sp.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")

    def tol_flag(sp):
        sp.add_argument("--tol", type=float, default=None, help="relative quadrature tolerance")

    fv = sub.add_parser("fvector", help="expected number of faces")
    fv.add_argument("family", choices=["cone", "beta", "betaprime"])
    fv.add_argument("--n", type=int, required=True)
    fv.add_argument("--d", type=int, required=True)
    fv.add_argument("--k", type=int, default=1, help="points spanning the face")
    fv.add_argument("--beta", type=float)
    fv.add_argument("--form", default="B_side", help="B_side, A_side, complement_B_side, complement_A_side or b/a/cb/ca")
    tol_flag(fv)
    output_flags(fv)

    an = sub.add_parser("angle", help="expected solid angle of the half-sphere cone")
    an.add_argument("--n", type=int, required=True)
    an.add_argument("--d", type=int, required=True)
    an.add_argument("--form", default="A_side")
    tol_flag(an)
    output_flags(an)

    ve = sub.add_parser("verify", help="run identity suites over the grid manifest")
    ve.add_argument("--suite", default="all", choices=["kernels", "cones", "beta", "betaprime", "stirling", "all"])
    ve.add_argument("--grid", default="default", choices=["default", "extended"])
    tol_flag(ve)
    json_only(ve)

    st = sub.add_parser("stirling", help="exact Stirling identity checks")
    st.add_argument("--max-n", type=int, default=50)
    st.add_argument("--triple", type=int, nargs=3, metavar=("N", "D", "K"))
    json_only(st)

    si = sub.add_parser("simulate", help="Monte Carlo face counts against the formulas")
    si.add_argument("--model", required=True, choices=["cone", "beta", "betaprime"])
    si.add_argument("--d", type=int, required=True)
    si.add_argument("--beta", type=float)
    si.add_argument("--n", type=int, required=True)
    si.add_argument("--reps", type=int, default=10000)
    si.add_argument("--seed", type=int, default=0)
    si.add_argument("--threads", type=int, default=None)
    json_only(si)

    ta = sub.add_parser("table", help="all four forms over a range of n and k")
    ta.add_argument("family", choices=["cone", "beta", "betaprime"])
    ta.add_argument("--n-range", type=_parse_range, required=True)
    ta.add_argument("--d", type=int, required=True)
    ta.add_argument("--k-range", type=_parse_range, default=None)
    ta.add_argument("--beta", type=float)
    tol_flag(ta)
    output_flags(ta)
    return p


_COMMANDS = {
    "fvector": cmd_fvector,
    "angle": cmd_angle,
    "verify": cmd_verify,
    "stirling": cmd_stirling,
    "simulate": cmd_simulate,
    "table": cmd_table,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "table" and args.k_range is None:
        args.k_range = range(1, args.d + 1)
    try:
        return _COMMANDS[args.command](args, out)
    except DomainNotRepresentable as exc:
        print(f"betapoly: not representable: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NonConvergence as exc:
        print(f"betapoly: quadrature did not converge: {exc}", file=sys.stderr)
        return EXIT_NONCONV
    except (ValueError, DegenerateInput) as exc:
        print(f"betapoly: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv=None) -> str:
    """Run the CLI and return its standard output (for scripting and tests)."""
    buf = io.StringIO()
    main(argv, buf)
    return buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
