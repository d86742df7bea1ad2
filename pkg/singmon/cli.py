"""Command-line front end: `singmon <subcommand> [options] [--json]`.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""
import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from singmon.config import get_settings
from singmon.errors import SingmonError
from singmon.logging_config import configure_logging
from singmon.models import CommandConfig, IntPoly, SeifertData, VerificationReport, WeightSystem
from singmon.processing.catalog import entries, lookup, lookup_label, validate_all
from singmon.processing.frameshape import (
    expand_series,
    factor_cyclotomic,
    fs_format,
    fs_parse,
    fs_to_json,
    newton_sum,
    roots_power_sum_numeric,
    saito_dual,
    saito_dual_auto,
    to_polynomial,
)
from singmon.processing.mckay import (
    affine_coxeter_charpoly,
    build_root_system,
    coxeter_charpoly,
    kac_dims,
    mckay_verify,
    pg0_closed_form,
    pg_series,
)
from singmon.processing.monodromy import charpoly_hypersurface, charpoly_oracle, lambda_k, suspension
from singmon.processing.seifert import (
    TOLERANCE,
    bundle,
    bundle_from_orbit,
    poincare_series,
    residue_exact,
    seifert_data,
    wagreich3_check,
)
from singmon.processing.suites import SUITES, run_suite

logger = logging.getLogger("singmon.cli")

MCKAY_VIEWS = ("coxeter", "affine", "series", "closed-form", "dims", "verify")


class Output:
    """Collects what a handler prints so text and JSON modes share one code path."""

    def __init__(self, json_mode: bool):
        self.json_mode = json_mode
        self.lines: List[str] = []
        self.payload: Any = None

    def text(self, line: str) -> None:
        self.lines.append(line)

    def flush(self) -> None:
        if self.json_mode:
            print(json.dumps(self.payload, indent=2, sort_keys=True, default=str))
        else:
            for line in self.lines:
                print(line)


# --- argument types ---------------------------------------------------------------


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _three(weights: Sequence[int], degree: int) -> Sequence[int]:
    if len(weights) != 3:
        raise SingmonError(f"expected three weights, got {len(weights)}")
    return WeightSystem(weights=list(weights), degrees=[degree]).weights


def _report_lines(report: VerificationReport) -> List[str]:
    lines = [f"{report.subject}: {'PASS' if report.passed else 'FAIL'}"]
    for name, ok in report.checks.items():
        lines.append(f"  {name}: {'ok' if ok else 'FAIL'}")
    for name in report.not_applicable:
        lines.append(f"  {name}: n/a")
    return lines


def _seifert_text(data: SeifertData) -> str:
    if data.b is None:
        pairs = ", ".join(f"({a})" for a in data.alphas)
        return f"{{{data.genus}; {pairs}}}" if pairs else f"{{{data.genus}}}"
    pairs = ", ".join(f"({p.alpha},{p.beta})" for p in data.pairs)
    return f"{{{data.genus}; {data.b}; {pairs}}}" if pairs else f"{{{data.genus}; {data.b}}}"


# --- handlers ---------------------------------------------------------------------


def cmd_poincare(args, out: Output) -> int:
    w = WeightSystem(weights=args.weights, degrees=args.degrees)
    p = poincare_series(w)
    out.text(fs_format(p))
    out.payload = {"p_A": fs_to_json(p)}
    if args.terms is not None:
        series = expand_series(p, args.terms)
        out.text(",".join(map(str, series.coeffs)))
        out.payload["series"] = series.model_dump(mode="json")
    if args.bundle:
        if w.n == 3:
            b = bundle(*w.weights, w.degrees[0])
        else:
            b = bundle_from_orbit(w, args.genus, args.alphas or [])
        out.lines = [
            f"p_A: {fs_format(b.p)}",
            f"psi_A: {fs_format(b.psi)}",
            f"phi_A: {fs_format(b.phi)}",
            f"phi~_A: {fs_format(b.phi_tilde)}",
        ] + out.lines[1:]
        out.payload["bundle"] = b.model_dump(mode="json")
    return 0


def cmd_orbit(args, out: Output) -> int:
    data = seifert_data(*_three(args.weights, args.degree), args.degree)
    out.text(_seifert_text(data))
    out.payload = data.model_dump(mode="json")
    return 0


def cmd_monodromy(args, out: Output) -> int:
    q1, q2, q3 = _three(args.weights, args.degree)
    d = args.degree
    result = charpoly_oracle(q1, q2, q3, d) if args.oracle else charpoly_hypersurface(q1, q2, q3, d)
    out.payload = result.model_dump(mode="json")
    if args.power_sum is not None:
        k = args.power_sum
        exact = newton_sum(result.charpoly, k)
        numeric = roots_power_sum_numeric(result.charpoly, k)
        agrees = abs(numeric - exact) < TOLERANCE and lambda_k(q1, q2, q3, d, k) == exact
        out.text(f"Lambda_{k} = {exact} (numeric {numeric.real:.12f}{numeric.imag:+.12f}i)")
        out.payload = {"k": k, "exact": exact, "numeric": [numeric.real, numeric.imag], "agrees": agrees}
        return 0 if agrees else 1
    if args.lambdas:
        for k, value in sorted(result.lambdas.items()):
            out.text(f"{k} {value}")
        return 0
    out.text(fs_format(result.charpoly))
    return 0


def cmd_dual(args, out: Output) -> int:
    phi = fs_parse(args.shape)
    dual = saito_dual(phi, args.level) if args.level is not None else saito_dual_auto(phi)
    out.text(fs_format(dual))
    out.payload = fs_to_json(dual)
    return 0


def cmd_factor(args, out: Output) -> int:
    if args.shape is not None:
        poly = to_polynomial(fs_parse(args.shape))
        out.text(",".join(map(str, poly.coeffs)))
        out.payload = poly.model_dump(mode="json")
        return 0
    phi = factor_cyclotomic(IntPoly(coeffs=args.coeffs))
    out.text(fs_format(phi))
    out.payload = fs_to_json(phi)
    return 0


def cmd_suspension(args, out: Output) -> int:
    phi = suspension(fs_parse(args.phi), fs_parse(args.phi_prime), args.p)
    out.text(fs_format(phi))
    out.payload = fs_to_json(phi)
    return 0


def cmd_mckay(args, out: Output) -> int:
    spec = build_root_system(args.root)
    view = args.what
    if view in ("coxeter", "affine"):
        phi = coxeter_charpoly(spec) if view == "coxeter" else affine_coxeter_charpoly(spec)
        out.text(fs_format(phi))
        out.payload = fs_to_json(phi)
    elif view == "series":
        terms = 20 if args.terms is None else args.terms
        vectors = pg_series(spec, terms)
        out.lines = [" ".join(map(str, v.v)) for v in vectors]
        out.payload = [v.model_dump(mode="json") for v in vectors]
    elif view == "closed-form":
        num, den = pg0_closed_form(spec)
        out.text(",".join(map(str, num.coeffs)))
        out.text(",".join(map(str, den.coeffs)))
        out.payload = {"numerator": num.model_dump(mode="json"), "denominator": den.model_dump(mode="json")}
    elif view == "dims":
        dims = kac_dims(spec)
        out.text(",".join(map(str, dims)))
        out.payload = dims
    else:
        entry = lookup_label(args.root)
        q1, q2, q3 = entry.weights.weights
        terms = get_settings().series_order if args.terms is None else args.terms
        report = mckay_verify(spec, q1, q2, q3, entry.weights.degrees[0], terms)
        out.lines = _report_lines(report)
        out.payload = report.model_dump(mode="json")
        return 0 if report.passed else 1
    return 0


def cmd_residue(args, out: Output) -> int:
    w = WeightSystem(weights=args.weights, degrees=[args.degree])
    result = residue_exact(poincare_series(w), args.alpha, args.index)
    value = result.value
    out.text(f"{value.real:.12f}{value.imag:+.12f}i")
    out.text("ledger: " + " ".join(f"{m}^{c}" for m, c in result.ledger.items()))
    out.payload = result.model_dump(mode="json")
    return 0


def cmd_wagreich3(args, out: Output) -> int:
    q1, q2, q3 = _three(args.weights, args.degree)
    report = wagreich3_check(q1, q2, q3, args.degree, seifert_data(q1, q2, q3, args.degree))
    out.lines = _report_lines(report)
    out.payload = report.model_dump(mode="json")
    return 0 if report.passed else 1


def cmd_verify(args, out: Output) -> int:
    reports = run_suite(args.suite, max_index=args.max_index, seed=args.seed, terms=args.terms)
    failed = [r for r in reports if not r.passed]
    for report in reports:
        if report.passed:
            out.text(f"PASS {report.subject}")
        else:
            bad = ", ".join(name for name, ok in report.checks.items() if not ok)
            out.text(f"FAIL {report.subject}: {bad}")
    out.text(f"{len(reports) - len(failed)}/{len(reports)} passed")
    out.payload = {"suite": args.suite, "reports": [r.model_dump(mode="json") for r in reports]}
    return 1 if failed else 0


def cmd_catalog(args, out: Output) -> int:
    if args.action == "list":
        items = entries(args.max_index)
        for e in items:
            w = e.weights
            out.text(
                f"{e.name}\t{e.table}\t{e.group}\t{','.join(map(str, w.weights))}/{','.join(map(str, w.degrees))}"
                f"\t{fs_format(e.pi_A)}"
            )
        out.payload = [e.model_dump(mode="json") for e in items]
        return 0
    if args.action == "show":
        e = lookup(args.name, args.parameter)
        out.payload = e.model_dump(mode="json")
        out.text(f"name: {e.name}")
        out.text(f"group: {e.group}")
        out.text(f"weights: {','.join(map(str, e.weights.weights))}")
        out.text(f"degrees: {','.join(map(str, e.weights.degrees))}")
        out.text(f"genus: {e.genus}")
        out.text(f"b: {'-' if e.b is None else e.b}")
        out.text(f"alphas: {','.join(map(str, e.alphas))}")
        out.text(f"R: {e.R}")
        out.text(f"pi_A: {fs_format(e.pi_A)}")
        if e.pi_M is not None:
            out.text(f"pi_M: {fs_format(e.pi_M)}")
        return 0
    report = validate_all(args.max_index)
    for diff in report.diffs:
        out.text(f"{diff.entry} {diff.field}: expected {diff.expected}, got {diff.actual}")
    out.text(f"{len(report.checked)} entries, {len(report.diffs)} differences")
    out.payload = report.model_dump(mode="json")
    return 0 if report.passed else 1


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    # nested actions must not reset a --json given before the action name
    nested = argparse.ArgumentParser(add_help=False)
    nested.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON instead of text")

    parser = argparse.ArgumentParser(
        prog="singmon",
        description="Poincare series, Saito duals and monodromy of quasihomogeneous surface singularities.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("poincare", cmd_poincare, "Frame shape of the Poincare series p_A")
    p.add_argument("--weights", type=_int_list, required=True)
    p.add_argument("--degrees", "--degree", dest="degrees", type=_int_list, required=True)
    p.add_argument("--terms", type=int)
    p.add_argument("--bundle", action="store_true", help="print p_A, psi_A, phi_A and phi~_A")
    p.add_argument("--genus", type=int, default=0, help="genus for --bundle with more than three weights")
    p.add_argument("--alphas", type=_int_list, help="orbit orders for --bundle with more than three weights")

    p = add("orbit", cmd_orbit, "orbit invariants {g; b; (alpha_i, beta_i)}")
    p.add_argument("--weights", type=_int_list, required=True)
    p.add_argument("--degree", type=_positive, required=True)

    p = add("monodromy", cmd_monodromy, "characteristic polynomial of the monodromy")
    p.add_argument("--weights", type=_int_list, required=True)
    p.add_argument("--degree", type=_positive, required=True)
    p.add_argument("--oracle", action="store_true", help="expand Phi(T) instead of inverting Lambda_k")
    p.add_argument("--lambdas", action="store_true", help="print Lambda_k for k | d")
    p.add_argument("--power-sum", type=_positive, help="compare Lambda_k with the numeric root power sum")

    p = add("dual", cmd_dual, "Saito dual of a Frame shape")
    p.add_argument("--shape", required=True)
    p.add_argument("--level", type=_positive, help="defaults to the lcm of the periods")

    p = add("factor", cmd_factor, "cyclotomic factorization, or expansion of a polynomial shape")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--coeffs", type=_int_list, help="ascending coefficients c0,c1,...")
    group.add_argument("--shape", help="Frame shape to expand into coefficients")

    p = add("suspension", cmd_suspension, "monodromy of the p-fold suspension")
    p.add_argument("--phi", required=True)
    p.add_argument("--phi-prime", required=True)
    p.add_argument("--p", type=_positive, required=True)

    p = add("mckay", cmd_mckay, "Coxeter polynomials and McKay series of a root system")
    p.add_argument("--root", required=True, help="A<l>, D<l>, E6, E7 or E8")
    p.add_argument("--what", choices=MCKAY_VIEWS, default="coxeter")
    p.add_argument("--terms", type=int)

    p = add("residue", cmd_residue, "residue of p_A at a root of unity")
    p.add_argument("--weights", type=_int_list, required=True)
    p.add_argument("--degree", type=_positive, required=True)
    p.add_argument("--alpha", type=_positive, required=True)
    p.add_argument("--index", type=int, default=1)

    p = add("wagreich3", cmd_wagreich3, "conditions for a three-generator Poincare series")
    p.add_argument("--weights", type=_int_list, required=True)
    p.add_argument("--degree", type=_positive, required=True)

    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--max-index", type=_positive, default=8)
    p.add_argument("--seed", type=int)
    p.add_argument("--terms", type=int)

    p = add("catalog", cmd_catalog, "Kleinian and simply elliptic fixtures")
    actions = p.add_subparsers(dest="action", required=True)
    a = actions.add_parser("list", parents=[nested])
    a.add_argument("--max-index", type=_positive, default=8)
    a = actions.add_parser("show", parents=[nested])
    a.add_argument("name")
    a.add_argument("--parameter", type=int)
    a = actions.add_parser("validate", parents=[nested])
    a.add_argument("--max-index", type=_positive, default=8)
    return parser


def _command_config(args: argparse.Namespace) -> CommandConfig:
    params: Dict[str, Any] = {
        k: v for k, v in vars(args).items() if k not in ("handler", "subcommand", "json", "terms", "seed")
    }
    return CommandConfig(
        subcommand=args.subcommand,
        params=params,
        json_output=args.json,
        terms=getattr(args, "terms", None),
        seed=getattr(args, "seed", None),
    )


def _error_message(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        return "; ".join(err["msg"] for err in exc.errors())
    return str(exc).splitlines()[0] if str(exc) else type(exc).__name__


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 on --help
        return int(exc.code or 0)
    configure_logging()
    config = _command_config(args)
    logger.debug("running %s", config.model_dump())
    out = Output(config.json_output)
    try:
        code = args.handler(args, out)
    except (SingmonError, ValidationError, ValueError) as exc:
        print(f"singmon: error: {_error_message(exc)}", file=sys.stderr)
        return 2
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
