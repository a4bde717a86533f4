"""Command-line front end: ``infocoh <command> ...``.

Exit codes: 0 on success or PASS, 1 on a FAIL verdict, 2 on input errors.
Structure arguments accept a file path or the name of a packaged fixture
(``example``, ``full_product``, ``cube``, ``two_component``, ``degenerate``,
``diagonal``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import fixtures
from .asymptotics import DEFAULT_TOL, entropy_limit_check, samples_csv
from .cohomology import (
    ProbCochain,
    classify_cocycle,
    cocycle_check,
    cochain_from_json,
    comb_feith_solve,
    extract_sequence,
    nondegenerate_witness,
    nondegenerate_witness_raw,
    tables_from_json,
)
from .errors import (
    BoundaryViolation,
    FunctionalEquationViolation,
    InfoCohError,
    NotACocycle,
    StructureError,
    SymmetryViolation,
)
from .fontene_ward import parse_sequence
from .functionals import chain_rule_residual, entropy, entropy_cochain, entropy_order, law
from .structure import parse_structure, validate
from .values import to_json

OK, FAILED, BAD_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input helpers -------------------------------------------------------


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _raw_structure(arg):
    if not os.path.exists(arg) and arg.replace("-", "_") in fixtures.PACKAGED:
        return parse_structure(fixtures.packaged_path(arg.replace("-", "_")).read_text("utf-8"))
    return parse_structure(_read_json(arg))


def _structure(arg):
    return validate(_raw_structure(arg))


def _cochain(path, s):
    try:
        return cochain_from_json(_read_json(path), s)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InfoCohError):
            raise
        raise UsageError(f"bad cochain file {path}: {_message(exc)}") from None


def _ints(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _fractions(text):
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from None


def _order(text):
    try:
        return entropy_order(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad entropy order {text!r}") from None


def _message(exc):
    if isinstance(exc, KeyError) and exc.args:
        return str(exc.args[0])
    return str(exc)


def _emit(args, obj, human):
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(human)


# -- commands ------------------------------------------------------------


def cmd_validate(args):
    raw = _raw_structure(args.structure)
    try:
        s = validate(raw)
    except StructureError as exc:
        obj = {"status": "INVALID", "violations": [{"kind": v.kind, "message": v.message} for v in exc.violations]}
        human = "INVALID\n" + "\n".join(f"  {v.kind}: {v.message}" for v in exc.violations)
        _emit(args, obj, human)
        return FAILED
    comps = [list(c) for c in s.components()]
    obj = {"status": "VALID", "variables": list(s.variables), "components": comps}
    _emit(args, obj, f"VALID: {len(s.variables)} variables, {len(comps)} component(s)")
    return OK


def cmd_coeff(args):
    D = parse_sequence(args.seq)
    parts = _ints(args.parts)
    value = D.multinomial(parts)
    shown = to_json(value)
    human = shown if isinstance(shown, str) else json.dumps(shown)
    _emit(args, {"family": D.tag, "parts": parts, "value": shown}, human)
    return OK


def cmd_cocycle_check(args):
    s = _structure(args.structure)
    psi = _cochain(args.cochain, s)
    alpha = _order(args.alpha) if args.alpha is not None else None
    if isinstance(psi, ProbCochain) and alpha is None:
        raise UsageError("probabilistic cochains need --alpha")
    verdict = cocycle_check(psi, s, args.bound, alpha=alpha)
    human = f"{verdict.status} ({verdict.checked} evaluations)"
    if verdict.witness:
        human += f"\nwitness: {json.dumps(verdict.witness)}"
    _emit(args, verdict.to_json(), human)
    return OK if verdict.ok else FAILED


def cmd_feith_solve(args):
    f1, f2 = tables_from_json(_read_json(args.table))
    try:
        D = comb_feith_solve(f1, f2)
    except (BoundaryViolation, SymmetryViolation, FunctionalEquationViolation) as exc:
        obj = {"status": "FAIL", "error": type(exc).__name__, "witness": exc.witness}
        _emit(args, obj, f"FAIL {type(exc).__name__}: {exc}")
        return FAILED
    seq = [to_json(t) for t in D.prefix(D.length)]
    _emit(args, {"status": "PASS", "sequence": seq}, "PASS D = " + ", ".join(map(str, seq)))
    return OK


def cmd_nondeg(args):
    if args.raw:
        w = nondegenerate_witness_raw(_raw_structure(args.structure), args.x, args.y)
    else:
        w = nondegenerate_witness(_structure(args.structure), args.x, args.y)
    if w is None:
        _emit(args, {"status": "NotFound"}, "NotFound (exhaustive search)")
        return FAILED
    human = f"witness: X order {list(w.x_order)}, Y order {list(w.y_order)}, path {list(w.path)}"
    _emit(args, {"status": "Found", "witness": w.to_json()}, human)
    return OK


def _pick_product(s, args):
    if args.x and args.y:
        return args.x, args.y
    for left, right, _ in s.products():
        if nondegenerate_witness(s, left, right) is not None:
            return left, right
    raise UsageError("no nondegenerate product found; pass --x and --y")


def cmd_extract(args):
    s = _structure(args.structure)
    psi = _cochain(args.cochain, s)
    x, y = _pick_product(s, args)
    try:
        D = extract_sequence(psi, s, x, y, args.bound)
    except NotACocycle as exc:
        _emit(args, {"status": "FAIL", "witness": exc.witness}, f"FAIL: {exc}")
        return FAILED
    seq = [to_json(t) for t in D.prefix(args.bound)]
    _emit(args, {"status": "PASS", "product": [x, y], "sequence": seq}, "D = " + ", ".join(map(str, seq)))
    return OK


def cmd_classify(args):
    s = _structure(args.structure)
    psi = _cochain(args.cochain, s)
    try:
        c = classify_cocycle(psi, s, args.bound)
    except NotACocycle as exc:
        _emit(args, {"status": "FAIL", "witness": exc.witness}, f"FAIL: {exc}")
        return FAILED
    obj = {"status": "PASS", **c.to_json()}
    lines = [
        f"{' '.join(comp['component'])}: D = {', '.join(map(str, comp['sequence']))}" for comp in obj["components"]
    ]
    lines.append(f"coboundary: {c.coboundary}")
    _emit(args, obj, "\n".join(lines))
    return OK


def cmd_asymptote(args):
    D = parse_sequence(args.seq)
    alpha = _order(args.alpha)
    p = _fractions(args.p)
    ns = _ints(args.ns) if args.ns else None
    report = entropy_limit_check(D, alpha, p, args.tol, ns)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(samples_csv(report.estimate))
    e = report.estimate
    human = (
        f"{report.verdict}: limit {e.limit:.6f}, target {report.target:.6f}, "
        f"certificate {e.certificate:.2e} (n up to {e.samples[-1][0]})"
    )
    _emit(args, report.to_json(), human)
    return OK if report.ok else FAILED


def cmd_entropy(args):
    alpha = _order(args.alpha)
    p = _fractions(args.p)
    if sum(p) != 1 or any(w < 0 for w in p):
        raise UsageError("--p must be nonnegative and sum to 1")
    value = entropy(alpha, p)
    _emit(args, {"alpha": str(alpha), "p": [str(w) for w in p], "entropy": value}, repr(value))
    return OK


def cmd_chain_residual(args):
    s = _structure(args.structure)
    alpha = _order(args.alpha)
    beta = _order(args.beta) if args.beta is not None else alpha
    x = args.x or s.meet(args.y, args.z)
    try:
        p = law(s, x, _fractions(args.p))
    except ValueError as exc:
        if isinstance(exc, InfoCohError):
            raise
        raise UsageError(str(exc)) from None
    r = chain_rule_residual(s, alpha, x, args.y, args.z, entropy_cochain(beta), p)
    obj = {"alpha": str(alpha), "beta": str(beta), "x": x, "y": args.y, "z": args.z, "residual": r}
    _emit(args, obj, repr(r))
    return OK


# -- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="infocoh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check the structure axioms")
    p.add_argument("structure")

    p = add("coeff", cmd_coeff, "Fontené-Ward coefficient")
    p.add_argument("--seq", required=True, help="family tag, e.g. gaussian:q=2")
    p.add_argument("--parts", required=True, help="comma-separated parts")

    p = add("cocycle-check", cmd_cocycle_check, "bounded exhaustive cocycle check")
    p.add_argument("--structure", required=True)
    p.add_argument("--cochain", required=True)
    p.add_argument("--bound", required=True, type=int)
    p.add_argument("--alpha")

    p = add("feith-solve", cmd_feith_solve, "solve the discrete functional equation")
    p.add_argument("--table", required=True)

    p = add("nondeg", cmd_nondeg, "search a nondegeneracy witness")
    p.add_argument("--structure", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--raw", action="store_true", help="skip the structure axioms")

    for name, func, help in (
        ("extract", cmd_extract, "admissible sequence of a cocycle"),
        ("classify", cmd_classify, "sequences per component and coboundary flag"),
    ):
        p = add(name, func, help)
        p.add_argument("--structure", required=True)
        p.add_argument("--cochain", required=True)
        p.add_argument("--bound", required=True, type=int)
        if name == "extract":
            p.add_argument("--x")
            p.add_argument("--y")

    p = add("asymptote", cmd_asymptote, "entropy limit of normalized log-coefficients")
    p.add_argument("--seq", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--ns", help="comma-separated increasing magnitudes")
    p.add_argument("--csv", help="also write the samples to this CSV file")

    p = add("entropy", cmd_entropy, "Tsallis (Shannon at 1) entropy")
    p.add_argument("--alpha", required=True)
    p.add_argument("--p", required=True)

    p = add("chain-residual", cmd_chain_residual, "alpha-chain rule residual of S_beta")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", help="entropy order of the cochain (default: alpha)")
    p.add_argument("--structure", required=True)
    p.add_argument("--p", required=True, help="law on X, aligned with its outcomes")
    p.add_argument("--y", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--x", help="variable carrying p (default: the product of Y and Z)")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"infocoh: error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (InfoCohError, ValueError, ZeroDivisionError) as exc:
        print(f"infocoh: error: {type(exc).__name__}: {_message(exc)}".replace("\n", " "), file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
