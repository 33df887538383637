"""Command-line front end.

Exit codes: 0 success, 1 bad input or a computation that raises one of the
package's own error types, 2 a failing fixture under `fixture` or `report`.
All numeric flags take exact rationals ("p/q" or an integer literal);
decimals are rejected at parse time.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .errors import DomainError, VirlogError
from .fixtures import fixture_ids, report_exit_code, report_table, run_all, run_fixture
from .fusion import (
    EulerOperator,
    LogSeries,
    determine_b,
    fusion_indicial,
    ope_level2_coefficient,
    solve_euler,
)
from .modules import (
    JordanVermaModule,
    check_hom_pair,
    radical_dimension,
    shapovalov_determinant,
    shapovalov_matrix,
    singular_vectors,
)
from .rational import parse_rational, render_rational
from .serialize import serialize
from .wlog import (
    CENTRAL,
    check_jacobi,
    cocycle_closed_form,
    cocycle_residue,
    vacuum_expectation,
    wlog_bracket,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract here is 1

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let negative rationals like -1/8 and generator tokens like -1:-2
        # pass as values instead of being read as option names
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+|:-?\d+)?$")

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _rational(token: str) -> Fraction:
    try:
        return parse_rational(token)
    except VirlogError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _generator(token: str):
    """Generator token: "i:m" for t^(i)(m), or "b" for the central element."""
    if token == "b":
        return CENTRAL
    head, sep, tail = token.partition(":")
    if sep:
        try:
            return (int(head), int(tail))
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(
        f"expected i:m with integer index and mode, or b, got {token!r}"
    )


def _add_output_flags(sub):
    sub.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub.add_argument("--out", metavar="FILE", help="write the document to FILE")


def _add_module_flags(sub, symbolic: bool):
    sub.add_argument("--level", type=int, required=True)
    sub.add_argument("--jordan", type=int, default=1)
    sub.add_argument("--c", type=_rational)
    sub.add_argument("--h", type=_rational)
    if symbolic:
        sub.add_argument("--symbolic", action="store_true")


def _module_from_args(args) -> JordanVermaModule:
    if getattr(args, "symbolic", False):
        if args.c is not None or args.h is not None:
            raise DomainError("--symbolic excludes numeric --c/--h")
        return JordanVermaModule("c", "h", args.jordan)
    if args.c is None or args.h is None:
        raise DomainError("need both --c and --h, or --symbolic")
    return JordanVermaModule(args.c, args.h, args.jordan)


# -- verb handlers: return (payload, exit code) -----------------------------


def _cmd_shapovalov(args):
    return shapovalov_matrix(_module_from_args(args), args.level), 0


def _cmd_det(args):
    return shapovalov_determinant(_module_from_args(args), args.level), 0


def _cmd_singular(args):
    return singular_vectors(_module_from_args(args), args.level), 0


def _cmd_radical(args):
    return radical_dimension(_module_from_args(args), args.level), 0


def _cmd_hom_check(args):
    mod = _module_from_args(args)
    found = singular_vectors(mod, args.level)
    weight = mod.h_value() + args.level
    certified = False
    for s2 in found:
        # nilpotent part of L(0) on the singular space; a Jordan partner
        # paired with its own image certifies the embedding
        s1 = s2.apply_mode(0) - s2.scale(weight)
        if s1.is_zero():
            continue
        if check_hom_pair(s1, s2):
            certified = True
            break
    return {"certified": certified, "singular-dimension": len(found)}, 0


def _cmd_fusion(args):
    data = fusion_indicial(args.c, args.h1, args.h2, level=args.level)
    return data, 0


def _cmd_euler_solve(args):
    if args.input == "-":
        raw = sys.stdin.read()
    else:
        with open(args.input, "r", encoding="utf-8") as fh:
            raw = fh.read()
    try:
        doc = json.loads(raw)
        op = EulerOperator.from_json(doc["op"])
        rhs = LogSeries.from_json(doc["rhs"])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DomainError(f"malformed euler-solve input: {exc}")
    particular, homogeneous = solve_euler(op, rhs)
    return {"particular": particular, "homogeneous": homogeneous}, 0


def _cmd_ope_coeff(args):
    return ope_level2_coefficient(args.c, args.h), 0


def _cmd_determine_b(args):
    return determine_b(args.h), 0


def _cmd_fixture(args):
    if args.id is None:
        ids = fixture_ids()
        return (ids if args.json else "\n".join(ids)), 0
    result = run_fixture(args.id)
    code = 2 if result.status == "fail" else 0
    if args.json:
        return result.to_json(), code
    return report_table([result]), code


def _cmd_report(args):
    results = run_all()
    code = report_exit_code(results)
    if args.json:
        return [r.to_json() for r in results], code
    return report_table(results), code


def _cmd_wlog_bracket(args):
    return wlog_bracket(args.left, args.right, args.cocycle), 0


def _cmd_wlog_cocycle(args):
    if args.cocycle == "closed":
        value = cocycle_closed_form(args.left, args.right)
    elif args.cocycle == "residue":
        value = cocycle_residue(args.left, args.right)
    else:
        value = Fraction(0)
    return value, 0


def _cmd_wlog_vev(args):
    return vacuum_expectation(list(args.word), args.cocycle), 0


def _cmd_wlog_jacobi(args):
    return check_jacobi(args.level, args.cocycle), 0


# -- parser wiring ----------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="virlog", description=__doc__)
    parser.set_defaults(json=False, out=None, force_json=False, handler=None)
    subs = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    sub = subs.add_parser("shapovalov", help="Gram matrix of the level pairing")
    _add_module_flags(sub, symbolic=True)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_shapovalov)

    sub = subs.add_parser("det", help="determinant of the level pairing")
    _add_module_flags(sub, symbolic=True)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_det)

    sub = subs.add_parser("singular", help="basis of the singular vectors at a level")
    _add_module_flags(sub, symbolic=False)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_singular)

    sub = subs.add_parser("radical", help="dimension of the pairing radical at a level")
    _add_module_flags(sub, symbolic=False)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_radical)

    sub = subs.add_parser(
        "hom-check", help="certify a Jordan pair of singular vectors at a level"
    )
    _add_module_flags(sub, symbolic=False)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_hom_check, jordan=2)

    sub = subs.add_parser("fusion", help="indicial data for a weight pair")
    sub.add_argument("--c", type=_rational, required=True)
    sub.add_argument("--h1", type=_rational, required=True)
    sub.add_argument("--h2", type=_rational, required=True)
    sub.add_argument("--level", type=int, default=None)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_fusion, force_json=True)

    sub = subs.add_parser(
        "euler-solve",
        help='solve an Euler operator against a log series; input JSON {"op": ..., "rhs": ...}',
    )
    sub.add_argument("--input", metavar="FILE", default="-", help="JSON file, - for stdin")
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_euler_solve, force_json=True)

    sub = subs.add_parser("ope-coeff", help="level-2 descent coefficient 2h/c")
    sub.add_argument("--c", type=_rational, required=True)
    sub.add_argument("--h", type=_rational, required=True)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_ope_coeff)

    sub = subs.add_parser("determine-b", help="two-point normalization from a weight")
    sub.add_argument("--h", type=_rational, required=True)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_determine_b)

    sub = subs.add_parser("fixture", help="run one pinned fixture, or list them all")
    sub.add_argument("id", nargs="?", default=None)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_fixture)

    sub = subs.add_parser("report", help="run every fixture and print the table")
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_report)

    wlog = subs.add_parser("wlog", help="logarithmic Witt algebra operations")
    wsubs = wlog.add_subparsers(dest="wverb", required=True, metavar="OP")

    sub = wsubs.add_parser("bracket", help="bracket of two generators i:m")
    sub.add_argument("left", type=_generator)
    sub.add_argument("right", type=_generator)
    sub.add_argument("--cocycle", choices=["none", "closed", "residue"], default="none")
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_wlog_bracket)

    sub = wsubs.add_parser("cocycle", help="cocycle value on two generators i:m")
    sub.add_argument("left", type=_generator)
    sub.add_argument("right", type=_generator)
    sub.add_argument("--cocycle", choices=["none", "closed", "residue"], default="residue")
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_wlog_cocycle)

    sub = wsubs.add_parser(
        "vev", help="vacuum expectation of a word of generators (and b factors)"
    )
    sub.add_argument("word", nargs="*", type=_generator)
    sub.add_argument("--cocycle", choices=["none", "closed", "residue"], default="residue")
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_wlog_vev)

    sub = wsubs.add_parser("jacobi", help="scan the Jacobi identity up to a bound")
    sub.add_argument("--level", type=int, default=2, help="bound on |i| and |m|")
    sub.add_argument("--cocycle", choices=["none", "closed", "residue"], default="none")
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_wlog_jacobi)

    return parser


def _emit(document: str, out) -> None:
    if not document.endswith("\n"):
        document += "\n"
    if out is None:
        sys.stdout.write(document)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(document)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 1
    try:
        payload, code = args.handler(args)
        fmt = "json" if (args.json or args.force_json) else "text"
        document = serialize(payload, fmt)
    except VirlogError as exc:
        sys.stderr.write(f"virlog: error: {exc}\n")
        return 1
    _emit(document, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
