"""Command-line interface.

Exit status: 0 on success or a passing check, 1 when a property fails (the
report carries a witness), 2 for usage or input errors, 3 when the node
budget runs out.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import exchange, fixtures, hocat, lifting, nerve, orientals, shapes
from .budget import Budget, BudgetExceeded
from .constructions import mono_decomposition
from .lifting import CheckReport
from .omega import OmegaCat, cell_dimension, validate as validate_omega
from .simplicial import Inclusion, StratifiedComplex, validate_complex

CHECKS = ("complicial", "strict-complicial", "saturated", "quasicategory", "n-trivial", "coskeletal")


class UsageError(Exception):
    pass


def _load(source: str):
    """A fixture (``fixture:NAME``) or the payload of a document file (``-`` for stdin)."""
    if source.startswith("fixture:"):
        return fixtures.get(source.split(":", 1)[1])
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    return exchange.parse(text).payload


def _complex(obj, args) -> StratifiedComplex:
    if isinstance(obj, StratifiedComplex):
        return obj
    if isinstance(obj, OmegaCat):
        return nerve.nerve(obj, args.bound, args.stratification, args.budget_obj)
    raise UsageError("expected a complex or an omega-category")


def _emit(obj, args) -> None:
    text = exchange.print_document(obj)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    spec = shapes.GeneratorSpec(args.family, args.n, args.k, args.m)
    _emit(shapes.make(spec), args)
    return 0


def cmd_validate(args) -> int:
    doc = exchange.parse(Path(args.input).read_text() if args.input != "-" else sys.stdin.read())
    p = doc.payload
    if doc.kind == "complex":
        problems = validate_complex(p)
    elif doc.kind == "map":
        problems = validate_complex(p.domain) + validate_complex(p.codomain) or p.violations()
    elif doc.kind == "omega-cat":
        problems = [str(v) for v in validate_omega(p)]
    elif doc.kind == "cells":
        problems = [f"{c}: {v}" for c in sorted(p, key=str) for v in c.violations()]
    else:
        problems = _replay(p, args)
    for line in problems:
        print(line)
    if not problems:
        print("ok")
    return 1 if problems else 0


def _replay(report: CheckReport, args) -> list[str]:
    if report.witness is None:
        return [] if report.verdict == "pass" else ["failing report without a witness"]
    if report.verdict != "fail":
        return ["passing report carries a witness"]
    if not report.witness.replay(budget=args.budget_obj):
        return [f"witness does not replay ({report.witness.reason})"]
    return []


def cmd_check(args) -> int:
    obj = _load(args.input)
    b = args.bound
    if args.property == "coskeletal":
        if not isinstance(obj, OmegaCat):
            raise UsageError("coskeletality is checked on an omega-category")
        n = args.n if args.n is not None else max(cell_dimension(obj, x) for x in obj.elements)
        report = nerve.coskeletality_check(obj, n, b if b is not None else n + 3, args.budget_obj)
    else:
        A = _complex(obj, args)
        bound = b if b is not None else A.dimension_bound
        if args.property == "complicial":
            report = lifting.is_complicial(A, bound, args.budget_obj)
        elif args.property == "strict-complicial":
            report = lifting.is_strict_complicial(A, bound, args.budget_obj)
        elif args.property == "saturated":
            report = lifting.is_saturated(A, bound, args.budget_obj)
        elif args.property == "quasicategory":
            report = lifting.is_quasicategory(A, bound, args.budget_obj)
        else:
            if args.n is None:
                raise UsageError("n-trivial needs --n")
            ok = lifting.is_n_trivial(A, args.n)
            report = CheckReport("n-trivial", "pass" if ok else "fail", args.n, details={"n": args.n})
    _emit(report, args)
    return 0 if report.passed else 1


def cmd_nerve(args) -> int:
    obj = _load(args.input)
    if not isinstance(obj, OmegaCat):
        raise UsageError("nerve needs an omega-category")
    _emit(nerve.nerve(obj, args.bound, args.stratification, args.budget_obj), args)
    return 0


def cmd_oriental(args) -> int:
    if args.search:
        _emit(orientals.enumerate_cells_search(args.n, args.budget_obj), args)
        return 0
    O = orientals.build_oriental(args.n, args.budget_obj, max_n=max(args.n, orientals.MAX_ORIENTAL)
                                 if args.force else orientals.MAX_ORIENTAL)
    _emit(O.category if args.table else frozenset(O.cells), args)
    return 0


def cmd_hocat(args) -> int:
    X = _complex(_load(args.input), args)
    try:
        H = hocat.homotopy_category(X, args.variant, budget=args.budget_obj)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    _emit(H.category, args)
    return 0


def cmd_decompose(args) -> int:
    obj = _load(args.input)
    if not hasattr(obj, "assignment"):
        raise UsageError("decompose needs a map document")
    steps = mono_decomposition(Inclusion(obj))
    report = CheckReport("decomposition", "pass", None, details={"steps": [str(s) for s in steps]})
    _emit(report, args)
    return 0


def cmd_equivs(args) -> int:
    A = _complex(_load(args.input), args)
    n = args.n or 1
    found = lifting.detect_1_equivalences(A) if n == 1 else lifting.detect_n_equivalences(A, n, args.budget_obj)
    refs = sorted(str(r) for r in found)
    _emit(CheckReport(f"{n}-equivalences", "pass", A.dimension_bound, details={"equivalences": refs}), args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None, help="dimension bound")
    common.add_argument("--stratification", default="identity",
                        choices=nerve.STRATIFICATIONS, help="marking rule for nerves")
    common.add_argument("--budget", type=int, default=None, help="search node budget")
    common.add_argument("--output", default=None, help="write the document here instead of stdout")

    p = argparse.ArgumentParser(prog="complicial", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="emit a generator shape or inclusion")
    g.add_argument("family", choices=shapes.FAMILIES)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--k", type=int, default=0)
    g.add_argument("--m", type=int, default=-1)
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("validate", parents=[common], help="validate a document or replay a witness")
    v.add_argument("input")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("check", parents=[common], help="check a lifting property")
    c.add_argument("property", choices=CHECKS)
    c.add_argument("input", help="document path, '-' or fixture:NAME")
    c.add_argument("--n", type=int, default=None)
    c.set_defaults(func=cmd_check)

    nv = sub.add_parser("nerve", parents=[common], help="Street nerve of an omega-category")
    nv.add_argument("input")
    nv.set_defaults(func=cmd_nerve)

    o = sub.add_parser("oriental", parents=[common], help="cells of an oriental")
    o.add_argument("n", type=int)
    o.add_argument("--search", action="store_true", help="use the direct search instead of closure")
    o.add_argument("--table", action="store_true", help="emit the omega-category tables")
    o.add_argument("--force", action="store_true", help="allow orientals above the default cap")
    o.set_defaults(func=cmd_oriental)

    h = sub.add_parser("hocat", parents=[common], help="homotopy category of a quasi-category")
    h.add_argument("input")
    h.add_argument("--variant", default="right-fg", choices=sorted(hocat.VARIANTS))
    h.set_defaults(func=cmd_hocat)

    d = sub.add_parser("decompose", parents=[common], help="cell decomposition of an inclusion")
    d.add_argument("input")
    d.set_defaults(func=cmd_decompose)

    e = sub.add_parser("equivs", parents=[common], help="detect equivalences")
    e.add_argument("input")
    e.add_argument("--n", type=int, default=1)
    e.set_defaults(func=cmd_equivs)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.budget_obj = Budget(args.budget)
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 3
    except (UsageError, exchange.FormatError, ValueError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
