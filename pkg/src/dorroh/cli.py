"""Command-line interface over the exchange format.

Exit codes: 0 = pass/success, 1 = a checked property failed (the report
carries a witness), 2 = input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import exchange
from .algebra import (
    Algebra,
    AlgebraMorphism,
    BimoduleAction,
    DorrohPairAlgebra,
    ModuleOverAlgebra,
    build_dorroh_algebra,
    check_associativity,
    check_iterated_algebra_triple,
    split_algebra_extension,
    unital_ideal_iso,
    verify_algebra_morphism,
)
from .coalgebra import (
    BicomoduleCoaction,
    Coalgebra,
    CoalgebraMorphism,
    ComoduleOverCoalgebra,
    DorrohPairCoalgebra,
    build_dorroh_coalgebra,
    check_coassociativity,
    check_iterated_coalgebra_triple,
    counital_split_iso,
    split_coalgebra_extension,
    verify_coalgebra_morphism,
)
from .duality import (
    double_dual_iso,
    double_dual_iso_coalgebra,
    dual_actions,
    dual_algebra_of_coalgebra,
    dual_coactions,
    dual_coalgebra_of_algebra,
    dualize_algebra_pair,
    dualize_coalgebra_pair,
)
from .errors import InputError, ValidationFailure
from .fields import FieldSpec
from .findual import RecurrentSequence, coproduct_decompose, dorroh_decompose, minimal_recurrence, vanishing_check
from .gallery import catalog_names, instance, standard_algebra_pairs, standard_coalgebra_pairs
from .reports import Report


def _print_report(report: Report, args, stream=None):
    stream = stream or sys.stdout
    if args.report == "json":
        print(json.dumps(report.to_json(), indent=2), file=stream)
    else:
        print(report.render_text(), file=stream)


def _write_doc(obj, args) -> bool:
    """Emit a document to -o or stdout; returns True when stdout was used."""
    text = exchange.emit(obj)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return False
    sys.stdout.write(text)
    return True


def _report_stream(doc_on_stdout: bool):
    return sys.stderr if doc_on_stdout else sys.stdout


def _parse_field_flag(spec: str) -> FieldSpec:
    if spec == "Q":
        return FieldSpec.rationals()
    if spec.startswith("Fp:"):
        try:
            return FieldSpec.prime(int(spec[3:]))
        except ValueError:
            raise InputError(f"bad field spec {spec!r}") from None
    raise InputError(f"bad field spec {spec!r} (use Q or Fp:<prime>)")


def _parse_basis(spec: str, field: FieldSpec, dim: int):
    vectors = []
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != dim:
            raise InputError(f"basis vector {chunk!r} must have {dim} coordinates")
        vectors.append([field.parse(p) for p in parts])
    if not vectors:
        raise InputError("empty basis specification")
    return vectors


def _check_object(obj) -> Report:
    if isinstance(obj, Algebra):
        return check_associativity(obj)
    if isinstance(obj, Coalgebra):
        return check_coassociativity(obj)
    if isinstance(obj, (DorrohPairAlgebra, DorrohPairCoalgebra)):
        return obj.validate()
    if isinstance(obj, (ModuleOverAlgebra, ComoduleOverCoalgebra)):
        return obj.validate()
    if isinstance(obj, AlgebraMorphism):
        return verify_algebra_morphism(obj, iso=obj.verified == "iso")
    if isinstance(obj, CoalgebraMorphism):
        return verify_coalgebra_morphism(obj, iso=obj.verified == "iso")
    if isinstance(obj, RecurrentSequence):
        return Report().add("well-formed", True)
    raise InputError(f"cannot check object of type {type(obj).__name__}")


def cmd_check(args) -> int:
    obj = exchange.load(args.file)
    report = _check_object(obj)
    _print_report(report, args)
    return 0 if report.ok else 1


def cmd_build(args) -> int:
    pair = exchange.load(args.file)
    if isinstance(pair, DorrohPairAlgebra):
        built = build_dorroh_algebra(pair)
    elif isinstance(pair, DorrohPairCoalgebra):
        built = build_dorroh_coalgebra(pair)
    else:
        raise InputError("build needs a pair-algebra or pair-coalgebra document")
    on_stdout = _write_doc(built, args)
    _print_report(pair.validate(), args, _report_stream(on_stdout))
    return 0


def cmd_split(args) -> int:
    obj = exchange.load(args.file)
    if isinstance(obj, Algebra):
        a_basis = _parse_basis(args.a_basis, obj.field, obj.dim)
        i_basis = _parse_basis(args.i_basis, obj.field, obj.dim)
        pair, iso = split_algebra_extension(obj, a_basis, i_basis)
    elif isinstance(obj, Coalgebra):
        a_basis = _parse_basis(args.a_basis, obj.field, obj.dim)
        i_basis = _parse_basis(args.i_basis, obj.field, obj.dim)
        pair, iso = split_coalgebra_extension(obj, a_basis, i_basis)
    else:
        raise InputError("split needs an algebra or coalgebra document")
    on_stdout = _write_doc(pair, args)
    if args.iso_out:
        with open(args.iso_out, "w", encoding="utf-8") as fh:
            fh.write(exchange.emit(iso))
    report = Report().add("split verified", True, detail=f"iso {iso.verified}")
    _print_report(report, args, _report_stream(on_stdout))
    return 0


def cmd_dualize(args) -> int:
    obj = exchange.load(args.file)
    report = Report()
    if isinstance(obj, Algebra):
        out = dual_coalgebra_of_algebra(obj)
        report.add("dualized", True)
    elif isinstance(obj, Coalgebra):
        out = dual_algebra_of_coalgebra(obj)
        report.add("dualized", True)
    elif isinstance(obj, DorrohPairAlgebra):
        out, witness = dualize_algebra_pair(obj)
        report.add("duality witness verified", True, detail=witness.convention)
    elif isinstance(obj, DorrohPairCoalgebra):
        out, witness = dualize_coalgebra_pair(obj)
        report.add("duality witness verified", True, detail=witness.convention)
    elif isinstance(obj, ModuleOverAlgebra):
        out = dual_actions(obj)
        report.add("dualized", True)
    elif isinstance(obj, ComoduleOverCoalgebra):
        out = dual_coactions(obj)
        report.add("dualized", True)
    else:
        raise InputError("dualize needs an algebra, coalgebra, pair, module or comodule document")
    on_stdout = _write_doc(out, args)
    _print_report(report, args, _report_stream(on_stdout))
    return 0


def _canonical_algebra_triple(pair: DorrohPairAlgebra):
    regular = BimoduleAction(pair.I, pair.I.dim, pair.I.mul, pair.I.mul)
    return check_iterated_algebra_triple(pair.A, pair.I, pair.I, pair.action, pair.action, regular)


def _canonical_coalgebra_triple(pair: DorrohPairCoalgebra):
    regular = BicomoduleCoaction(pair.P, pair.P.dim, pair.P.delta, pair.P.delta)
    return check_iterated_coalgebra_triple(pair.C, pair.P, pair.P, pair.coaction, pair.coaction, regular)


def cmd_iso(args) -> int:
    obj = exchange.load(args.file)
    morphism = None
    if args.which == "prop1.1":
        if not isinstance(obj, DorrohPairAlgebra):
            raise InputError("prop1.1 needs a pair-algebra document")
        morphism = unital_ideal_iso(obj)
        report = verify_algebra_morphism(morphism, iso=True)
    elif args.which == "counital-split":
        if not isinstance(obj, DorrohPairCoalgebra):
            raise InputError("counital-split needs a pair-coalgebra document")
        morphism = counital_split_iso(obj)
        report = verify_coalgebra_morphism(morphism, iso=True)
    elif args.which == "duality":
        if isinstance(obj, Algebra):
            morphism = double_dual_iso(obj)
            report = verify_algebra_morphism(morphism, iso=True)
        elif isinstance(obj, Coalgebra):
            morphism = double_dual_iso_coalgebra(obj)
            report = verify_coalgebra_morphism(morphism, iso=True)
        elif isinstance(obj, DorrohPairAlgebra):
            morphism = dualize_algebra_pair(obj)[1].forward
            report = verify_coalgebra_morphism(morphism, iso=True)
        elif isinstance(obj, DorrohPairCoalgebra):
            morphism = dualize_coalgebra_pair(obj)[1].forward
            report = verify_algebra_morphism(morphism, iso=True)
        else:
            raise InputError("duality needs an algebra, coalgebra or pair document")
    elif args.which == "associator":
        if isinstance(obj, DorrohPairAlgebra):
            report, morphism = _canonical_algebra_triple(obj)
        elif isinstance(obj, DorrohPairCoalgebra):
            report, morphism = _canonical_coalgebra_triple(obj)
        else:
            raise InputError("associator needs a pair document")
    else:  # unreachable: argparse enforces choices
        raise InputError(f"unknown isomorphism {args.which!r}")

    on_stdout = False
    if morphism is not None and report.ok:
        on_stdout = _write_doc(morphism, args)
    _print_report(report, args, _report_stream(on_stdout))
    return 0 if report.ok else 1


def cmd_findual(args) -> int:
    seq = exchange.load(args.seq)
    if not isinstance(seq, RecurrentSequence):
        raise InputError("findual needs a sequence document")
    field = seq.field
    if args.command == "minrec":
        bound = args.bound
        if seq.coeffs:
            prefix = seq.prefix(2 * bound + 2)
        else:
            prefix = list(seq.initial)
        found = minimal_recurrence(prefix, bound, field)
        if found is None:
            report = Report().add(
                "minimal recurrence", False, (bound,), detail=f"no recurrence of order <= {bound}"
            )
            _print_report(report, args)
            return 1
        on_stdout = _write_doc(found, args)
        report = Report().add("minimal recurrence", True, detail=f"order {found.order}")
        _print_report(report, args, _report_stream(on_stdout))
        return 0
    if args.command == "coproduct":
        dec = coproduct_decompose(seq, args.depth)
        report = Report().add(
            "coproduct decomposition", True, detail=f"rank {dec.rank}, pivots {dec.pivots}"
        )
        _print_report(report, args)
        return 0
    if args.command == "dorroh":
        report = dorroh_decompose(seq, args.depth)
        _print_report(report, args)
        return 0 if report.ok else 1
    if args.command == "vanish":
        if args.poly:
            coeffs = [field.parse(p.strip()) for p in args.poly.split(",")]
        else:
            if not seq.coeffs:
                raise InputError("sequence has no recurrence; pass --poly")
            coeffs = list(seq.coeffs)
        report = vanishing_check(seq, coeffs, args.depth)
        _print_report(report, args)
        return 0 if report.ok else 1
    raise InputError(f"unknown findual command {args.command!r}")


def cmd_gallery(args) -> int:
    field = _parse_field_flag(args.field)
    if args.list:
        for name in catalog_names():
            print(name)
        for name, _ in standard_algebra_pairs(field):
            print(f"pair-algebra:{name}")
        for name, _ in standard_coalgebra_pairs(field):
            print(f"pair-coalgebra:{name}")
        return 0
    if not args.emit:
        raise InputError("gallery needs --list or --emit NAME")
    name = args.emit
    if name.startswith("pair-algebra:"):
        table = dict(standard_algebra_pairs(field))
        key = name.split(":", 1)[1]
        if key not in table:
            raise InputError(f"unknown gallery pair {name!r}")
        obj = table[key]
    elif name.startswith("pair-coalgebra:"):
        table = dict(standard_coalgebra_pairs(field))
        key = name.split(":", 1)[1]
        if key not in table:
            raise InputError(f"unknown gallery pair {name!r}")
        obj = table[key]
    else:
        obj = instance(name, field)
    _write_doc(obj, args)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dorroh",
        description="Exact toolkit for Dorroh extensions of algebras and coalgebras.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", choices=("text", "json"), default="text", help="report format")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="validate any exchange document")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", parents=[common], help="build the extension of a pair document")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("split", parents=[common], help="split an extension along two bases")
    p.add_argument("file")
    p.add_argument("--a-basis", required=True, help="semicolon-separated coordinate vectors")
    p.add_argument("--i-basis", required=True, help="semicolon-separated coordinate vectors")
    p.add_argument("-o", "--output")
    p.add_argument("--iso-out")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("dualize", parents=[common], help="dualize a document")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("iso", parents=[common], help="construct and verify a named isomorphism")
    p.add_argument("--which", required=True, choices=("prop1.1", "counital-split", "duality", "associator"))
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("findual", parents=[common], help="finite-dual operations on sequences")
    p.add_argument("--seq", required=True)
    p.add_argument("--depth", type=int, default=None, help="verification depth (default 2r+16)")
    p.add_argument("--command", required=True, choices=("minrec", "coproduct", "dorroh", "vanish"))
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--poly", help="comma-separated c_1..c_r encoding x^r - sum c_i x^(r-i)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_findual)

    p = sub.add_parser("gallery", parents=[common], help="list or emit named instances")
    p.add_argument("--list", action="store_true")
    p.add_argument("--emit")
    p.add_argument("--field", default="Q", help="Q or Fp:<prime>")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gallery)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return args.func(args)
    except ValidationFailure as e:
        _print_report(e.report, args)
        return 1
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
