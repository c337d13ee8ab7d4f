import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, List, Optional, TextIO

# Add project root to Python path
project_root = str(Path(__file__).parent.parent.parent)
sys.path.append(project_root)

from src.classifier import classify
from src.classifier.classify import DefClassKey, EvenDimEmptyBaseKey, EvenDimRealBaseKey, OddDimKey
from src.cli import codec
from src.cli.config import LOG_FORMAT, Settings
from src.geometry.curve_top import CurveTopType, Eps, curve_types, validate_curve_type
from src.geometry.errors import InvalidCurveType, RuledFormsError, SchemaError
from src.geometry.moves import successors
from src.geometry.pic_symbolic import SurfaceRole, normal_bundle, satisfies_reality
from src.geometry.presentation import ElemTransformRec, apply_transform, degree
from src.geometry.topology import quintuple_of, quotient_class, real_component_count, real_part_topology

LOGGER = logging.getLogger(__name__)

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2

EPILOG = """\
Output is JSON on standard output. Residues are printed as least
nonnegative representatives; keys and records are in canonical order.

Exit status:
  0  success
  1  domain error, body {"error": <code>, "message": ...}; codes:
     InvalidCurveType MixedCurves InconsistentLabels EmptyF InvalidPresentation
     RealLocusOutsideRealPart RankOutOfRange NotApplicable UnsupportedRank
     OddDimension EvenDimension NotEmptyBase InvalidKey
  2  unreadable file, malformed JSON or schema violation (error ParseError)

Environment: RULEDFORMS_SEED, RULEDFORMS_LOG_LEVEL, RULEDFORMS_ORACLE_MAX_RECORDS.
"""


def _load(path: str):
    return codec.presentation_from_json(codec.load_json(path))


def cmd_validate(args) -> Any:
    P = _load(args.file)
    return {"valid": True, "degree": degree(P)}


def cmd_classify(args) -> Any:
    return codec.key_to_json(classify.key_of(_load(args.file)))


def cmd_equiv(args) -> Any:
    return {"equivalent": classify.equivalent(_load(args.file1), _load(args.file2))}


def cmd_normal_form(args) -> Any:
    return codec.presentation_to_json(classify.normal_form(_load(args.file)))


def cmd_topology(args) -> Any:
    P = _load(args.file)
    if P.n % 2 == 1:
        return {"real_components": real_component_count(P)}
    if P.base.mu == 0:
        return {"quotient": codec.quotient_to_json(quotient_class(P))}
    statuses, _ = real_part_topology(P)
    return {
        "statuses": codec.statuses_to_json(statuses),
        "quintuple": codec.quintuple_to_json(quintuple_of(P)),
    }


def _curve(args) -> CurveTopType:
    return CurveTopType(args.genus, args.mu, Eps(args.eps))


def _key_of_flags(args) -> DefClassKey:
    if None in (args.n, args.genus, args.mu, args.degree):
        raise SchemaError("realize needs --key or --n --genus --mu --degree")
    curve = _curve(args)
    if args.n % 2 == 1:
        return OddDimKey(curve, args.n, args.degree)
    if curve.mu > 0:
        return EvenDimRealBaseKey(curve, args.n, args.t, args.k, args.degree)
    return EvenDimEmptyBaseKey(curve, args.n, args.degree, args.quotient_bit)


def cmd_realize(args) -> Any:
    if args.key is not None:
        key = codec.key_from_json(codec.load_json(args.key))
    else:
        key = _key_of_flags(args)
    return codec.presentation_to_json(classify.realize(key))


def cmd_enumerate(args) -> Any:
    if args.mu is None:
        curves = list(curve_types(args.genus))
    else:
        curves = [_curve(args)]
    return [codec.key_to_json(key) for curve in curves for key in classify.enumerate_keys(args.n, curve)]


def cmd_transform(args) -> Any:
    P = _load(args.file)
    rec = ElemTransformRec(codec.parse_locus(args.locus), args.rank)
    return codec.presentation_to_json(apply_transform(P, rec))


def cmd_normal_bundle(args) -> Any:
    curve, L, F = codec.normal_bundle_input_from_json(codec.load_json(args.file))
    if not validate_curve_type(curve):
        raise InvalidCurveType(f"{curve} is not the type of a real curve")
    role = SurfaceRole(args.role)
    exprs = normal_bundle(L, F)
    return {
        "normal_bundle": [codec.surface_expr_to_json(expr) for expr in exprs],
        "real": [satisfies_reality(expr, role) for expr in exprs],
    }


def cmd_moves(args) -> Any:
    P = _load(args.file)
    return [
        {"move": name, "result": codec.presentation_to_json(Q)}
        for name, Q in successors(P)
    ]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ruledforms",
        description="Deformation classes of real ruled manifolds from combinatorial presentations.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, epilog=EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(handler=handler)
        return p

    add("validate", cmd_validate, "check a presentation file").add_argument("file")
    add("classify", cmd_classify, "print the deformation-class key").add_argument("file")
    p = add("equiv", cmd_equiv, "decide deformation equivalence")
    p.add_argument("file1")
    p.add_argument("file2")
    add("normal-form", cmd_normal_form, "print the canonical presentation").add_argument("file")
    add("topology", cmd_topology, "real part, quintuple or quotient class").add_argument("file")
    add("moves", cmd_moves, "list every applicable move").add_argument("file")
    p = add("normal-bundle", cmd_normal_bundle, "normal bundle of a sub-ruled surface")
    p.add_argument("file", help="document with curve, L and F")
    p.add_argument("--role", choices=[r.value for r in SurfaceRole], default=SurfaceRole.NORMAL_BUNDLE.value)

    p = add("transform", cmd_transform, "perform one elementary transformation")
    p.add_argument("file")
    p.add_argument("--locus", required=True, help="real:<idx> or conjpair")
    p.add_argument("--rank", type=int, default=1)

    p = add("realize", cmd_realize, "canonical presentation of a key")
    p.add_argument("--key", help="key document, instead of the flags below")
    p.add_argument("--n", type=int)
    p.add_argument("--genus", type=int)
    p.add_argument("--mu", type=int)
    p.add_argument("--eps", choices=[e.value for e in Eps], default=Eps.NONDIVIDING.value)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--degree", type=int)
    p.add_argument("--quotient-bit", dest="quotient_bit", type=int, choices=[0, 1], default=0)

    p = add("enumerate", cmd_enumerate, "list all deformation classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--mu", type=int)
    p.add_argument("--eps", choices=[e.value for e in Eps], default=Eps.NONDIVIDING.value)
    return parser


def run(argv: Optional[List[str]] = None, out: TextIO = sys.stdout) -> int:
    """
    Execute one subcommand

    Args:
        argv: Command-line arguments (defaults to sys.argv[1:])
        out: Stream receiving the JSON result
    Returns:
        int: exit status
    """
    args = build_parser().parse_args(argv)
    try:
        result = args.handler(args)
        status = EXIT_OK
    except RuledFormsError as e:
        LOGGER.debug("domain error in %s: %s", args.command, e)
        result = {"error": e.code, "message": str(e)}
        status = EXIT_DOMAIN
    except (SchemaError, OSError) as e:
        result = {"error": "ParseError", "message": str(e)}
        status = EXIT_PARSE
    out.write(codec.dumps(result) + "\n")
    return status


def main():
    settings = Settings.from_env()
    logging.basicConfig(level=settings.log_level, format=LOG_FORMAT, stream=sys.stderr)
    sys.exit(run())


if __name__ == "__main__":
    main()
