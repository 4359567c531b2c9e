"""
Command Line Entry Point
Builds neural codes, computes Graver bases, Gröbner bases, universal Gröbner
bases and state polytopes, and runs the verification harness.

JSON goes to stdout; logs go to stderr.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from app.config import settings
from app.core.cache import ResultCache
from app.core.codes import (
    NeuralCode,
    format_code,
    is_inductively_pierced,
    pair_code,
    parse_code_file,
    path_code,
    star_code,
)
from app.core.exactgeom import face_lattice
from app.core.nestedsets import closure_I, maximal_nested_sets
from app.core.statepoly import state_polytope_alg35, state_polytope_fibers
from app.core.toric import (
    Binomial,
    WeightOrder,
    claimed_ugb_pair,
    claimed_ugb_star,
    code_matrix,
    default_degree_bound,
    degree_census,
    graver_with_certificate,
    reduced_gb,
    ugb,
)
from app.core.verifier import SUITES, conjecture_evidence, exit_code, path_degree_bound, run_suite
from app.exceptions import DeskScaleError
from app.models import (
    BinomialModel,
    BinomialSetModel,
    CodeModel,
    ConjectureRowModel,
    ErrorResponse,
    GroebnerBasisModel,
    NestedSetsModel,
    PiercingModel,
    PolytopeModel,
    StatePolytopeModel,
)

logger = logging.getLogger(__name__)

FALLBACK_DEGREE_BOUND = 6


def _parse_ints(text: str) -> List[int]:
    return [int(part) for part in text.replace(" ", "").split(",") if part]


def _check_guard(args: argparse.Namespace):
    if args.code_file:
        return
    if args.code == "star" and args.n > settings.star_n_max:
        raise DeskScaleError(f"star n={args.n} exceeds the guard {settings.star_n_max}")
    if args.code == "pair" and args.n > settings.pair_n_max:
        raise DeskScaleError(f"pair n={args.n} exceeds the guard {settings.pair_n_max}")
    if args.code == "path" and sum(_parse_ints(args.l or "")) > settings.path_total_max:
        raise DeskScaleError(f"path total length exceeds the guard {settings.path_total_max}")


def load_code(args: argparse.Namespace) -> NeuralCode:
    """Build the code named by --code/--n/--l or read --code-file."""
    if args.code_file:
        return parse_code_file(Path(args.code_file).read_text(encoding="utf-8"))
    if args.code == "star":
        return star_code(args.n)
    if args.code == "pair":
        return pair_code(args.n)
    if not args.l:
        raise ValueError("--code path needs --l, e.g. --l 5 or --l 2,0,0")
    return path_code(_parse_ints(args.l))


def degree_bound(args: argparse.Namespace) -> int:
    if args.degree_bound:
        return args.degree_bound
    if args.code_file:
        return FALLBACK_DEGREE_BOUND
    if args.code == "star":
        return default_degree_bound(claimed_ugb_star(args.n))
    if args.code == "pair":
        return default_degree_bound(claimed_ugb_pair(args.n))
    return path_degree_bound(_parse_ints(args.l))


def _cache_key(args: argparse.Namespace, kind: str) -> Optional[str]:
    if args.code_file:
        return None
    instance = args.l if args.code == "path" else str(args.n)
    return f"{kind}/{args.code}/{instance}/{degree_bound(args)}"


def _ugb_elements(args: argparse.Namespace, cache: ResultCache):
    matrix = code_matrix(load_code(args))
    key = _cache_key(args, "ugb")
    payload = cache.load(key) if key else None
    if payload is None:
        elements = ugb(matrix, degree_bound(args))
        payload = [list(b.u) for b in sorted(elements)]
        if key:
            cache.store(key, payload)
    return matrix, frozenset(Binomial(tuple(u)) for u in payload)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_code(args, cache):
    code = load_code(args)
    if args.text:
        return format_code(code)
    return CodeModel.from_code(code).model_dump()


def cmd_graver(args, cache):
    _check_guard(args)
    matrix = code_matrix(load_code(args))
    elements, certified = graver_with_certificate(matrix, degree_bound(args))
    return BinomialSetModel(
        kind="graver",
        certified=certified,
        degree_census=degree_census(elements),
        binomials=[BinomialModel.from_binomial(b) for b in sorted(elements)],
    ).model_dump()


def cmd_ugb(args, cache):
    _check_guard(args)
    _, elements = _ugb_elements(args, cache)
    return BinomialSetModel(
        kind="ugb",
        degree_census=degree_census(elements),
        binomials=[BinomialModel.from_binomial(b) for b in sorted(elements)],
    ).model_dump()


def cmd_gb(args, cache):
    _check_guard(args)
    matrix = code_matrix(load_code(args))
    weight = _parse_ints(args.weight) if args.weight else None
    if weight is not None and len(weight) != matrix.cols:
        raise ValueError(f"Weight of length {len(weight)} for {matrix.cols} variables")
    generators, _ = graver_with_certificate(matrix, degree_bound(args))
    basis = reduced_gb(generators, WeightOrder.of(weight))
    return GroebnerBasisModel.from_basis(basis).model_dump()


def _state_polytope_payload(method: str, matrix, elements) -> dict:
    if method == "alg35":
        result = state_polytope_alg35(matrix, elements)
        f_vector = list(face_lattice(result.polytope).f_vector)
        return StatePolytopeModel.from_result(result, f_vector).model_dump()
    polytope = state_polytope_fibers(matrix, elements)
    return StatePolytopeModel(
        method="fibers",
        polytope=PolytopeModel.from_polytope(polytope, list(face_lattice(polytope).f_vector)),
    ).model_dump()


def cmd_state_polytope(args, cache):
    _check_guard(args)
    matrix, elements = _ugb_elements(args, cache)
    methods = ["alg35", "fibers"] if args.method == "both" else [args.method]
    output = {}
    for method in methods:
        key = _cache_key(args, f"state-polytope/{method}")
        payload = cache.load(key) if key else None
        if payload is None:
            logger.info(f"Computing the {method} state polytope")
            payload = _state_polytope_payload(method, matrix, elements)
            if key:
                cache.store(key, payload)
        output[method] = payload
    return output


def cmd_pierced(args, cache):
    certificate = is_inductively_pierced(load_code(args), args.k)
    return PiercingModel.from_certificate(certificate).model_dump()


def cmd_nested(args, cache):
    if args.n > settings.nested_n_max:
        raise DeskScaleError(f"nested n={args.n} exceeds the guard {settings.nested_n_max}")
    nested = maximal_nested_sets(closure_I(args.n))
    return NestedSetsModel.from_nested_sets(args.n, nested).model_dump()


def cmd_conjecture(args, cache):
    length = _parse_ints(args.l)[0] if args.l else 1
    f_vector, rows = conjecture_evidence(length, args.n)
    return {"l": length, "n": args.n, "f_vector": f_vector,
            "report": [ConjectureRowModel.from_row(r).model_dump() for r in rows]}


COMMANDS = {
    "code": cmd_code,
    "gb": cmd_gb,
    "graver": cmd_graver,
    "ugb": cmd_ugb,
    "state-polytope": cmd_state_polytope,
    "pierced": cmd_pierced,
    "nested": cmd_nested,
    "conjecture": cmd_conjecture,
}
VERIFY_COMMANDS = ("verify-paper", "verify")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="neuralcodes", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="Indent JSON output")
    parser.add_argument("--cache-dir", default=None, help="Result cache directory (default: CACHE_DIR)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_code_options(sub: argparse.ArgumentParser):
        sub.add_argument("--code", choices=["star", "pair", "path"], default="star")
        sub.add_argument("--n", type=int, default=2, help="Size parameter of star/pair codes")
        sub.add_argument("--l", default=None, help="Path lengths, e.g. 5 or 2,0,0")
        sub.add_argument("--code-file", default=None, help="Code file (one word per line, or JSON)")
        sub.add_argument("--degree-bound", type=int, default=None, help="Graver enumeration degree bound")

    for name in ("code", "graver", "ugb", "gb", "state-polytope", "pierced"):
        sub = subparsers.add_parser(name)
        add_code_options(sub)
        if name == "gb":
            sub.add_argument("--weight", default=None, help="Comma-separated weight vector")
        if name == "state-polytope":
            sub.add_argument("--method", choices=["alg35", "fibers", "both"], default="alg35")
        if name == "pierced":
            sub.add_argument("--k", type=int, default=1)
        if name == "code":
            sub.add_argument("--text", action="store_true", help="Plain code file (one word per line) instead of JSON")

    nested = subparsers.add_parser("nested")
    nested.add_argument("--n", type=int, default=2)

    conjecture = subparsers.add_parser("conjecture")
    conjecture.add_argument("--l", default="1", help="Length l of ℓ = (l, 0, …, 0)")
    conjecture.add_argument("--n", type=int, default=1, help="Number of entries of ℓ")

    verify = subparsers.add_parser("verify-paper", aliases=["verify"])
    verify.add_argument("--suite", choices=list(SUITES), default="all")
    verify.add_argument("--n", type=int, default=3, help="Largest instance size")
    verify.add_argument("--jobs", type=int, default=None)
    return parser


def _emit(payload, pretty: bool):
    if isinstance(payload, str):
        sys.stdout.write(payload)
        return
    print(json.dumps(payload, indent=2 if pretty else None, ensure_ascii=False))


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cache = ResultCache(args.cache_dir)
    try:
        if args.command in VERIFY_COMMANDS:
            reports = run_suite(args.suite, args.n, jobs=args.jobs, cache=cache)
            for report in reports:
                _emit(report.model_dump(), args.pretty)
            return exit_code(reports)
        _emit(COMMANDS[args.command](args, cache), args.pretty)
        return 0
    except DeskScaleError as e:
        logger.warning(f"Refused: {e}")
        print(ErrorResponse(error="Refused by desk-scale guard", details=str(e)).model_dump_json(), file=sys.stderr)
        return 2
    except ValueError as e:
        logger.error(f"{args.command} failed: {e}")
        print(ErrorResponse(error=f"{args.command} failed", details=str(e)).model_dump_json(), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
