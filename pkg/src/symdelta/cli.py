"""Command line interface: ``symdelta <command> ...``.

Exit codes: 0 success or valid, 1 the input was checked and found invalid,
2 usage error or unreadable input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import io
from .collapse import certify_contractible_by_collapse, collapse_by_dmf, collapse_by_matching
from .complex import DEFAULT_FACTORIAL_LIMIT, SymmetricDeltaComplex, validate_complex
from .errors import (
    ComplexFormatError,
    DimensionError,
    FactorialLimitError,
    InvalidDMFError,
    InvalidMatchingError,
    PreconditionError,
    UnknownOrbitError,
)
from .homology import betti, euler_characteristic, reduced_betti
from .matching import dmf_to_matching, matching_to_dmf, search_matching, validate_matching
from .morse import level_subcomplex, parse_value, validate_dmf
from .permissibility import is_permissible, oracle_for
from .tropical import certify_coloop, enumerate_coloop_complex

OK, INVALID, USAGE = 0, 1, 2


class _Output:
    def __init__(self, fmt: str, stream=None):
        self.structured = fmt == "structured"
        self.stream = stream or sys.stdout

    def line(self, text: str = "") -> None:
        if not self.structured:
            print(text, file=self.stream)

    def document(self, obj) -> None:
        if self.structured:
            self.stream.write(io.dumps(obj))


def _seed(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return n


def _value(text: str) -> Fraction:
    try:
        return parse_value(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "structured"], default="human")
    common.add_argument("--factorial-limit", type=int, default=DEFAULT_FACTORIAL_LIMIT)

    parser = argparse.ArgumentParser(prog="symdelta", description="Discrete Morse theory on symmetric Delta-complexes")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    add("validate", "check the functor relations of a complex").add_argument("complex")
    add("orbits", "list orbits with their automorphism groups").add_argument("complex")
    p = add("permissible", "permissibility certificates")
    p.add_argument("complex")
    p.add_argument("--pair", nargs=2, metavar=("ALPHA", "BETA"))
    p = add("check-dmf", "validate a discrete Morse function")
    p.add_argument("complex")
    p.add_argument("dmf")
    p = add("levels", "level subcomplex K(c)")
    p.add_argument("complex")
    p.add_argument("dmf")
    p.add_argument("--at", type=_value, required=True)
    p = add("match", "greedy permissible acyclic matching")
    p.add_argument("complex")
    p.add_argument("--seed", type=_seed, default=0)
    p = add("match-check", "validate a matching")
    p.add_argument("complex")
    p.add_argument("matching")
    p = add("dmf-from-matching", "a Morse function inducing a matching")
    p.add_argument("complex")
    p.add_argument("matching")
    p = add("collapse", "collapse/attach trace and Morse model")
    p.add_argument("complex")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--dmf")
    source.add_argument("--matching")
    p.add_argument("--certify", action="store_true", help="fail unless the model is a single point")
    add("homology", "rational Betti numbers").add_argument("complex")

    ag = sub.add_parser("ag", help="coloop subcomplex of the perfect cone link")
    ag_sub = ag.add_subparsers(dest="ag_command", required=True)
    p = ag_sub.add_parser("build", parents=[common], help="build the complex and its census")
    p.add_argument("g", type=int)
    p.add_argument("--output")
    p.add_argument("--allow-g4", action="store_true")
    p = ag_sub.add_parser("certify", parents=[common], help="check the contractibility hypotheses")
    p.add_argument("g", type=int)
    p.add_argument("--allow-g4", action="store_true")
    return parser


def _load(args) -> SymmetricDeltaComplex:
    X = io.load_complex(args.complex)
    if X.max_dim > args.factorial_limit:
        raise FactorialLimitError(
            f"{args.complex}: dimension {X.max_dim} needs S_{X.max_dim + 1}, above the factorial limit"
        )
    return X


def cmd_validate(args, out):
    X = _load(args)
    report = validate_complex(X)
    out.document({
        "valid": report.ok,
        "violations": [
            {"family": v.family, "dim": v.dim, "witness": v.witness, "detail": v.detail} for v in report.violations
        ],
    })
    if report.ok:
        out.line(f"valid: {X!r}")
    for v in report.violations:
        out.line(f"violation [{v.family}] dim {v.dim} at {v.witness}: {v.detail}")
    return OK if report.ok else INVALID


def cmd_orbits(args, out):
    X = _load(args)
    rows = []
    for orb in X.orbits():
        aut = X.automorphisms(orb.rep, args.factorial_limit)
        rows.append({
            "dim": orb.dim,
            "rep": orb.rep,
            "members": sorted(orb.members),
            "aut_order": len(aut),
        })
        out.line(f"{orb.dim}  {orb}  size {len(orb.members)}  |Aut| = {len(aut)}")
    out.document(rows)
    return OK


def cmd_permissible(args, out):
    X = _load(args)
    if args.pair:
        alpha, beta = args.pair
        for x in (alpha, beta):
            if x not in X:
                raise UnknownOrbitError(f"unknown simplex {x!r}")
        cert = is_permissible(X, alpha, beta, args.factorial_limit)
        out.document(cert.to_dict())
        out.line(f"{alpha} < {beta}: {cert.verdict}")
        if cert.gluings:
            out.line("gluings: " + ", ".join(str(tuple(g)) for g in cert.gluings))
        return OK if cert.permissible else INVALID
    rows = oracle_for(X, args.factorial_limit).table()
    out.document([{"lower": lo.rep, "upper": up.rep, "verdict": c.verdict} for lo, up, c in rows])
    for lo, up, c in rows:
        out.line(f"{lo} < {up}: {c.verdict}")
    return OK


def cmd_check_dmf(args, out):
    X = _load(args)
    report = validate_dmf(X, io.load_dmf(X, args.dmf))
    out.document(report.to_dict())
    if report.valid:
        out.line("valid discrete Morse function")
        out.line("critical: " + ", ".join(map(str, report.critical)))
    for v in report.violations:
        out.line(f"violation: {v}")
    return OK if report.valid else INVALID


def cmd_levels(args, out):
    X = _load(args)
    K = level_subcomplex(X, io.load_dmf(X, args.dmf), args.at)
    simplices = sorted(K.all_simplices())
    out.document({"at": str(args.at), "simplices": simplices})
    out.line(f"K({args.at}) = {{{', '.join(simplices)}}}")
    return OK


def _print_matching(M, out):
    out.document(M.to_list())
    for lo, up in M:
        out.line(f"{lo} < {up}")


def cmd_match(args, out):
    X = _load(args)
    M = search_matching(X, args.seed)
    _print_matching(M, out)
    out.line(f"{len(M)} pairs")
    return OK


def cmd_match_check(args, out):
    X = _load(args)
    report = validate_matching(X, io.load_matching(X, args.matching))
    out.document(report.to_dict())
    if report.valid:
        out.line("valid permissible acyclic matching")
    for kind, detail in report.problems:
        out.line(f"{kind}: {detail}")
    return OK if report.valid else INVALID


def cmd_dmf_from_matching(args, out):
    X = _load(args)
    M = io.load_matching(X, args.matching)
    f = matching_to_dmf(X, M)
    assert dmf_to_matching(X, f) == M
    data = io.dmf_to_json(f)
    out.document(data)
    for rep, v in data.items():
        out.line(f"[{rep}] {v}")
    return OK


def cmd_collapse(args, out):
    X = _load(args)
    if args.dmf:
        trace, model = collapse_by_dmf(X, io.load_dmf(X, args.dmf))
    else:
        trace, model = collapse_by_matching(X, io.load_matching(X, args.matching))
    point = certify_contractible_by_collapse(trace)
    out.document({
        "trace": [e.to_dict() for e in trace],
        "model": model.to_list(),
        "point": point,
    })
    for e in trace:
        out.line(str(e))
    out.line("cells:")
    for c in model.cells:
        g = c.group
        out.line(f"  dim {c.dim}  {c.orbit}  |G| = {g.order}  orders {list(g.element_orders)}  odd {g.has_odd}")
    out.line(f"point certificate: {'holds' if point else 'fails'}")
    if args.certify and not point:
        return INVALID
    return OK


def cmd_homology(args, out):
    X = _load(args)
    if X.is_empty():
        b, rb = [], None
    else:
        b, rb = betti(X, args.factorial_limit), reduced_betti(X, args.factorial_limit)
    chi = euler_characteristic(X, args.factorial_limit)
    out.document({"betti": b, "reduced_betti": rb, "euler_characteristic": chi})
    out.line(f"betti: {b}")
    if rb is not None:
        out.line(f"reduced betti: {rb}")
    out.line(f"euler characteristic: {chi}")
    return OK


def cmd_ag_build(args, out):
    X, census = enumerate_coloop_complex(args.g, args.allow_g4)
    if args.output:
        io.dump_complex(X, args.output)
    out.document({
        "g": args.g,
        "counts": census.counts(),
        "census": [e.to_dict() for e in census.entries],
        "complex": None if args.output else X.to_dict(),
    })
    out.line(f"coloop complex for g = {args.g}: orbit counts {census.counts()}")
    out.line("dim  rank  coloops  |Aut|  matroid  representative")
    for e in census.entries:
        out.line(f"{e.dim:>3}  {e.rank:>4}  {e.coloops:>7}  {e.aut_order:>5}  {e.name}  [{e.rep}]")
    if args.output:
        out.line(f"wrote {args.output}")
    return OK


def cmd_ag_certify(args, out):
    cert = certify_coloop(args.g, args.allow_g4)
    out.document(cert.to_dict())
    for key, (passed, detail) in cert.clauses.items():
        out.line(f"({key}) {'pass' if passed else 'FAIL'}: {detail}")
    return OK if cert.ok else INVALID


COMMANDS = {
    "validate": cmd_validate,
    "orbits": cmd_orbits,
    "permissible": cmd_permissible,
    "check-dmf": cmd_check_dmf,
    "levels": cmd_levels,
    "match": cmd_match,
    "match-check": cmd_match_check,
    "dmf-from-matching": cmd_dmf_from_matching,
    "collapse": cmd_collapse,
    "homology": cmd_homology,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    out = _Output(args.format, stdout)
    if args.command == "ag":
        handler = cmd_ag_build if args.ag_command == "build" else cmd_ag_certify
    else:
        handler = COMMANDS[args.command]
    try:
        return handler(args, out)
    except (InvalidDMFError, InvalidMatchingError) as exc:
        print(f"error: {exc}", file=stderr)
        if exc.report is not None:
            out.document(exc.report.to_dict())
        return INVALID
    except (ComplexFormatError, DimensionError, UnknownOrbitError, PreconditionError, FactorialLimitError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
