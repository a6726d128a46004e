"""Command-line interface.

Subcommands: family, chambers, edges, det, formula, zagier, verify.
Exit codes: 0 success / verification PASS, 1 verification FAIL, 2 usage or
input error.  All machine-readable output is JSON on stdout; family,
chambers and edges also have a plain-text form (the default), and the text
form of `family` is itself a valid arrangement file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .closedform import formula_A, formula_B, formula_D, formula_I2, zagier
from .exactalg import (DEFAULT_PRIME, ExactAlgError, PrimeField,
                       factored_specialize_all)
from .families import (FamilyError, FamilyKind, build_family,
                       descriptor_weight_monomial, multiplicity_combinatorial,
                       relevant_edges_combinatorial)
from .geometry import (Arrangement, GeometryError, enumerate_chambers,
                       factored_determinant_general, relevant_edges)
from .harness import (DEFAULT_SEED, DEFAULT_TRIALS, DetSource, ParseError,
                      _assignment_digest, bruteforce_source, draw_nonzero,
                      factored_source, parse_arrangement_file, trial_stream,
                      verify_identity)
from .matrix import MatrixError, det_bruteforce, varchenko_matrix_eval


class CliError(ValueError):
    pass


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _family_formula(kind: FamilyKind):
    if kind.letter == "A":
        return formula_A(kind.param)
    if kind.letter == "B":
        return formula_B(kind.param)
    if kind.letter == "D":
        return formula_D(kind.param)
    return formula_I2(kind.param)


def _load_arrangement(args) -> tuple[Arrangement, str]:
    kind = getattr(args, "kind", None)
    file = getattr(args, "file", None)
    if (kind is None) == (file is None):
        raise CliError("exactly one of --kind and --file is required")
    if kind is not None:
        k = FamilyKind.parse(kind)
        return build_family(k), str(k)
    A = parse_arrangement_file(Path(file).read_text())
    return A, file


def _prime_chambers(A: Arrangement, args) -> None:
    enumerate_chambers(A,
                       max_hyperplanes=getattr(args, "max_hyperplanes", None),
                       max_chambers=getattr(args, "max_chambers", None))


def _add_subject_args(sub, with_guards: bool = True) -> None:
    sub.add_argument("--kind", help="family selector A:n, B:n, D:n or I2:m")
    sub.add_argument("--file", help="arrangement file path")
    if with_guards:
        sub.add_argument("--max-hyperplanes", type=int, dest="max_hyperplanes",
                         help="override the hyperplane-count guard")
        sub.add_argument("--max-chambers", type=int, dest="max_chambers",
                         help="override the chamber-count guard")


def _hyperplane_text(h) -> str:
    coeffs = " ".join(str(c) for c in h.normal)
    return f"hyperplane {coeffs} {h.offset} {h.weight}"


def cmd_family(args) -> int:
    A, _ = _load_arrangement(args)
    if args.emit == "json":
        _emit_json({
            "dimension": A.dimension,
            "hyperplanes": [
                {"normal": [str(c) for c in h.normal],
                 "offset": str(h.offset),
                 "weight": h.weight}
                for h in A.hyperplanes
            ],
        })
    else:
        print(f"dim {A.dimension}")
        for h in A.hyperplanes:
            print(_hyperplane_text(h))
    return 0


def cmd_chambers(args) -> int:
    A, _ = _load_arrangement(args)
    _prime_chambers(A, args)
    chambers = enumerate_chambers(A)
    if args.emit == "json":
        _emit_json({
            "count": len(chambers),
            "chambers": [
                {"signs": c.sign_string(), "witness": [str(x) for x in c.witness]}
                for c in chambers
            ],
        })
    else:
        for c in chambers:
            print(c.sign_string(), " ".join(str(x) for x in c.witness))
        print(f"# {len(chambers)} chambers")
    return 0


def cmd_edges(args) -> int:
    if args.combinatorial:
        if args.kind is None:
            raise CliError("--combinatorial needs --kind")
        kind = FamilyKind.parse(args.kind)
        rows = []
        for d in relevant_edges_combinatorial(kind):
            entries = list(d.signed.entries) if d.variant == "signed_equal" else list(d.indices)
            rows.append({
                "variant": d.variant,
                "entries": entries,
                "weight": str(descriptor_weight_monomial(kind, d)),
                "multiplicity": multiplicity_combinatorial(kind, d),
            })
        if args.emit == "json":
            _emit_json({"kind": str(kind), "edges": rows})
        else:
            for r in rows:
                print(f"{r['variant']:13s} {str(r['entries']):24s} "
                      f"weight {r['weight']}  multiplicity {r['multiplicity']}")
        return 0
    A, _ = _load_arrangement(args)
    _prime_chambers(A, args)
    rows = [{
        "hyperplanes": sorted(e.containing),
        "dim": e.dim,
        "weight": str(e.weight_monomial),
        "multiplicity": e.multiplicity,
    } for e in relevant_edges(A)]
    if args.emit == "json":
        _emit_json({"edges": rows})
    else:
        for r in rows:
            print(f"{str(r['hyperplanes']):24s} dim {r['dim']}  "
                  f"weight {r['weight']}  multiplicity {r['multiplicity']}")
    return 0


def cmd_det(args) -> int:
    A, subject = _load_arrangement(args)
    _prime_chambers(A, args)
    if args.mode == "factored":
        _emit_json(factored_determinant_general(A).to_json_obj())
        return 0
    field = PrimeField(args.prime)
    if args.assign is not None:
        raw = json.loads(Path(args.assign).read_text())
        if not isinstance(raw, dict):
            raise CliError("assignment file must be a JSON object")
        assignment = {}
        for name, value in raw.items():
            if not isinstance(value, int):
                raise CliError(f"assignment for {name!r} must be an integer")
            assignment[name] = value % field.p
    else:
        rng = trial_stream(args.seed, 0)
        assignment = {name: draw_nonzero(rng, field.p)
                      for name in sorted(A.weight_names())}
    M = varchenko_matrix_eval(A, enumerate_chambers(A), assignment, field)
    _emit_json({
        "subject": subject,
        "prime": str(field.p),
        "assignment": _assignment_digest(assignment),
        "value": str(det_bruteforce(M)),
    })
    return 0


def cmd_formula(args) -> int:
    kind = FamilyKind.parse(args.kind)
    f = _family_formula(kind)
    if args.specialize is not None:
        f = factored_specialize_all(f, args.specialize)
    _emit_json(f.to_json_obj())
    return 0


def cmd_zagier(args) -> int:
    _emit_json(zagier(args.n).to_json_obj())
    return 0


def _source(role: str, name: str, args, A: Arrangement) -> DetSource:
    if name == "formula":
        if args.kind is None:
            raise CliError(f"--{role} formula needs --kind")
        return factored_source("formula", _family_formula(FamilyKind.parse(args.kind)))
    if name == "geometric":
        _prime_chambers(A, args)
        return factored_source("geometric", factored_determinant_general(A))
    if name == "bruteforce":
        _prime_chambers(A, args)
        return bruteforce_source(A)
    raise CliError(f"unknown source {name!r}")


def cmd_verify(args) -> int:
    A, subject = _load_arrangement(args)
    report = verify_identity(
        _source("lhs", args.lhs, args, A),
        _source("rhs", args.rhs, args, A),
        trials=args.trials, prime=args.prime, seed=args.seed, subject=subject)
    sys.stdout.write(report.to_json())
    return 0 if report.passed() else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="varchenko",
        description="Exact toolkit for weighted hyperplane arrangements and "
                    "their factored matrix determinants.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("family", help="describe an arrangement")
    _add_subject_args(p, with_guards=False)
    p.add_argument("--emit", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_family)

    p = subs.add_parser("chambers", help="list chambers with sign vectors")
    _add_subject_args(p)
    p.add_argument("--emit", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_chambers)

    p = subs.add_parser("edges", help="list relevant edges with multiplicities")
    _add_subject_args(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--geometric", action="store_true", default=True,
                      help="face-scan engine (default)")
    mode.add_argument("--combinatorial", action="store_true",
                      help="family model with the printed multiplicities")
    p.add_argument("--emit", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_edges)

    p = subs.add_parser("det", help="determinant, factored or one evaluation")
    _add_subject_args(p)
    p.add_argument("--mode", choices=("factored", "bruteforce"), required=True)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--assign", help="JSON file mapping weight names to integers")
    p.set_defaults(func=cmd_det)

    p = subs.add_parser("formula", help="closed-form factored determinant")
    p.add_argument("--kind", required=True)
    p.add_argument("--specialize", metavar="VAR",
                   help="collapse all weights to one variable")
    p.set_defaults(func=cmd_formula)

    p = subs.add_parser("zagier", help="single-variable specialized formula")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_zagier)

    p = subs.add_parser("verify", help="compare two determinant representations")
    _add_subject_args(p)
    p.add_argument("--lhs", choices=("formula", "geometric", "bruteforce"),
                   required=True)
    p.add_argument("--rhs", choices=("formula", "geometric", "bruteforce"),
                   required=True)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ExactAlgError, FamilyError, GeometryError, MatrixError,
            ParseError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
