"""Deterministic batch CLI: every computation behind a subcommand, with
CSV/JSON/text output suitable for golden-file comparison.

Exit codes: 0 success, 2 domain error, 3 size-guard refusal, 64 unknown
subcommand or bad usage.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath as mp

from .arith import DomainError, PrimeSieve, eulerian_polynomial
from .boundary import boundary_table, fabry_lindelof, nth_prime
from .compositions import pair_is_exceeding
from .diagonals import diagonal_series, eventual_polynomial, first_diagonal_poly
from .polyring import SizeError, discriminant_bivariate
from .quantum import (
    classify_semiclassical,
    companion_matrix,
    quantum_char_poly,
    semiclassical_char_poly,
    simplicity_at_one,
)
from .sequences import (
    SequenceTable,
    asymptotic_ratio,
    canonical_kind,
    dirichlet_coeff_identity_check,
    ogf_truncation,
)
from .walkgraphs import build_graph, bivariate_genfun, canonical_graph_kind, walk_polynomial
from .witnesses import absence_reason, goldbach_report, witness

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_SIZE = 3
EXIT_USAGE = 64


def _parse_lambda(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise DomainError(f"bad composition {text!r}") from exc
    if not parts or any(p < 1 for p in parts):
        raise DomainError("composition parts must be positive integers")
    return parts


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1))
    sys.stdout.write("\n")


def _table_csv(kind: str, n_max: int) -> str:
    table = SequenceTable(kind, n_max)
    lines = ["N\\n," + ",".join(str(n) for n in range(2, n_max + 1))]
    for N in range(2, n_max + 1):
        cells = [str(N)]
        for n in range(2, n_max + 1):
            cells.append(str(table.value(n, N)) if N <= n else "")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _cmd_seq(args) -> int:
    kind = canonical_kind(args.kind)
    if args.format == "csv":
        sys.stdout.write(_table_csv(kind, args.nmax))
    else:
        table = SequenceTable(kind, args.nmax)
        data = {
            "kind": kind,
            "n_max": args.nmax,
            "entries": {f"{n},{N}": table.value(n, N) for n in range(2, args.nmax + 1) for N in range(2, n + 1)},
        }
        _emit_json(data)
    return EXIT_OK


def _cmd_ogf(args) -> int:
    coeffs = ogf_truncation(args.kind, args.N, args.degree)
    _emit_json({"kind": canonical_kind(args.kind), "N": args.N, "coefficients": coeffs})
    return EXIT_OK


def _cmd_dirichlet(args) -> int:
    ok, first_fail = dirichlet_coeff_identity_check(args.xmax)
    _emit_json({"x_max": args.xmax, "identity_holds": ok, "first_failure": first_fail})
    return EXIT_OK if ok else EXIT_DOMAIN


def _cmd_asym(args) -> int:
    rho = asymptotic_ratio(args.N, args.x)
    _emit_json({"N": args.N, "x": args.x, "rho": rho})
    return EXIT_OK


def _cmd_graph(args) -> int:
    g = build_graph(args.kind, args.m)
    if args.format == "csv":
        for row in g.adjacency:
            sys.stdout.write(",".join(str(x) for x in row) + "\n")
    else:
        _emit_json({"kind": g.kind, "m": g.m, "adjacency": [list(r) for r in g.adjacency]})
    return EXIT_OK


def _cmd_genfun(args) -> int:
    g = build_graph(args.kind, args.m)
    if args.walks:
        for N in range(1, args.walks + 1):
            sys.stdout.write(f"N={N}: {walk_polynomial(g, N).text()}\n")
        return EXIT_OK
    rf = bivariate_genfun(g)
    sys.stdout.write(rf.text() + "\n")
    return EXIT_OK


def _cmd_diag(args) -> int:
    kind = canonical_kind(args.kind)
    if kind == "first":
        poly = first_diagonal_poly(args.k)
        _emit_json({"kind": kind, "k": args.k, "polynomial": poly.text(), "valid_from": 2})
        return EXIT_OK
    D = diagonal_series(kind, args.k, m=args.m)
    Q, threshold = eventual_polynomial(D)
    _emit_json(
        {
            "kind": kind,
            "k": args.k,
            "rational": f"({D.numerator.text()}) / (1 - t)^{D.s}",
            "polynomial": Q.text(),
            "valid_from": max(threshold, 1),
        }
    )
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    lam = _parse_lambda(args.lam)
    f = quantum_char_poly(lam)
    if args.q:
        bindings = {}
        for i, val in enumerate(args.q.split(","), start=1):
            num, _, den = val.partition("/")
            bindings[f"q{i}"] = Fraction(int(num), int(den) if den else 1)
        f = f.substitute(bindings)
    sys.stdout.write(f.text() + "\n")
    return EXIT_OK


def _cmd_discriminant(args) -> int:
    lam = _parse_lambda(args.lam)
    f = quantum_char_poly(lam)
    sys.stdout.write(discriminant_bivariate(f, "zeta").text() + "\n")
    return EXIT_OK


def _cmd_semiclassical(args) -> int:
    lam = _parse_lambda(args.lam)
    sys.stdout.write(semiclassical_char_poly(lam, args.i).text() + "\n")
    return EXIT_OK


def _cmd_classify(args) -> int:
    lam = _parse_lambda(args.lam)
    if args.i is not None:
        indices = [args.i]
    else:
        indices = list(range(1, len(lam)))
    rows = []
    for i in indices:
        rows.append(
            {
                "i": i,
                "pair": [lam[i - 1], lam[i]],
                "classification": classify_semiclassical(lam, i),
                "pair_exceeding": pair_is_exceeding(lam[i - 1], lam[i]),
            }
        )
    _emit_json({"lambda": list(lam), "spectra": rows})
    return EXIT_OK


def _cmd_simplicity(args) -> int:
    lam = _parse_lambda(args.lam)
    _emit_json({"lambda": list(lam), "simple_at_q_one": simplicity_at_one(lam)})
    return EXIT_OK


def _cmd_companion(args) -> int:
    lam = _parse_lambda(args.lam)
    A = companion_matrix(lam)
    for row in A.entries:
        sys.stdout.write(",".join(p.text() for p in row) + "\n")
    return EXIT_OK


def _cmd_witness(args) -> int:
    w = witness(args.n, args.N)
    if w is None:
        _emit_json({"n": args.n, "N": args.N, "witness": "absent", "reason": absence_reason(args.n, args.N)})
    else:
        _emit_json(
            {
                "n": args.n,
                "N": args.N,
                "witness": list(w.parts),
                "certificates": [list(c) for c in w.certificates],
                "source": w.source,
            }
        )
    return EXIT_OK


def _cmd_goldbach(args) -> int:
    rep = goldbach_report(args.nmax)
    if not args.full:
        rep = {k: rep[k] for k in ("n_max", "counterexamples", "summary")}
    _emit_json(rep)
    return EXIT_OK


def _cmd_fabry(args) -> int:
    if args.n > 10**4 and not args.long:
        raise SizeError("n above 10^4 requires --long")
    if args.m is not None:
        b = fabry_lindelof(args.n, args.m, args.M, args.precision_bits)
        sys.stdout.write(mp.nstr(b, args.digits) + "\n")
        return EXIT_OK
    rows = boundary_table([args.n], args.M, args.precision_bits)
    lines = ["m,b"]
    for m, row in enumerate(rows, start=1):
        lines.append(f"{m},{mp.nstr(row[0], args.digits)}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_eulerian(args) -> int:
    e = eulerian_polynomial(args.k)
    _emit_json({"k": args.k, "coefficients": e.coefficients})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flagspectra", description=__doc__)
    sub = p.add_subparsers(dest="command")

    s = sub.add_parser("seq", help="triangular table of one counting kind")
    s.add_argument("--kind", required=True, help="first|all|prime (aliases: lcyr, tlcyr, ell)")
    s.add_argument("--nmax", type=int, default=18)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=_cmd_seq)

    s = sub.add_parser("ogf", help="column generating-function coefficients")
    s.add_argument("--kind", required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(func=_cmd_ogf)

    s = sub.add_parser("dirichlet-check", help="coefficientwise Dirichlet identity check")
    s.add_argument("--xmax", type=int, required=True)
    s.set_defaults(func=_cmd_dirichlet)

    s = sub.add_parser("asym", help="normalized partial-sum ratio")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--x", type=int, required=True)
    s.set_defaults(func=_cmd_asym)

    s = sub.add_parser("graph", help="walk-graph adjacency matrix")
    s.add_argument("--kind", required=True, help="gamma|pi")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=_cmd_graph)

    s = sub.add_parser("genfun", help="bivariate walk generating function")
    s.add_argument("--kind", required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--walks", type=int, default=0, help="print walk polynomials up to N instead")
    s.set_defaults(func=_cmd_genfun)

    s = sub.add_parser("diag", help="shifted-diagonal rational form and polynomial")
    s.add_argument("--kind", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--m", type=int, default=None)
    s.set_defaults(func=_cmd_diag)

    s = sub.add_parser("spectrum", help="quantum characteristic polynomial")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--q", default=None, help="comma-separated rationals p/r to substitute")
    s.set_defaults(func=_cmd_spectrum)

    s = sub.add_parser("discriminant", help="discriminant of the quantum characteristic polynomial")
    s.add_argument("--lambda", dest="lam", required=True)
    s.set_defaults(func=_cmd_discriminant)

    s = sub.add_parser("semiclassical", help="i-th semiclassical characteristic polynomial")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--i", type=int, required=True)
    s.set_defaults(func=_cmd_semiclassical)

    s = sub.add_parser("classify", help="exceeding / non-exceeding classification")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--i", type=int, default=None)
    s.set_defaults(func=_cmd_classify)

    s = sub.add_parser("simplicity", help="spectrum simplicity at q = 1")
    s.add_argument("--lambda", dest="lam", required=True)
    s.set_defaults(func=_cmd_simplicity)

    s = sub.add_parser("companion", help="companion matrix of the quantum presentation")
    s.add_argument("--lambda", dest="lam", required=True)
    s.set_defaults(func=_cmd_companion)

    s = sub.add_parser("witness", help="prime-type composition witness")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.set_defaults(func=_cmd_witness)

    s = sub.add_parser("goldbach", help="vanishing scan against prime-sum structure")
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--full", action="store_true", help="include per-n rows")
    s.set_defaults(func=_cmd_goldbach)

    s = sub.add_parser("fabry", help="boundary probe values")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--M", type=int, default=10)
    s.add_argument("--precision-bits", type=int, default=None)
    s.add_argument("--digits", type=int, default=6)
    s.add_argument("--long", action="store_true", help="allow minutes-scale n")
    s.set_defaults(func=_cmd_fabry)

    s = sub.add_parser("eulerian", help="Eulerian polynomial coefficients")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=_cmd_eulerian)

    return p


def run(argv: list[str]) -> int:
    parser = build_parser()
    if not argv or argv[0] in ("-h", "--help"):
        parser.print_help()
        return EXIT_OK
    valid = set(parser._subparsers._group_actions[0].choices)  # type: ignore[union-attr]
    if argv[0] not in valid:
        sys.stderr.write(parser.format_usage())
        sys.stderr.write(f"unknown subcommand: {argv[0]}\n")
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SizeError as exc:
        sys.stderr.write(f"size guard: {exc}\n")
        return EXIT_SIZE
    except DomainError as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
