"""Command-line tools for cluster varieties: mutation, Louise certificates, cohomology and point counts.

Exit status is 0 on success, 1 when a check fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .arithmetic.counting import PointCountSample, count_louise, is_suspect, suspect_bound
from .arithmetic.fields import is_prime_power
from .arithmetic.quasipoly import fit_quasi_polynomial, grothendieck_consistency
from .cluster import ExtendedExchangeMatrix, mutate_path, quiver
from .errors import ClusterLabError
from .exactlinalg import is_really_full_rank
from .fixtures import verify_fixtures
from .hodge import HodgeTable, curious_palindrome
from .isolated import isotypic_table
from .quivers import (
    DEFAULT_BUDGET,
    LouiseCertificate,
    No,
    Yes,
    is_mutation_acyclic,
    louise_certificate,
    separating_edges,
    verify_certificate,
)
from .standard import DEFAULT_CAP, poincare_closed, poincare_factored, standard_dims
from .symmetry import build_cover, complete_gsv, cover_degree

OK, CHECK_FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class CheckFailed(Exception):
    pass


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load(path: str, parse, what: str):
    data = _load_json(path)
    try:
        return parse(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path} is not a valid {what}: {exc}") from exc


def _matrix(path: str) -> ExtendedExchangeMatrix:
    return _load(path, ExtendedExchangeMatrix.from_json, "matrix")


def _certificate(path: str) -> LouiseCertificate:
    return _load(path, LouiseCertificate.from_json, "certificate")


def _table(path: str) -> HodgeTable:
    return _load(path, HodgeTable.from_json, "Hodge table")


def _samples(path: str) -> list[PointCountSample]:
    def parse(data):
        if isinstance(data, dict):
            data = data["samples"]
        return [PointCountSample.from_json(s) for s in data]

    return _load(path, parse, "sample list")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _dumps(obj, indent: int = 0) -> str:
    """JSON with flat lists of scalars kept on one line."""
    pad = "  " * (indent + 1)
    if isinstance(obj, dict) and obj:
        items = [f"{pad}{json.dumps(str(k))}: {_dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        items = [pad + _dumps(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj)


def _emit(obj) -> None:
    print(_dumps(obj))


def _find_certificate(b: ExtendedExchangeMatrix, budget: int) -> LouiseCertificate | None:
    cert = louise_certificate(b, budget)
    return cert if isinstance(cert, LouiseCertificate) else None


def _checked_certificate(args, b: ExtendedExchangeMatrix) -> LouiseCertificate | None:
    """The supplied certificate if it verifies, else ``None``; a bad one is a check failure."""
    if not args.certificate:
        return None
    cert = _certificate(args.certificate)
    if not verify_certificate(b, cert):
        raise CheckFailed("certificate does not verify against the matrix")
    return cert


# --- subcommands --------------------------------------------------------------


def cmd_mutate(args) -> int:
    b = _matrix(args.matrix)
    for k in args.at:
        if not 1 <= k <= b.n:
            raise InputError(f"mutation index {k} outside 1..{b.n}")
    _emit(mutate_path(b, args.at).to_json())
    return OK


def cmd_quiver(args) -> int:
    q = quiver(_matrix(args.matrix))
    _emit({"n": q.n, "edges": [[i, j, q.edges[(i, j)]] for i, j in q.edge_list()]})
    return OK


def cmd_separating_edges(args) -> int:
    q = quiver(_matrix(args.matrix))
    sep = separating_edges(q)
    _emit({
        "separating": [list(e) for e in sorted(sep)],
        "non_separating": [list(e) for e in q.edge_list() if e not in sep],
    })
    return OK


def cmd_acyclic(args) -> int:
    verdict = is_mutation_acyclic(_matrix(args.matrix), args.budget)
    if isinstance(verdict, Yes):
        _emit({"verdict": "yes", "path": list(verdict.path)})
    elif isinstance(verdict, No):
        _emit({"verdict": "no", "explored": verdict.explored})
    else:
        _emit({"verdict": "unknown", "expansions": verdict.expansions})
    return OK


def cmd_louise(args) -> int:
    b = _matrix(args.matrix)
    cert = louise_certificate(b, args.budget)
    if not isinstance(cert, LouiseCertificate):
        print(f"no certificate found within {args.budget} expansions", file=sys.stderr)
        return CHECK_FAILED
    text = _dumps(cert.to_json())
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        print(f"certificate with {cert.size()} nodes written to {args.output}")
    else:
        print(text)
    return OK


def cmd_verify_certificate(args) -> int:
    ok = verify_certificate(_matrix(args.matrix), _certificate(args.certificate))
    print("certificate verifies" if ok else "certificate does NOT verify")
    return OK if ok else CHECK_FAILED


def cmd_cover(args) -> int:
    b = _matrix(args.matrix)
    r = build_cover(b, args.d, seed=args.seed)
    _emit({"n": r.n, "d": args.d or cover_degree(b), "rows": r.r.tolist()})
    return OK


def cmd_gsv(args) -> int:
    g = complete_gsv(_matrix(args.matrix), seed=args.seed)
    _emit({"rows": g.bhat.tolist(), "determinant": g.determinant()})
    return OK


def cmd_standard_cohomology(args) -> int:
    b = _matrix(args.matrix)
    cert = _checked_certificate(args, b)
    dims = standard_dims(b, args.cap)
    status = "verified by Louise certificate" if cert else "unverified hypothesis"
    if args.json:
        _emit({"dims": [d for _, d in dims], "status": status})
        return OK
    table = HodgeTable(b.n, b.m, {(k, k): d for k, d in dims})
    print(table.render())
    print(f"local acyclicity: {status}")
    return OK


def cmd_poincare(args) -> int:
    b = _matrix(args.matrix)
    print(poincare_factored(b))
    print(poincare_closed(b))
    return OK


def cmd_isolated_hodge(args) -> int:
    b = _matrix(args.matrix)
    if not quiver(b).is_edgeless():
        raise InputError("isolated-hodge needs a matrix with zero principal part")
    summaries, table = isotypic_table(b.frozen_part)
    if args.render:
        print(table.render())
        return OK
    _emit({
        "table": table.to_json(),
        "components": [
            {
                "g": list(s.g) if s.g is not None else None,
                "lift": [str(x) for x in s.lift] if s.lift is not None else None,
                "j": s.j_size,
                "multiplicity": s.multiplicity,
                "dims": [[k, h] for k, h in sorted(s.dims.items())],
            }
            for s in summaries
        ],
    })
    return OK


def cmd_count_points(args) -> int:
    b = _matrix(args.matrix)
    for q in args.q:
        if not is_prime_power(q):
            raise InputError(f"{q} is not a prime power")
    if args.certificate:
        cert = _certificate(args.certificate)
        if not verify_certificate(b, cert):
            raise CheckFailed("certificate does not verify against the matrix")
    else:
        cert = _find_certificate(b, args.budget)
        if cert is None:
            raise CheckFailed(f"no Louise certificate found within {args.budget} expansions")
    bound = suspect_bound(b)
    out = []
    for q in args.q:
        count = count_louise(b, cert, q, verify=False, threads=args.threads).count
        out.append(PointCountSample(q, count, is_suspect(q, bound)).to_json())
    _emit(out)
    return OK


def cmd_fit(args) -> int:
    fit = fit_quasi_polynomial(
        _samples(args.samples), args.max_modulus, args.max_degree, args.include_suspect
    )
    if args.json:
        _emit(fit.to_json())
    else:
        print(fit)
    return OK


def cmd_check_grothendieck(args) -> int:
    report = grothendieck_consistency(
        _table(args.table),
        _samples(args.samples),
        assume_trivial_characters=args.character_modulus is None,
        character_modulus=args.character_modulus,
    )
    print(report.describe())
    return OK if report else CHECK_FAILED


def cmd_check_table(args) -> int:
    table = _table(args.table)
    print(table.render())
    checks = [("curious palindrome", curious_palindrome(table))]
    if args.matrix:
        b = _matrix(args.matrix)
        if (b.n, b.m) != (table.n, table.m):
            raise InputError("table and matrix have different n, m")
        dims = [d for _, d in standard_dims(b)]
        checks.append(("standard row", dims == table.standard_row()))
        if quiver(b).is_edgeless():
            checks.append(("isotypic table", isotypic_table(b.frozen_part)[1] == table))
        if is_really_full_rank(b.mat):
            cert = _find_certificate(b, DEFAULT_BUDGET)
            if cert is not None:
                samples = [count_louise(b, cert, q, verify=False) for q in (3, 5, 7)]
                checks.append(("signed Hodge sum", bool(grothendieck_consistency(table, samples))))
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return OK if all(ok for _, ok in checks) else CHECK_FAILED


def cmd_verify_fixtures(args) -> int:
    results = verify_fixtures()
    for r in results:
        if args.verbose or not r.ok:
            print(r)
    failed = sum(not r.ok for r in results)
    print(f"{len(results) - failed}/{len(results)} fixture checks passed")
    return CHECK_FAILED if failed else OK


# --- parser -----------------------------------------------------------------


def _env_threads() -> int:
    try:
        return max(1, int(os.environ.get("CLUSTERLAB_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clusterlab", description=__doc__.splitlines()[0])
    threads_help = "worker threads for point counting (default: $CLUSTERLAB_THREADS or 1)"
    parser.add_argument("--threads", type=int, default=None, help=threads_help)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_, matrix=True):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--threads", type=int, default=argparse.SUPPRESS, help=threads_help)
        if matrix:
            p.add_argument("--matrix", required=True, help="matrix JSON file ('-' for stdin)")
        p.set_defaults(func=func)
        return p

    p = add("mutate", cmd_mutate, "mutate a matrix along a path")
    p.add_argument("--at", type=_int_list, required=True, help="mutation indices, e.g. 2 or 1,3,2")
    add("quiver", cmd_quiver, "print the quiver of a matrix")
    add("separating-edges", cmd_separating_edges, "list separating edges")
    p = add("acyclic", cmd_acyclic, "search the mutation class for an acyclic seed")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p = add("louise", cmd_louise, "search for a Louise certificate")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--output", help="write the certificate here instead of stdout")
    p = add("verify-certificate", cmd_verify_certificate, "replay a Louise certificate")
    p.add_argument("--certificate", required=True)
    p = add("cover", cmd_cover, "build a covering matrix R")
    p.add_argument("--d", type=int, default=None, help="cover degree (default: the minimal one)")
    p.add_argument("--seed", type=int, default=0)
    p = add("gsv", cmd_gsv, "complete to a full rank GSV matrix")
    p.add_argument("--seed", type=int, default=0)
    p = add("standard-cohomology", cmd_standard_cohomology, "dimensions of standard forms")
    p.add_argument("--certificate", help="Louise certificate confirming local acyclicity")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest n+m accepted")
    p.add_argument("--json", action="store_true")
    add("poincare", cmd_poincare, "closed-form Poincare polynomial")
    p = add("isolated-hodge", cmd_isolated_hodge, "Hodge table of an isolated variety")
    p.add_argument("--render", action="store_true", help="print the text table only")
    p = add("count-points", cmd_count_points, "count points over finite fields")
    p.add_argument("--q", type=_int_list, required=True, help="field sizes, e.g. 3,5,7")
    p.add_argument("--certificate")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p = add("fit", cmd_fit, "fit a quasi-polynomial to point counts", matrix=False)
    p.add_argument("--samples", required=True)
    p.add_argument("--max-modulus", type=int, default=12)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--include-suspect", action="store_true")
    p.add_argument("--json", action="store_true")
    p = add("check-grothendieck", cmd_check_grothendieck, "compare a table with counts", matrix=False)
    p.add_argument("--table", required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--character-modulus", type=int, default=None,
                   help="only check q = 1 mod this modulus")
    p = add("check-table", cmd_check_table, "render and sanity-check a Hodge table", matrix=False)
    p.add_argument("--table", required=True)
    p.add_argument("--matrix", help="matrix the table claims to describe")
    p = add("verify-fixtures", cmd_verify_fixtures, "replay the bundled reference cases", matrix=False)
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    if args.threads is None:
        args.threads = _env_threads()
    elif args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return BAD_INPUT
    try:
        return args.func(args)
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return CHECK_FAILED
    except (InputError, ClusterLabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
