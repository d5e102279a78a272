"""Command-line front end: ``python -m multiparity <command> ...``.

Exit codes: 0 success/verified, 1 invalid parameters, 2 mathematical
inconsistency or mismatch, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import density, identities
from .errors import InsufficientDegree, InvalidParams
from .etaq import multipartition_series
from .reduce import build_certificate, reverify_certificate

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH, EXIT_IO = 0, 1, 2, 3


def _env_int(name):
    value = os.environ.get(name)
    return int(value) if value else None


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _non_negative(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _int_list(text):
    return [_non_negative(p) for p in text.split(",") if p.strip()]


def _emit(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_series(args) -> int:
    s = multipartition_series(args.t, args.n, method=args.method)
    if args.format == "sparse":
        out = {"t": args.t, **s.to_sparse()}
    else:
        out = {"t": args.t, "trunc_degree": s.trunc_degree, "hex": s.to_hex()}
    _emit(_dump(out), args.output)
    return EXIT_OK


def cmd_identity(args) -> int:
    if args.check:
        with open(args.check) as fh:
            rec = json.load(fh)
        params, sol = identities.identity_from_record(rec)
        degree = args.verify or sol.verify_degree or identities.default_verify_degree(sol.fit_degree)
        report = identities.verify_identity(params, sol, degree)
        print(f"identity a={params.a} t={params.t}: {report}", file=sys.stderr)
        return EXIT_OK if report.verified else EXIT_MISMATCH

    if args.a is None or args.t is None:
        raise InvalidParams("identity needs --a and --t (or --check FILE)")
    identities.validate_params(args.a, args.t)
    params, sol, report = identities.solve_and_verify(args.a, args.t, args.fit, args.verify)
    _emit(_dump(identities.identity_record(params, sol)), args.output)
    print(f"identity a={params.a} t={params.t} [{sol.status.value}]: {report}", file=sys.stderr)
    ok = report.verified and sol.status is not identities.SolveStatus.INCONSISTENT
    return EXIT_OK if ok else EXIT_MISMATCH


def _density_job(job):
    t, x, checkpoints = job
    return density.odd_density_paths(t, x, checkpoints)


def cmd_density(args) -> int:
    jobs = [(t, args.x, args.checkpoints) for t in args.t]
    if args.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_density_job, jobs))
    else:
        results = [_density_job(j) for j in jobs]
    buf = io.StringIO()
    density.write_density_csv([est for per_t in results for est in per_t], buf)
    _emit(buf.getvalue(), args.output)
    for per_t in results:
        if len({est.checkpoints for est in per_t}) > 1:
            print(f"t={per_t[0].t}: computation paths disagree", file=sys.stderr)
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_certificate(args) -> int:
    if args.check:
        with open(args.check) as fh:
            text = fh.read()
        again = reverify_certificate(json.loads(text)).to_json()
        same = again == text
        print(f"certificate {'re-verified' if same else 'does NOT re-verify'}", file=sys.stderr)
        return EXIT_OK if same else EXIT_MISMATCH
    if args.a is None:
        raise InvalidParams("certificate needs --a (or --check FILE)")
    cert = build_certificate(
        args.a,
        verify_degree=args.verify,
        fit_degree=args.fit,
        prime_choice=args.prime_choice,
        workers=args.workers,
        mechanize_base=args.mechanize_base,
    )
    _emit(cert.to_json(), args.output)
    print(f"certificate A={args.a}: {cert.status.value}", file=sys.stderr)
    return EXIT_OK if cert.status.value == "Complete" else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiparity",
        description="Multipartition parities, mod-2 identities, odd densities and reduction certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    default_verify = _env_int("MULTIPARITY_VERIFY_DEGREE") or identities.DEFAULT_VERIFY_DEGREE
    default_fit = _env_int("MULTIPARITY_FIT_DEGREE")

    p = sub.add_parser("series", help="p_t(n) mod 2 for n <= N")
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--n", type=_non_negative, required=True)
    p.add_argument("--format", choices=("sparse", "hex"), default="sparse")
    p.add_argument("--method", choices=("product", "inversion"), default="product")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("identity", help="solve and verify the identity for (a, t)")
    p.add_argument("--a", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--fit", type=_positive, default=default_fit,
                   help="fit window degree (default: unknowns + 64)")
    p.add_argument("--verify", type=_positive, default=None,
                   help=f"verification degree (default: max(50*fit, {default_verify}))")
    p.add_argument("--check", metavar="FILE", help="re-verify a stored identity record")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("density", help="odd-count scan as CSV")
    p.add_argument("--t", type=_positive, nargs="+", required=True)
    p.add_argument("--x", type=_non_negative, required=True)
    p.add_argument("--checkpoints", type=_int_list, default=None)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("certificate", help="reduction certificate for A")
    p.add_argument("--a", type=_positive)
    p.add_argument("--verify", type=_positive, default=default_verify)
    p.add_argument("--fit", type=_positive, default=default_fit)
    p.add_argument("--prime-choice", choices=("largest", "smallest"), default="largest")
    p.add_argument("--mechanize-base", action="store_true",
                   help="also reduce the base nodes 5 and 9 with verified identities")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--check", metavar="FILE", help="re-verify a stored certificate")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_certificate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        return args.func(args)
    except (InvalidParams, InsufficientDegree, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
