"""sbgrs command line.

Exit codes: 0 success, 1 usage or parse error, 2 attempt/budget exhaustion,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import kernels
from .appendix import compare_design, subcase
from .codec import (BundleFormatError, CodeBundle, construct_code, det_identity_check, encode,
                    generator_matrix, lagrange_basis, loads, rank, root_polys, verify_mds,
                    verify_sbgm, zero_pattern_matches)
from .support import build_W, verify_claims12
from .xi import STRATEGIES, AttemptsExhausted, BoundViolated, BudgetExceeded, claim3_oracle, xi_eval

EXIT_OK, EXIT_USAGE, EXIT_EXHAUSTED, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_bundle(path: str) -> CodeBundle:
    try:
        with open(path) as fh:
            return loads(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except BundleFormatError as exc:
        raise UsageError(str(exc)) from exc


def _err(msg: str) -> None:
    print(f"sbgrs: {msg}", file=sys.stderr)


# --- commands ------------------------------------------------------------------

def cmd_construct(args) -> int:
    if args.k > args.n:
        raise UsageError(f"k exceeds n ({args.k} > {args.n})")
    if args.k < 1:
        raise UsageError("k must be >= 1")
    try:
        bundle = construct_code(args.n, args.k, q=args.q, seed=args.seed, strategy=args.strategy,
                                unsafe_bound=args.unsafe_bound, max_attempts=args.max_attempts)
    except BoundViolated as exc:
        raise UsageError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _write(bundle.dumps(args.format), args.output)
    return EXIT_OK


def verification_checks(bundle: CodeBundle, mds_limit: int = 10 ** 6) -> list[tuple[str, bool]]:
    gf, n, k = bundle.field, bundle.n, bundle.k
    pts = bundle.points
    checks = [("points-distinct", len(set(pts)) == n)]
    if 2 <= k < n:
        built = build_W(n, k)
        checks.append(("W-is-construction", [list(r) for r in built.W] == [list(r) for r in bundle.W]))
        claims = verify_claims12(bundle.design, built.profile)
        checks.append(("claims12", claims.ok))
        expected_G = generator_matrix(gf, root_polys(gf, pts, bundle.design), pts)
    elif k == 1:
        expected_G = [[1] * n]
    else:
        expected_G = generator_matrix(gf, lagrange_basis(gf, pts), pts) if checks[0][1] else None
    checks.append(("G-matches-points", expected_G == [list(r) for r in bundle.G]))
    checks.append(("sbgm", verify_sbgm(bundle.G, n, k).ok))
    if 2 <= k < n:
        checks.append(("zero-pattern", zero_pattern_matches(bundle)))
    xi = xi_eval(gf, bundle.design, pts)
    checks.append(("xi-nonzero", xi != 0))
    if bundle.certificate.attempts:
        checks.append(("xi-matches-certificate", xi == bundle.certificate.xi))
    checks.append(("det-identity", det_identity_check(bundle)))
    checks.append(("rank", rank(gf, bundle.G) == k))
    checks.append(("mds", verify_mds(gf, bundle.G, limit=mds_limit).ok))
    return checks


def cmd_verify(args) -> int:
    bundle = _read_bundle(args.input)
    checks = verification_checks(bundle)
    failed = [name for name, ok in checks if not ok]
    if args.format == "json":
        print(json.dumps({"ok": not failed, "checks": dict(checks), "failed": failed}, indent=2))
    else:
        for name, ok in checks:
            print(f"{'PASS' if ok else 'FAIL'} {name}")
    if failed:
        _err(f"verification failed: {', '.join(failed)}")
        return EXIT_VERIFY
    return EXIT_OK


def _parse_message(text: str, bundle: CodeBundle) -> list[int]:
    try:
        msg = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad message {text!r}") from exc
    if len(msg) != bundle.k:
        raise UsageError(f"message has {len(msg)} symbols, k = {bundle.k}")
    if any(not 0 <= m < bundle.field.q for m in msg):
        raise UsageError(f"message symbols must lie in [0, {bundle.field.q})")
    return msg


def cmd_encode(args) -> int:
    bundle = _read_bundle(args.input)
    msg = _parse_message(args.message, bundle)
    print(",".join(map(str, encode(bundle, msg))))
    return EXIT_OK


def oracle_report(n: int, k: int) -> tuple[dict, int]:
    if not 2 <= k < n:
        raise UsageError("oracle needs n > k >= 2")
    design = build_W(n, k)
    prof = design.profile
    report = {"n": n, "k": k, "a": prof.a, "r": prof.r, "m": prof.m,
              "case": prof.case, "subcase": subcase(prof)}
    code = EXIT_OK
    if prof.case != "DisjointBlocks":
        app = compare_design(design)
        report.update({"t0": prof.t0, "lambda": {str(j): v for j, v in prof.lam.items()},
                       "lambda1": design.lambda1, "theta": list(prof.theta),
                       "appendix_checks": dict(app.checks)})
        if not app.ok:
            code = EXIT_VERIFY
        try:
            c3 = claim3_oracle(design)
            report["claim3"] = {"count": c3.count, "sigma": list(c3.sigma or ()),
                                "sigma_is_reversal": c3.sigma_is_reversal,
                                "X_matches_lambda": c3.X_matches_lambda}
            if not c3.ok:
                code = EXIT_VERIFY
        except BudgetExceeded as exc:
            report["claim3"] = {"error": str(exc)}
            if code == EXIT_OK:
                code = EXIT_EXHAUSTED
    claims = verify_claims12(design)
    report["claims12"] = claims.ok
    if not claims.ok:
        code = EXIT_VERIFY
    return report, code


def cmd_oracle(args) -> int:
    report, code = oracle_report(args.n, args.k)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        for key, val in report.items():
            print(f"{key}: {val}")
    if code == EXIT_EXHAUSTED:
        _err(report["claim3"]["error"])
    return code


def vandermonde(gf, points, k) -> list[list[int]]:
    return [[gf.pow(a, i) for a in points] for i in range(k)]


def _loads(G) -> list[int]:
    return [sum(1 for row in G if row[j]) for j in range(len(G[0]))]


def bench_stats(bundle: CodeBundle, batch: int = 10_000, seed: int = 0) -> dict:
    gf = bundle.field
    loads_ = _loads(bundle.G)
    vdm = vandermonde(gf, bundle.points, bundle.k)
    vloads = _loads(vdm)
    rng = random.Random(seed)
    msgs = [[rng.randrange(gf.q) for _ in range(bundle.k)] for _ in range(batch)]
    t = time.perf_counter()
    kernels.encode_batch(gf, bundle.G, msgs)
    elapsed = time.perf_counter() - t
    return {
        "backend": kernels.backend(),
        "column_loads": loads_,
        "max_load": max(loads_),
        "min_load": min(loads_),
        "load_spread": max(loads_) - min(loads_),
        "max_min_ratio": max(loads_) / min(loads_) if min(loads_) else None,
        "total_load": sum(loads_),
        "vandermonde": {
            "column_loads": vloads,
            "load_spread": max(vloads) - min(vloads),
            "max_load": max(vloads),
            "total_load": sum(vloads),
        },
        "encodes": batch,
        "seconds": elapsed,
        "encodes_per_second": batch / elapsed if elapsed > 0 else None,
    }


def cmd_bench(args) -> int:
    bundle = _read_bundle(args.input)
    print(json.dumps(bench_stats(bundle, args.batch, args.seed), indent=2))
    return EXIT_OK


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sbgrs", description="Sparsest and balanced GRS generator matrices")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build a code and print its bundle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, help="field size (default: smallest prime power >= n + ceil(k(k-1)/n))")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=STRATEGIES, default="randomized")
    p.add_argument("--max-attempts", type=int, default=50_000)
    p.add_argument("--unsafe-bound", action="store_true",
                   help="allow q below n + ceil(k(k-1)/n)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="re-check a bundle")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("encode", help="encode one message")
    p.add_argument("input")
    p.add_argument("--message", "-m", required=True, help="comma-separated k symbols")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("oracle", help="closed-form and uniqueness checks for the W construction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="column loads and encode throughput")
    p.add_argument("input")
    p.add_argument("--batch", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except (AttemptsExhausted, BudgetExceeded) as exc:
        _err(str(exc))
        return EXIT_EXHAUSTED


if __name__ == "__main__":
    sys.exit(main())
