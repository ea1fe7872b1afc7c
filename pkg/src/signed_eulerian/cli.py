"""Command-line front end.

Exit codes: 0 pass, 1 verification failure or oracle mismatch, 2 usage error,
3 time budget exceeded.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import decimal
import hashlib
import json
import os
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__
from .clt import family_table, moments, normality_csv, normality_diagnostic, verify_moment_matching
from .combinatorics import B_CAP, EnumerationCapError
from .eulerian import brute_force_table, table
from .identities import (
    DEFAULT_BOUND, DEFAULT_ORDER, VerificationReport, verify_b_minus_one,
    verify_desarmenien_foata, verify_fnp_product, verify_necklace_product, verify_recurrences,
    verify_reiner_delta, verify_reiner_eta, verify_series_a, verify_series_b,
    verify_sign_descent_series, verify_symmetries, verify_type_b_series,
)
from .roots import FAMILIES as ROOT_FAMILIES, certify_conjecture_sweep, interlacing_sweep
from .shuffles import (
    ShuffleSpec, eigenfunction_sum, exact_descent_histogram, exact_sign_probability, simulate,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
SEED_ENV = "SIGNED_EULERIAN_SEED"
DEFAULT_SEED = 20240917
SCHEMA_VERSION = 1

IDENTITIES = ("seriesA", "seriesApm", "seriesB", "seriesBpm", "necklace", "desarmenien-foata",
              "b-minus-one", "reiner-delta", "reiner-eta", "fnp-product", "symmetry",
              "recurrence", "moment-match", "eigenfunction")


class UsageError(Exception):
    pass


def rational(q) -> dict:
    """Lossless "p/q" plus a 15-significant-digit decimal."""
    q = Fraction(q)
    with decimal.localcontext() as ctx:
        ctx.prec = 15
        dec = decimal.Decimal(q.numerator) / decimal.Decimal(q.denominator)
    return {"fraction": f"{q.numerator}/{q.denominator}", "decimal": format(dec, ".15g"),
            "numerator": str(q.numerator), "denominator": str(q.denominator)}


@dataclass
class RunManifest:
    command_line: list
    config: dict
    seed: int | None
    tool_version: str
    timestamp: str
    output_digest: str = ""

    @staticmethod
    def digest(payload: str) -> str:
        return "sha256:" + hashlib.sha256(payload.encode()).hexdigest()

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class Outcome:
    payload: str
    code: int = EXIT_OK
    seed: int | None = None


# ---------------------------------------------------------------------------
# commands

def cmd_table(args) -> Outcome:
    if args.n <= 0:
        raise UsageError("n must be a positive integer")
    t = table(args.group, args.n, args.variant)
    code = EXIT_OK
    verdict = None
    if args.oracle:
        verdict = "match" if brute_force_table(args.group, args.n, args.variant) == t else "mismatch"
        code = EXIT_OK if verdict == "match" else EXIT_FAIL
    if args.format == "json":
        d = {"schema": f"table-v{SCHEMA_VERSION}", **t.to_json()}
        if verdict:
            d["oracle"] = verdict
        return Outcome(json.dumps(d, sort_keys=True) + "\n", code)
    body = t.to_csv() if args.format == "csv" else ",".join(map(str, t.counts)) + "\n"
    if verdict:
        body += f"oracle: {verdict}\n"
    return Outcome(body, code)


def _span(args, default_lo: int, default_hi: int) -> range:
    if args.n is not None:
        if args.n <= 0:
            raise UsageError("--n must be positive")
        return range(args.n, args.n + 1)
    return range(default_lo, default_hi + 1)


def _combine(name: str, reports: list[VerificationReport], params: dict) -> dict:
    failed = next((r for r in reports if not r.passed), None)
    out = {"identity": name, "passed": failed is None, "params": params,
           "checked": sum(r.checked for r in reports)}
    if failed is not None:
        d = failed.to_json()
        out["mismatch"] = {"params": d["params"], **d["mismatch"]}
    return out


def cmd_verify(args) -> Outcome:
    name, order, bound = args.identity, args.order, args.bound
    if order < 1 or bound < 0:
        raise UsageError("--order must be >= 1 and --bound >= 0")
    params = {"order": order, "bound": bound}
    if name in ("seriesA", "seriesApm", "seriesB", "seriesBpm", "desarmenien-foata", "b-minus-one"):
        fn = {"seriesA": verify_series_a, "seriesApm": verify_sign_descent_series,
              "seriesB": verify_series_b, "seriesBpm": verify_type_b_series}.get(name)
        ns = _span(args, 1, 16)
        params["n"] = [ns[0], ns[-1]]
        if fn is not None:
            reports = [fn(n, bound) for n in ns]
        elif name == "desarmenien-foata":
            reports = [verify_desarmenien_foata(n) for n in ns]
        else:
            reports = [verify_b_minus_one(n) for n in ns]
        result = _combine(name, reports, params)
    elif name in ("necklace", "fnp-product"):
        ks = _span(args, 1, 10 if name == "necklace" else 6)
        params["k"] = [ks[0], ks[-1]]
        fn = verify_necklace_product if name == "necklace" else verify_fnp_product
        result = _combine(name, [fn(k, order) for k in ks], params)
    elif name in ("reiner-delta", "reiner-eta"):
        top = args.n if args.n is not None else 6
        if top > B_CAP:
            raise EnumerationCapError("B", top, B_CAP)
        params["n_max"] = top
        fn = verify_reiner_delta if name == "reiner-delta" else verify_reiner_eta
        result = _combine(name, [fn(top)], params)
    elif name == "symmetry":
        top = args.n if args.n is not None else 40
        params.update(a_max=top, b_max=min(top, 30), a_enum=min(top, 8), b_enum=min(top, 5))
        result = _combine(name, [verify_symmetries(top, min(top, 30), min(top, 8), min(top, 5))], params)
    elif name == "recurrence":
        top = args.n if args.n is not None else 40
        params.update(a_max=top, b_max=min(top, 30))
        result = _combine(name, [verify_recurrences(top, min(top, 30))], params)
    elif name == "moment-match":
        top = args.n if args.n is not None else 30
        rep = verify_moment_matching(top, args.r)
        result = rep.to_json()
    elif name == "eigenfunction":
        ns = _span(args, 1, 8)
        params.update(n=[ns[0], ns[-1]], a=args.param)
        if args.param < 1:
            raise UsageError("--param must be >= 1")
        ok = True
        mismatch = None
        for n in ns:
            got, want = eigenfunction_sum(n, args.param), Fraction(1, args.param ** (n // 2))
            if got != want and ok:
                ok = False
                mismatch = {"index": n, "expected": rational(want)["fraction"],
                            "actual": rational(got)["fraction"]}
        result = {"identity": name, "passed": ok, "params": params, "checked": len(ns)}
        if mismatch:
            result["mismatch"] = mismatch
    else:  # argparse restricts choices
        raise UsageError(f"unknown identity {name!r}")
    result["schema"] = f"verify-v{SCHEMA_VERSION}"
    return Outcome(json.dumps(result, sort_keys=True) + "\n", EXIT_OK if result["passed"] else EXIT_FAIL)


def cmd_roots(args) -> Outcome:
    family = args.family.replace("−", "-")
    if family not in ROOT_FAMILIES:
        raise UsageError(f"family must be one of {ROOT_FAMILIES}")
    if args.max_n < 1:
        raise UsageError("--max-n must be positive")
    sweep = certify_conjecture_sweep(family, args.max_n, budget_seconds=args.budget, workers=args.workers)
    code = EXIT_OK
    if not sweep.complete:
        summary = f"budget exceeded after n={sweep.last_certified}"
        code = EXIT_BUDGET
    elif sweep.all_real:
        summary = f"all_real for {family} up to n={args.max_n}"
    else:
        bad = [c.label for c in sweep.certificates if not c.all_real]
        summary = f"not all real ({', '.join(bad)})"
        code = EXIT_FAIL
    probe = interlacing_sweep(family[0], args.max_n) if args.interlacing else None
    if args.format == "json":
        d = {"schema": f"roots-v{SCHEMA_VERSION}", "family": family, "max_n": args.max_n,
             "complete": sweep.complete, "summary": summary,
             "certificates": [c.to_json() for c in sweep.certificates]}
        if probe is not None:
            d["interlacing"] = {"pair": f"{family[0]}+/{family[0]}-",
                                "results": {str(n): v for n, v in probe.results.items()},
                                "smallest_not_interlacing": probe.first_failure}
        return Outcome(json.dumps(d, sort_keys=True) + "\n", code)
    lines = []
    for c in sweep.certificates:
        n = c.label.rsplit("=", 1)[-1]
        lines.append(f"{family} n={n} {c.verdict} degree={c.degree} "
                     f"zero_roots={c.zero_root_multiplicity} distinct_nonzero_real={c.distinct_real_roots_counted}")
    lines.append(f"summary: {summary}")
    if probe is not None:
        for n, v in probe.results.items():
            lines.append(f"interlacing {family[0]}+ vs {family[0]}- n={n} {v}")
        first = probe.first_failure
        lines.append(f"smallest not_interlacing n: {first if first is not None else 'none found'}")
    return Outcome("\n".join(lines) + "\n", code)


def cmd_shuffle(args) -> Outcome:
    variant = {"gsr": "gsr", "typeb": "type_b", "shelf": "shelf"}[args.variant]
    if variant == "type_b" and args.param % 2 == 0:
        raise UsageError("type B shuffles need an odd --param")
    try:
        spec = ShuffleSpec(variant, args.n, args.param, args.iters)
    except ValueError as e:
        raise UsageError(str(e)) from e
    exact = exact_sign_probability(spec)
    out = {"schema": f"shuffle-v{SCHEMA_VERSION}", **spec.to_json(),
           "exact_probability": rational(exact), "trials": None, "seed": None,
           "positive_fraction": None, "z_score": None, "histogram": None}
    seed = None
    if not args.exact_only and variant != "shelf":
        seed = args.seed
        res = simulate(spec, args.trials, seed, workers=args.workers)
        exact_hist = exact_descent_histogram(spec)
        out.update(trials=res.trials, seed=res.seed, rng=res.rng,
                   positive_fraction=res.positive_fraction, z_score=res.z_score,
                   histogram={str(d): {"count": res.descent_of_inverse_histogram.get(d, 0),
                                       "exact": rational(p)["fraction"]}
                              for d, p in sorted(exact_hist.items())})
    elif variant == "shelf":
        out["note"] = "shelf shuffler: exact formula only"
    return Outcome(json.dumps(out, sort_keys=True) + "\n", EXIT_OK, seed)


def cmd_moments(args) -> Outcome:
    rows = [moments(family_table(args.family, n), args.r, args.convention).to_json() for n in args.n]
    return Outcome(json.dumps({"schema": f"moments-v{SCHEMA_VERSION}", "rows": rows}, sort_keys=True) + "\n")


def cmd_normality(args) -> Outcome:
    return Outcome(normality_csv(normality_diagnostic(args.family, args.n)))


# ---------------------------------------------------------------------------
# parser

def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw, 0)
    except ValueError:
        raise SystemExit(f"error: {SEED_ENV}={raw!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signed-eulerian",
                                description="Signed Eulerian numbers: tables, identities, roots, shuffles.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--out", help="write the payload here instead of stdout")
    p.add_argument("--manifest", help="write a run manifest (JSON) to this path")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="print a row of an Eulerian triangle")
    t.add_argument("group", choices=["A", "B"])
    t.add_argument("n", type=int)
    t.add_argument("variant", choices=["all", "positive", "negative"])
    t.add_argument("--format", choices=["row", "csv", "json"], default="row")
    t.add_argument("--oracle", action="store_true", help="also enumerate the group and compare")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="check an identity exactly")
    v.add_argument("identity", choices=IDENTITIES)
    v.add_argument("--n", type=int, help="size parameter: n, or the alphabet size k for necklace and "
                   "fnp-product, or the upper bound for sweeps; omitted means the default range")
    v.add_argument("--order", type=int, default=DEFAULT_ORDER, help="u-series truncation order")
    v.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="largest t-coefficient index checked")
    v.add_argument("--r", type=int, default=5, help="largest moment order for moment-match")
    v.add_argument("--param", type=int, default=2, help="shuffle parameter a for eigenfunction")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("roots", help="certify real-rootedness by Sturm sequences")
    r.add_argument("family", help="A+, A-, B+ or B-")
    r.add_argument("--max-n", type=int, default=10)
    r.add_argument("--interlacing", action="store_true", help="also probe positive/negative interlacing")
    r.add_argument("--budget", type=float, default=None, help="wall-clock budget in seconds")
    r.add_argument("--workers", type=int, default=1)
    r.add_argument("--format", choices=["text", "json"], default="text")
    r.set_defaults(func=cmd_roots)

    s = sub.add_parser("shuffle", help="sign probability after riffle or shelf shuffles")
    s.add_argument("variant", choices=["gsr", "typeb", "shelf"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--param", type=int, required=True, help="a for riffles, m for the shelf shuffler")
    s.add_argument("--iters", type=int, default=1)
    s.add_argument("--trials", type=int, default=200_000)
    s.add_argument("--seed", type=lambda x: int(x, 0), default=None,
                   help=f"RNG seed (default: ${SEED_ENV} or {DEFAULT_SEED})")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--exact-only", action="store_true")
    s.set_defaults(func=cmd_shuffle)

    m = sub.add_parser("moments", help="exact moments of a distribution row")
    m.add_argument("family", help="A, A+, A-, B, B+ or B-")
    m.add_argument("n", type=int, nargs="+")
    m.add_argument("--r", type=int, default=2)
    m.add_argument("--convention", choices=["k", "des"], default="k")
    m.set_defaults(func=cmd_moments)

    c = sub.add_parser("normality", help="Kolmogorov distance to the normal law (CSV)")
    c.add_argument("family", help="A, A+, A-, B, B+ or B-")
    c.add_argument("n", type=int, nargs="+")
    c.set_defaults(func=cmd_normality)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", "absent") is None:
        args.seed = _default_seed()
    try:
        outcome = args.func(args)
    except (UsageError, EnumerationCapError, ValueError) as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(outcome.payload)
    else:
        sys.stdout.write(outcome.payload)
    if args.manifest:
        config = {k: v for k, v in vars(args).items() if k not in ("func", "out", "manifest")}
        man = RunManifest(argv, config, getattr(args, "seed", None), __version__,
                          _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
                          RunManifest.digest(outcome.payload))
        with open(args.manifest, "w") as fh:
            json.dump(man.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
