"""Command-line interface: ``hyperlattice <command> ...``.

Exit status is 0 on success, 1 when a verification fails, 2 for usage
errors and 3 when a request is too large to run.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .binomial_poly import BinomialPolynomial, render
from .cache import CacheError, CachedProvider, ResultCache
from .kappa import brute_force_kappa, check_identity, kappa_top, kappa_type
from .lattice import Partition, partitions_up_to, type_of
from .mobius_chi import ChiPolynomial, TopMobiusTable, chi_from_table, mobius_of_type, top_mobius
from .oracle import InfeasibleError, chi_numeric, count_by_type, enumerate_lattice, mobius_table
from .reproduce import reproduce
from .type_counts import lambda_poly, validate_type

log = logging.getLogger("hyperlattice")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


def _default_threads() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _type_arg(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperlattice", description="Exact counts for the lattice L(n, d) spanned by generic points.")
    p.add_argument("--cache-dir", help="result cache directory (default: $HYPERLATTICE_CACHE or ~/.cache/hyperlattice)")
    p.add_argument("--no-cache", action="store_true", help="neither read nor write the result cache")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def threads(sp):
        sp.add_argument("--threads", type=int, default=_default_threads(), help="worker processes")

    sp = sub.add_parser("lambda", help="number of elements of a type")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--type", type=_type_arg, required=True, help="parts, e.g. 2,1,1")
    sp.add_argument("--checkpoint", help="JSON file for resumable progress")
    sp.add_argument("--json", action="store_true")
    threads(sp)

    sp = sub.add_parser("mobius", help="top Möbius value, or the value on a type")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--type", type=_type_arg)
    sp.add_argument("--json", action="store_true")
    threads(sp)

    sp = sub.add_parser("chi", help="characteristic polynomial")
    sp.add_argument("--d", type=int, required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--arrangement", action="store_true", help="chi of the arrangement (default)")
    g.add_argument("--lattice", action="store_true", help="chi of the lattice")
    sp.add_argument("--json", action="store_true")
    threads(sp)

    sp = sub.add_parser("oracle-verify", help="compare symbolic results with the explicit lattice")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--budget", type=int, default=None)
    threads(sp)

    sp = sub.add_parser("oracle-dump", help="list the elements of the explicit lattice")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--budget", type=int, default=None)

    sp = sub.add_parser("kappa-check", help="subset-counting identity and brute-force join counts")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--all-m", action="store_true", help="sweep m = 1..d+2")
    sp.add_argument("--brute-force", action="store_true", help="also classify subsets in the explicit lattice")

    sp = sub.add_parser("reproduce", help="diff computed tables against the reference data")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--skip-heaviest", action="store_true", help="exclude the long-running d=6 type (1,1,1,1,1,1)")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--checkpoint-dir", help="directory for resumable progress of long counts")
    threads(sp)
    return p


def _provider(args, cache, allow_heavy=False):
    return CachedProvider(cache, threads=getattr(args, "threads", 1), allow_heavy=allow_heavy,
                          checkpoint_dir=getattr(args, "checkpoint_dir", None))


def _emit_poly(poly, as_json: bool) -> None:
    print(poly.to_json() if as_json else render(poly))


def cmd_lambda(args, cache) -> int:
    gamma = validate_type(args.d, args.type)
    payload = cache.get("lambda", args.d, gamma) if cache and not args.checkpoint else None
    if payload is None:
        res = lambda_poly(args.d, gamma, threads=args.threads, checkpoint=args.checkpoint)
        payload = res.to_dict()
        if cache:
            cache.put("lambda", args.d, gamma, payload, elapsed=round(res.elapsed, 3), point_count=res.point_count)
        log.info("%s points, %.2fs", res.point_count, res.elapsed)
    poly = BinomialPolynomial.from_dict(payload["lambda"])
    if args.json:
        print(json.dumps({"d": args.d, "gamma": list(gamma), "lambda": poly.to_dict(),
                          "point_count": payload["point_count"]}, sort_keys=True))
    else:
        print(render(poly))
        print(f"points: {payload['point_count']}", file=sys.stderr)
    return EXIT_OK


def cmd_mobius(args, cache) -> int:
    provider = _provider(args, cache)
    if args.type is None:
        poly = top_mobius(args.d, provider)[args.d]
    else:
        gamma = validate_type(args.d, args.type)
        if args.d + 1 in gamma:
            poly = top_mobius(args.d, provider)[args.d]
        else:
            table = top_mobius(args.d - 1, provider) if args.d else TopMobiusTable([])
            poly = mobius_of_type(args.d, gamma, table)
    _emit_poly(poly, args.json)
    return EXIT_OK


def cmd_chi(args, cache) -> int:
    provider = _provider(args, cache)
    chi = chi_from_table(args.d, top_mobius(args.d, provider), provider)
    if not args.lattice:
        chi = ChiPolynomial(chi.coeffs[1:])
    print(json.dumps(chi.to_dict(), sort_keys=True) if args.json else chi.render())
    return EXIT_OK


def cmd_oracle_verify(args, cache) -> int:
    kw = {} if args.budget is None else {"budget": args.budget}
    lat = enumerate_lattice(args.n, args.d, workers=args.threads, **kw)
    provider = _provider(args, cache)
    n, d = args.n, args.d
    failures = []
    counts = count_by_type(lat)
    for gamma in partitions_up_to(d):
        want = counts.get(gamma, 0)
        got = provider(d, gamma)(n) if gamma else 1
        if got != want:
            failures.append(f"lambda {gamma}: symbolic {got}, explicit {want}")
    table = top_mobius(d, provider)
    mu = mobius_table(lat)
    for el, value in zip(lat.elements, mu):
        gamma = type_of(el, d)
        sym = table[d](n) if d + 1 in gamma else mobius_of_type(d, gamma, table)(n)
        if sym != value:
            failures.append(f"mobius {el}: symbolic {sym}, explicit {value}")
            break
    num = chi_numeric(lat)
    chi = chi_from_table(d, table, provider)
    if chi.evaluate(n) != num.lattice:
        failures.append(f"chi: symbolic {chi.evaluate(n)}, explicit {num.lattice}")
    for line in failures:
        print(line)
    print(f"L({n},{d}): {len(lat)} elements, {'fail' if failures else 'pass'}")
    return EXIT_FAIL if failures else EXIT_OK


def cmd_oracle_dump(args, cache) -> int:
    kw = {} if args.budget is None else {"budget": args.budget}
    lat = enumerate_lattice(args.n, args.d, **kw)
    mu = mobius_table(lat)
    rows = [(str(el), r, type_of(el, args.d), m) for el, r, m in zip(lat.elements, lat.ranks, mu)]
    if args.json:
        print(json.dumps([{"element": e, "rank": r, "type": list(g), "mobius": m} for e, r, g, m in rows], indent=1))
    else:
        for e, r, g, m in rows:
            print(f"{e}\trank={r}\ttype={g}\tmu={m}")
    return EXIT_OK


def cmd_kappa_check(args, cache) -> int:
    if args.m is None and not args.all_m:
        raise argparse.ArgumentTypeError("give --m or --all-m")
    n, d = args.n, args.d
    if not 0 <= d < n:
        raise ValueError(f"need n > d >= 0, got n={n}, d={d}")
    provider = _provider(args, cache)
    ms = range(1, d + 3) if args.all_m else [args.m]
    ok = True
    lat = enumerate_lattice(n, d) if args.brute_force else None
    for m in ms:
        rep = check_identity(n, d, m, provider)
        for line in rep.lines():
            print(line)
        ok &= rep.passed
        if lat is not None:
            bf = brute_force_kappa(n, d, m, lat)
            bad = [g for g, vals in bf.by_type().items() if g and vals != {kappa_type(n, d, m, g, provider)}]
            top_ok = bf.top == kappa_top(n, d, m, provider)
            print(f"  brute force: {'PASS' if not bad and top_ok else 'FAIL'}"
                  + (f" (types {', '.join(map(str, bad))})" if bad else "")
                  + ("" if top_ok else f" (top {bf.top} vs {kappa_top(n, d, m, provider)})"))
            ok &= not bad and top_ok
    return EXIT_OK if ok else EXIT_FAIL


def cmd_reproduce(args, cache) -> int:
    if args.d == 6 and not args.skip_heaviest:
        log.warning("d=6 includes the long-running type (1,1,1,1,1,1); pass --skip-heaviest to exclude it")
    provider = _provider(args, cache, allow_heavy=not args.skip_heaviest)
    rep = reproduce(args.d, provider, skip_heaviest=args.skip_heaviest, point_counts=provider.point_counts)
    sys.stdout.write(rep.to_json() if args.json else rep.text())
    return EXIT_OK if rep.ok else EXIT_FAIL


COMMANDS = {
    "lambda": cmd_lambda,
    "mobius": cmd_mobius,
    "chi": cmd_chi,
    "oracle-verify": cmd_oracle_verify,
    "oracle-dump": cmd_oracle_dump,
    "kappa-check": cmd_kappa_check,
    "reproduce": cmd_reproduce,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be positive")
    cache = None if args.no_cache else ResultCache(args.cache_dir)
    try:
        if cache:
            cache.acquire()
        return COMMANDS[args.command](args, cache)
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except CacheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if cache:
            cache.release()


if __name__ == "__main__":
    sys.exit(main())
