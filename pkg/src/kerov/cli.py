"""Command-line interface.

Exit codes: 0 ok, 2 usage or precondition error, 3 cross-method mismatch,
4 theorem violation (divisibility or fit inconsistency), 5 underdetermined fit.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .algebra import CumulantPoly, Family, NotDivisible, homogeneous_part
from .cache import NullCache, PolyCache
from .cumulants import sigma
from .diagrams import YoungDiagram, kerov_side, normalized_character
from .factorizations import DEFAULT_BOUND, brute_kerov
from .goulden_rattan import gr_genus_part
from .lassalle import Inconsistent, NegativeCoefficient, Underdetermined, divisibility_check, is_prime, lassalle_report
from .partitions import format_rational

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3
EXIT_VIOLATION = 4
EXIT_UNDERDETERMINED = 5


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _sub(x) -> str:
    x = str(x)
    return x if len(x) == 1 else "{" + x + "}"


def _render(poly: CumulantPoly, fmt: str, lhs: str | None = None) -> str:
    if fmt == "json":
        return _dump(poly.to_json())
    if fmt == "latex":
        body = poly.to_latex()
        return f"{lhs} = {body}" if lhs else body
    return poly.to_text()


def _compute(k: int) -> list:
    return sigma(k).poly.to_json()


def kerov_polys(ks, cache, jobs: int = 1) -> dict[int, CumulantPoly]:
    """``K_k`` for every requested ``k``, through the cache, optionally in parallel."""
    out: dict[int, CumulantPoly] = {}
    todo = []
    for k in ks:
        hit = cache.get(k)
        if hit is None:
            todo.append(k)
        else:
            out[k] = hit
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for k, data in zip(todo, pool.map(_compute, todo)):
                out[k] = CumulantPoly.from_json(Family.FREE, data)
    else:
        for k in todo:
            out[k] = sigma(k).poly
    for k in todo:
        cache.put(k, out[k])
    cache.save()
    return out


def _positive(name: str, value: int) -> None:
    if value < 1:
        raise UsageError(f"--{name} must be a positive integer, got {value}")


def cmd_poly(args, cache) -> int:
    _positive("k", args.k)
    poly = kerov_polys([args.k], cache)[args.k]
    print(_render(poly, args.format, f"\\Sigma_{_sub(args.k)}"))
    return EXIT_OK


def cmd_genus(args, cache) -> int:
    _positive("k", args.k)
    k, g = args.k, args.g
    d = k + 1 - 2 * g
    if g < 0 or d < 0:
        raise UsageError(f"genus {g} is out of range for k={k}")
    if args.method in ("gr", "both") and (g < 1 or k < 2 * g - 1):
        raise UsageError(f"the Goulden-Rattan formula needs g >= 1 and k >= 2g - 1, got k={k}, g={g}")
    product = gr = None
    if args.method in ("product", "both"):
        product = homogeneous_part(kerov_polys([k], cache)[k], d)
    if args.method in ("gr", "both"):
        gr = gr_genus_part(k, g)
    result = product if product is not None else gr
    if args.format == "json":
        print(_dump({"k": k, "g": g, "degree": d, "method": args.method, "poly": result.to_json()}))
    else:
        print(_render(result, args.format, f"K_{{{k},{d}}}"))
    if product is not None and gr is not None and product != gr:
        print(f"mismatch: product formula gives {product}, Goulden-Rattan gives {gr}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_fit(args, cache) -> int:
    g = args.g
    if g < 1:
        raise UsageError("--g must be at least 1")
    if args.kmax < 2 * g + 2:
        raise UsageError(f"--kmax must be at least 2g+2 = {2 * g + 2}")
    k_range = list(range(2 * g + 1, args.kmax + 1))
    polys = kerov_polys(k_range, cache, args.jobs)
    try:
        report = lassalle_report(g, k_range, args.basis, polys)
    except Inconsistent as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except Underdetermined as exc:
        print(f"underdetermined: {exc}", file=sys.stderr)
        return EXIT_UNDERDETERMINED
    if args.format == "text":
        print(f"g={report.g} basis={report.basis} k={k_range[0]}..{k_range[-1]}")
        print(f"fitted: {report.fitted}")
        print(f"degree {report.fitted.degree} (bound {report.degree_bound}), "
              f"{report.equations_used} equations used, {report.residual_equations_checked} residual checked, "
              f"consistent={str(report.consistent).lower()}")
    else:
        print(_dump(report.to_json()))
    return EXIT_OK if report.consistent else EXIT_VIOLATION


def cmd_divcheck(args, cache) -> int:
    p = args.p
    if p % 2 == 0 or not is_prime(p):
        raise UsageError(f"--p must be an odd prime, got {p}")
    polys = kerov_polys([p - 1, p, p + 1], cache)
    labels = (f"(S{p} - R{p + 1} + 2*R2)/{p}", f"(S{p - 1} - R{p})/{p}", f"(S{p + 1} - R{p + 2} + R3)/{p}")
    try:
        quotients = divisibility_check(p, polys)
    except (NotDivisible, NegativeCoefficient) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    if args.format == "json":
        print(_dump({"p": p, "quotients": [{"expression": lab, "poly": q.to_json()} for lab, q in zip(labels, quotients)],
                     "passed": True}))
    else:
        for lab, q in zip(labels, quotients):
            body = q.to_latex() if args.format == "latex" else q.to_text()
            print(f"{lab} = {body}")
        print("passed")
    return EXIT_OK


def cmd_brute(args, cache) -> int:
    _positive("k", args.k)
    if args.k > args.bound:
        raise UsageError(f"--k {args.k} exceeds the enumeration bound {args.bound}")
    brute = brute_kerov(args.k, bound=args.bound, jobs=args.jobs)
    reference = kerov_polys([args.k], cache)[args.k]
    print(_render(brute, args.format, f"\\Sigma_{_sub(args.k)}"))
    if brute != reference:
        print(f"mismatch: product formula gives {reference}", file=sys.stderr)
        return EXIT_MISMATCH
    if args.format != "json":
        print("match")
    return EXIT_OK


def cmd_eval(args, cache) -> int:
    _positive("k", args.k)
    try:
        lam = YoungDiagram.parse(args.diagram)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    kerov_polys([args.k], cache)
    lhs = normalized_character(lam, args.k)
    rhs = kerov_side(lam, args.k)
    if args.format == "json":
        print(_dump({"diagram": list(lam.rows), "k": args.k, "character": format_rational(lhs),
                     "kerov": format_rational(rhs), "equal": lhs == rhs}))
    else:
        print(f"{format_rational(lhs)} = {format_rational(rhs)}")
    if lhs != rhs:
        print("mismatch between character and Kerov polynomial", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "latex"), default=None,
                        help="output style (default: json for fit, text otherwise)")
    common.add_argument("--cache", metavar="PATH", help="cache file (default: $KEROV_CACHE or ~/.cache/kerov)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--jobs", type=int, default=1, help="worker processes over independent k values")

    parser = argparse.ArgumentParser(prog="kerov", description="Exact Kerov character polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="print K_k")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("genus", parents=[common], help="print the genus-g part of K_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--method", choices=("product", "gr", "both"), default="both")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("fit", parents=[common], help="fit f_g (basis R) or h_g (basis Q)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--basis", choices=("R", "Q"), default="R")
    p.set_defaults(func=cmd_fit, default_format="json")

    p = sub.add_parser("divcheck", parents=[common], help="check divisibility of Kerov polynomials by a prime")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_divcheck)

    p = sub.add_parser("brute", parents=[common], help="count factorizations and compare with K_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("eval", parents=[common], help="evaluate both sides of Sigma_k = K_k(R) on a diagram")
    p.add_argument("--diagram", required=True, help='comma-separated row lengths, e.g. "4,2,1"')
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    if args.format is None:
        args.format = getattr(args, "default_format", "text")
    cache = NullCache() if args.no_cache else PolyCache(args.cache)
    try:
        return args.func(args, cache)
    except UsageError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
