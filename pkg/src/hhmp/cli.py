"""
Command-line front end.  Every command prints (or writes with ``--out``) a
JSON report carrying ``"schema": 1`` and exits 0 when all checks pass, 1 when
a check fails and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from pathlib import Path

from .degen import (CheckReport, build_star_pattern, check_degeneration_tree, check_rank_lemmas,
                    degeneration_tree, fm_eq_gz, richardson_check)
from .exactlinalg import format_rational
from .flagmatroid import fm_polytope, permutohedron
from .grassmann import (admissible_perms, check_grassmann, grassmann_degree,
                        hypersimplex_decomposition, is_admissible, partition_of, pushforward_dim_check)
from .gzface import face_diagram, gz_face, hhmp_decomposition
from .permcore import all_perms, compose, embed, length, parse_perm, r_vector, w0_of
from .polytope import normalized_volume, verify_subdivision
from .schubert import at_class_sum, at_term, degree_wrt, product_in_basis
from .svg import emit_svg
from .weights import WeightVector, default_weights, parse_weights

SCHEMA = 1
MAX_N = 7


class UsageError(Exception):
    pass


# ---- argument handling -----------------------------------------------------

def _weights(args, n: int | None) -> WeightVector:
    if args.weights is None:
        if n is None:
            raise UsageError("need --n or --lambda")
        return default_weights(n)
    try:
        lam = parse_weights(args.weights)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if n is not None and lam.n != n:
        raise UsageError(f"--lambda has {lam.n} entries but --n is {n}")
    return lam


def _size(args) -> int:
    n = args.n
    if n is None:
        if getattr(args, "weights", None) is None:
            raise UsageError("need --n or --lambda")
        n = len(args.weights.split(","))
    if n < 2:
        raise UsageError("n must be at least 2")
    if n > MAX_N and not args.force:
        raise UsageError(f"n={n} exceeds the cap of {MAX_N}; pass --force to override")
    return n


def _perm(text: str):
    try:
        return parse_perm(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _pmap(fn, items, jobs: int):
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---- per-permutation workers (top level so they can be pickled) --------------

def _fm_gz_task(item):
    lam, w = item
    return str(w), fm_eq_gz(lam, w)


def _richardson_task(item):
    lam, w, seed = item
    return str(w), richardson_check(w, lam, seed).to_json()


def _lemma_task(w):
    n = w.n + 1
    report = CheckReport()
    for k in range(n):
        for S in combinations(range(2, n + 1), k):
            report.extend(check_rank_lemmas(w, S))
    return str(w), report.passed, [c.to_json() for c in report.failures()[:3]]


def _at_task(item):
    lam, w = item
    degree = degree_wrt(product_in_basis(*at_term(w)), lam)
    volume = normalized_volume(gz_face(lam, w).hrep)
    return str(w), degree, volume


# ---- commands ----------------------------------------------------------------

def cmd_perm(args, report: CheckReport) -> dict:
    w = _perm(args.w)
    n = w.n + 1
    return {
        "w": list(w.images),
        "r_vector": list(r_vector(w)),
        "length": length(w),
        "iota": list(embed(w, "iota").images),
        "iota_bar": list(embed(w, "iota_bar").images),
        "iota_bar_w0w": list(embed(compose(w0_of(n - 1), w), "iota_bar").images),
    }


def cmd_gz_face(args, report: CheckReport) -> dict:
    w = _perm(args.w)
    n = w.n + 1
    if args.n is not None and args.n != n:
        raise UsageError(f"--w lies in S_{w.n}, so n must be {n}")
    lam = _weights(args, n)
    face = gz_face(lam, w)
    M, c = face.affine_map
    return {
        "lambda": [format_rational(x) for x in lam.values],
        "diagram": face_diagram(w),
        "free_entries": [list(e) for e in face.free_entries],
        "phi_on_face": {"matrix": M.to_json(), "offset": [format_rational(x) for x in c]},
        "polytope": face.hrep.to_json(),
        "normalized_volume": format_rational(normalized_volume(face.hrep)),
    }


def cmd_fm(args, report: CheckReport) -> dict:
    w = _perm(args.w)
    n = w.n + 1
    lam = _weights(args, n)
    star = build_star_pattern(w)
    P = fm_polytope(lam, star.support)
    report.add(f"FM(lambda, {w}) = GZ(lambda, {w})", fm_eq_gz(lam, w))
    return {"lambda": [format_rational(x) for x in lam.values], "pattern": star.grid(), "polytope": P.to_json()}


def cmd_decompose(args, report: CheckReport) -> dict:
    n = _size(args)
    lam = _weights(args, n)
    try:
        sub = hhmp_decomposition(lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = verify_subdivision(sub.parent, [p for _, p in sub.pieces])
    report.add(f"{len(sub.pieces)} pieces subdivide Perm(lambda)", result.passed, violations=result.violations)
    if args.svg:
        if n != 3:
            raise UsageError("--svg is only available for n = 3")
        Path(args.svg).write_text(emit_svg(sub))
    return {
        "lambda": [format_rational(x) for x in lam.values],
        "pieces": [{"w": label, "polytope": P.to_json()} for label, P in sub.pieces],
        "subdivision": result.to_json(),
    }


def cmd_degenerate(args, report: CheckReport) -> dict:
    n = _size(args)
    report.extend(check_degeneration_tree(n, volumes=n <= 4))
    return {"tree": degeneration_tree(n).to_json()}


def cmd_verify(args, report: CheckReport) -> dict:
    n = _size(args)
    lam = _weights(args, n)
    perms = list(all_perms(n - 1))
    suite = args.suite
    data: dict = {"suite": suite, "lambda": [format_rational(x) for x in lam.values]}
    if suite == "fm-eq-gz":
        for label, ok in _pmap(_fm_gz_task, [(lam, w) for w in perms], args.jobs):
            report.add(f"FM(lambda, {label}) = GZ(lambda, {label})", ok)
    elif suite == "richardson":
        for label, sub in _pmap(_richardson_task, [(lam, w, args.seed) for w in perms], args.jobs):
            for c in sub["checks"]:
                report.add(c["name"], c["passed"], **c.get("detail", {}))
    elif suite == "lemmas":
        for label, ok, bad in _pmap(_lemma_task, perms, args.jobs):
            report.add(f"rank lemmas for {label}", ok, **({"failures": bad} if bad else {}))
    elif suite == "at-volume":
        if not (lam.integral and lam.strict):
            raise UsageError("at-volume needs strictly decreasing integral weights")
        for label, deg, vol in _pmap(_at_task, [(lam, w) for w in perms], args.jobs):
            report.add(f"degree = volume for piece {label}", deg == vol, degree=deg, volume=format_rational(vol))
        total = degree_wrt(at_class_sum(n), lam)
        vol = normalized_volume(permutohedron(lam))
        report.add("degree of the class sum = vol Perm(lambda)", total == vol, degree=total, volume=format_rational(vol))
    return data


def cmd_grassmann(args, report: CheckReport) -> dict:
    n, r = args.n, args.r
    if n is None or r is None or not 1 <= r <= n - 1:
        raise UsageError("need --n and --r with 1 <= r <= n - 1")
    if n > MAX_N and not args.force:
        raise UsageError(f"n={n} exceeds the cap of {MAX_N}; pass --force to override")
    report.extend(check_grassmann(n, r))
    ok = all(pushforward_dim_check(n, r, w) == is_admissible(w, r) for w in all_perms(n - 1))
    report.add("full-dimensional pushforward iff chain condition", ok)
    terms = []
    for w in admissible_perms(n, r):
        lam, lam_bar = partition_of(w, r, n)
        terms.append({"w": str(w), "lambda": list(lam), "lambda_bar": list(lam_bar),
                      "degree": grassmann_degree(lam, lam_bar, r, n)})
    if args.svg:
        Path(args.svg).write_text(emit_svg(hypersimplex_decomposition(n, r), projection=(1, 2)))
    return {"r": r, "terms": terms}


def cmd_verify_all(args, report: CheckReport) -> dict:
    n = _size(args)
    summary = {}
    for suite in ("fm-eq-gz", "richardson", "lemmas", "at-volume"):
        sub = CheckReport()
        cmd_verify(argparse.Namespace(**{**vars(args), "suite": suite}), sub)
        summary[suite] = sub.passed
        report.extend(sub)
    for name, fn in (("decompose", cmd_decompose), ("degenerate", cmd_degenerate)):
        sub = CheckReport()
        fn(argparse.Namespace(**{**vars(args), "svg": None}), sub)
        summary[name] = sub.passed
        report.extend(sub)
    for r in range(1, n):
        sub = CheckReport()
        cmd_grassmann(argparse.Namespace(**{**vars(args), "r": r, "svg": None}), sub)
        summary[f"grassmann r={r}"] = sub.passed
        report.extend(sub)
    return {"summary": summary}


COMMANDS = {
    "perm": cmd_perm, "gz-face": cmd_gz_face, "fm": cmd_fm, "decompose": cmd_decompose,
    "degenerate": cmd_degenerate, "verify": cmd_verify, "grassmann": cmd_grassmann,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--lambda", dest="weights", help="comma-separated rationals, e.g. 3,2,1/2,0")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--force", action="store_true", help=f"allow n > {MAX_N}")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timings", action="store_true", help="include wall-clock timings (not reproducible)")

    parser = argparse.ArgumentParser(prog="hhmp", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("perm", parents=[common])
    p.add_argument("--w", required=True)
    p = sub.add_parser("gz-face", parents=[common])
    p.add_argument("--w", required=True)
    p = sub.add_parser("fm", parents=[common])
    p.add_argument("--w", required=True)
    p = sub.add_parser("decompose", parents=[common])
    p.add_argument("--svg", help="write an SVG picture (n = 3)")
    sub.add_parser("degenerate", parents=[common])
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("suite", choices=["fm-eq-gz", "richardson", "lemmas", "at-volume"])
    p = sub.add_parser("grassmann", parents=[common])
    p.add_argument("--r", type=int)
    p.add_argument("--svg", help="write the pieces projected onto (z1, z2)")
    sub.add_parser("verify-all", parents=[common])
    return parser


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = CheckReport()
    start = time.perf_counter()
    try:
        data = COMMANDS[args.command](args, report)
    except UsageError as exc:
        parser.error(str(exc))
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "out", "timings", "jobs")}
    doc = {"schema": SCHEMA, "command": args.command, "parameters": params, **report.to_json(), "data": data}
    if args.timings:
        doc["timings"] = {"seconds": round(time.perf_counter() - start, 3)}
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return (0 if report.passed else 1), doc


def main(argv: list[str] | None = None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
