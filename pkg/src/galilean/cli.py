"""Command-line interface.

    galilean socle --n 1 "FU+(0)" "FU+(0)"
    galilean hom --m 3 "E(1,2)" "E(2,1)" --matrices
    galilean verify-module --m 3 "Z(1,2)"
    galilean verify-theorems --scope typez-typez,faithful-faithful --n 1..3
    galilean sweep-conjecture --m-list 1,3,5 --jobs 4

Exit status: 0 when everything checked passes, 1 on any discrepancy,
2 on a usage error (bad flags or an invalid module expression).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Iterable, Sequence, TypeVar

from . import __version__
from .intertwine import find_isomorphism, hom_space
from .liealg import ABELIAN, HEISENBERG, check_module_axioms
from .sweep import canonical_pairs, length_two_params, sweep_point
from .tensorsocle import socle, tensor
from .theorems import SCOPES, TableError, check_point, covering_scope, points_for
from .uniserial import SpecError, build, dual, parse_spec, socle_series

EXIT_OK, EXIT_DISCREPANCY, EXIT_USAGE = 0, 1, 2

T = TypeVar("T")
R = TypeVar("R")


class UsageError(Exception):
    pass


def parse_int_list(text: str) -> list[int]:
    """``"1,3,5"``, ``"1..3"`` or a mix such as ``"1..3,7"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("..")
        try:
            if sep:
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"cannot read integer list {text!r}") from None
    if not out:
        raise UsageError(f"empty integer list {text!r}")
    return out


def ambient(args: argparse.Namespace, allow_many: bool = False) -> list[tuple[int, str]]:
    """(m, mode) pairs from --m / --n / --mode."""
    if (args.m is None) == (args.n is None):
        raise UsageError("give exactly one of --m (abelian nilradical) or --n (Heisenberg, m = 2n-1)")
    values = parse_int_list(args.m if args.m is not None else args.n)
    if not allow_many and len(values) != 1:
        raise UsageError("this command takes a single value of --m or --n")
    if args.m is not None:
        mode = args.mode or ABELIAN
        ms = values
    else:
        mode = args.mode or HEISENBERG
        if any(n < 1 for n in values):
            raise UsageError("--n must be >= 1")
        ms = [2 * n - 1 for n in values]
    out = []
    for m in ms:
        if m < 1:
            raise UsageError("m must be >= 1")
        if mode == HEISENBERG and m % 2 == 0:
            raise UsageError(f"the Heisenberg algebra needs odd m, got m={m}")
        out.append((m, mode))
    return out


def run_parallel(fn: Callable[[T], R], items: Sequence[T], jobs: int) -> list[R]:
    """Map ``fn`` over ``items``; results come back in input order whatever ``jobs`` is."""
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    body = json.dumps(payload, indent=2, ensure_ascii=False) if args.format == "json" else text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body + "\n")
    else:
        sys.stdout.write(body + "\n")


# commands


def cmd_socle(args: argparse.Namespace) -> int:
    ((m, mode),) = ambient(args)
    left, right = parse_spec(args.left, m, mode), parse_spec(args.right, m, mode)
    report = socle(tensor(build(left), build(right)))
    scope = covering_scope(left, right)
    report.status = f"theorem:{scope}" if scope else "computed (no theorem)"
    emit(args, report.to_json(), report.to_text())
    return EXIT_OK


def cmd_hom(args: argparse.Namespace) -> int:
    ((m, mode),) = ambient(args)
    v = build(parse_spec(args.left, m, mode))
    w = build(parse_spec(args.right, m, mode))
    report = hom_space(v, w)
    payload = report.to_json(matrices=args.matrices)
    payload.update({"m": m, "mode": mode, "source": v.label, "target": w.label, "verified": report.ok})
    emit(args, payload, report.to_text(matrices=args.matrices))
    return EXIT_OK if report.ok else EXIT_DISCREPANCY


def cmd_verify_module(args: argparse.Namespace) -> int:
    ((m, mode),) = ambient(args)
    spec = parse_spec(args.spec, m, mode)
    rep = build(spec)
    axioms = check_module_axioms(rep)
    series = socle_series(rep)
    layers_ok = [s.weights() for s in series] == [[a] for a in spec.layers()]
    uniserial = all(s.count() == 1 for s in series)
    checks = {"axioms": axioms.ok, "uniserial": uniserial, "layers": layers_ok}
    if rep.structure.has_center:
        z_acts = not rep.actions[next(g for g in rep.structure.generators if g.kind == "Z")].is_zero()
        checks["center"] = z_acts == spec.faithful
    d = dual(rep)
    target_spec = spec.dual_spec()
    if target_spec is not None:
        checks["dual"] = find_isomorphism(d, build(target_spec)) is not None
    checks["double_dual"] = find_isomorphism(dual(d), rep) is not None
    ok = all(checks.values())
    payload = {
        "spec": spec.render(),
        "m": m,
        "mode": mode,
        "dim": rep.dim,
        "layers": list(spec.layers()),
        "socle_series": [s.to_json() for s in series],
        "checks": checks,
        "violations": axioms.violations,
        "dual_of": target_spec.render() if target_spec else None,
        "status": "pass" if ok else "fail",
    }
    lines = [f"{spec.render()}  m={m} mode={mode}  dim={rep.dim}  layers={list(spec.layers())}"]
    lines.append("  socle series: " + " | ".join(str(s) for s in series))
    for name, good in checks.items():
        lines.append(f"  {name:<12} {'ok' if good else 'FAILED'}")
    lines.extend(f"  violation: {v}" for v in axioms.violations)
    emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_DISCREPANCY


def cmd_verify_theorems(args: argparse.Namespace) -> int:
    scopes = [s.strip() for s in args.scope.split(",") if s.strip()] if args.scope else list(SCOPES)
    for s in scopes:
        if s not in SCOPES:
            raise UsageError(f"unknown scope {s!r}; choose from {', '.join(SCOPES)}")
    points = []
    for m, mode in ambient(args, allow_many=True):
        for s in scopes:
            points.extend(points_for(s, m, mode, args.max_weight, args.max_length))
    started = time.perf_counter()
    results = run_parallel(partial(check_point, mutate=args.self_test), points, args.jobs)
    elapsed = time.perf_counter() - started
    summary = {}
    for s in scopes:
        mine = [r for r in results if r.point.scope == s]
        summary[s] = {"points": len(mine), "passed": sum(r.passed for r in mine), "failed": sum(not r.passed for r in mine)}
    failed = sum(v["failed"] for v in summary.values())
    payload = {
        "self_test": args.self_test,
        "summary": summary,
        "total": len(results),
        "failed": failed,
        "seconds": round(elapsed, 3),
        "points": [r.to_json() for r in results],
    }
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.point.scope:<18} {r.point.describe()}")
        lines.extend(f"        {x}" for x in r.mismatches)
    for s, v in summary.items():
        lines.append(f"{s:<18} {v['passed']}/{v['points']} passed")
    lines.append(f"total {len(results)} points, {failed} failed" + ("  [self-test: tables perturbed]" if args.self_test else ""))
    emit(args, payload, "\n".join(lines))
    return EXIT_DISCREPANCY if failed or not results else EXIT_OK


def cmd_sweep_conjecture(args: argparse.Namespace) -> int:
    mode = args.mode or ABELIAN
    ms = parse_int_list(args.m_list)
    if mode == HEISENBERG and any(m % 2 == 0 for m in ms):
        raise UsageError("the Heisenberg algebra needs odd m")
    items = []
    for m in ms:
        for a, b, c, d in canonical_pairs(length_two_params(m, args.slack, args.max_weight)):
            items.append((m, mode, a, b, c, d))
    started = time.perf_counter()
    results = run_parallel(sweep_point, items, args.jobs)
    elapsed = time.perf_counter() - started
    bad = [p for p in results if not p.ok]
    backed = [p for p in results if p.backing]
    asym = [p for p in results if not p.symmetric]
    payload = {
        "mode": mode,
        "m_list": ms,
        "points": len(results),
        "theorem_backed": len(backed),
        "empirical": len(results) - len(backed),
        "discrepancies": len(bad),
        "swap_asymmetric": len(asym),
        "seconds": round(elapsed, 3),
        "results": [p.to_json() for p in results],
    }
    lines = []
    for p in results:
        support = f"theorem:{p.backing}" if p.backing else "empirical"
        lines.append(
            f"{'PASS' if p.ok else 'FAIL'}  {p.label():<32} case {p.case_name():<8} "
            f"S1={str(p.s1):<10} S2={str(p.s2):<6} {support}"
        )
        lines.extend(f"        {x}" for x in p.discrepancies)
        for wv in p.witnesses:
            terms = " + ".join(f"({t['coeff']}) v{t['left']} (x) v{t['right']}" for t in wv["terms"])
            lines.append(f"        witness S_{wv['t']} weight {wv['mu']}: {terms}")
    lines.append(
        f"{len(results)} points: {len(backed)} theorem-backed, {len(results) - len(backed)} empirical; "
        f"{len(bad)} discrepancies; {len(asym)} points where exchanging the factors changes S_1 or S_2"
    )
    emit(args, payload, "\n".join(lines))
    return EXIT_DISCREPANCY if bad else EXIT_OK


# parser


def _common(p: argparse.ArgumentParser, many: bool = False) -> None:
    g = p.add_argument_group("algebra")
    hint = "integer, list or range such as 1..3" if many else "integer"
    g.add_argument("--m", help=f"nilradical V(m), abelian by default ({hint})")
    g.add_argument("--n", help=f"Heisenberg h_n with m = 2n-1 ({hint})")
    g.add_argument("--mode", choices=(HEISENBERG, ABELIAN), help="override the nilradical type")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", help="write the report to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="galilean", description="Uniserial modules, socles and intertwiners, exactly.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("socle", help="graded socle S_0, S_1, ... of a tensor product")
    _common(p)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_socle)

    p = sub.add_parser("hom", help="intertwining operators Hom(left, right)")
    _common(p)
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--matrices", action="store_true", help="include the basis matrices")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("verify-module", help="module axioms, uniseriality, layers and duality of one module")
    _common(p)
    p.add_argument("spec")
    p.set_defaults(func=cmd_verify_module)

    p = sub.add_parser("verify-theorems", help="compare computed socles and hom spaces with the expected tables")
    _common(p, many=True)
    p.add_argument("--scope", help=f"comma-separated subset of {', '.join(SCOPES)} (default: all)")
    p.add_argument("--max-weight", type=int, default=3, help="bound on the socle weight parameters (default 3)")
    p.add_argument("--max-length", type=int, default=2, help="bound on the length of type Z factors (default 2)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--self-test", action="store_true", help="perturb the expected tables; the run must then fail")
    p.set_defaults(func=cmd_verify_theorems)

    p = sub.add_parser("sweep-conjecture", help="S_1 and S_2 for all pairs of length-two modules")
    p.add_argument("--m-list", default="1,3,5")
    p.add_argument("--mode", choices=(HEISENBERG, ABELIAN), help="default abelian")
    p.add_argument("--slack", type=int, default=4, help="include E(a,b) with a+b <= m + slack (default 4)")
    p.add_argument("--max-weight", type=int, help="optional bound on each of a, b, c, d")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep_conjecture)
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    try:
        return args.func(args)
    except (UsageError, SpecError, TableError) as exc:
        print(f"galilean {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
