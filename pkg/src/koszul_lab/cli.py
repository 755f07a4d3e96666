"""``koszul-lab`` command line.

Exit status: 0 when the run finds nothing contradicting the expected
behaviour, 1 when the report lists violations, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
import warnings
from typing import Callable, Optional, Sequence

from . import betti, chains, filtration, groebner, lattice
from ._parallel import default_jobs
from .report import betti_rows, emit_report
from .simplicial import GF, Field, parse_field, reduced_homology_ranks

log = logging.getLogger("koszul_lab")

COMMANDS = (
    "points", "member", "two-full", "min-chain", "groebner", "betti-ideal",
    "betti-field", "koszul-scan", "facet-lemmas", "homology-lemma", "mv-scan",
)
CROSS_FIELDS = (GF(2), GF(32003))


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _puncture(text: str):
    return None if text.strip().lower() == "none" else _int_list(text)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _field(text: str) -> Field:
    try:
        return parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=_positive, help="ambient dimension (node count for homology-lemma)")
    common.add_argument("-d", type=_positive, help="degree of the generators")
    common.add_argument("-a", type=_puncture, default=None, help="puncture, e.g. 1,1,1, or 'none'")
    common.add_argument("--lambda", dest="lam", type=_int_list, help="multidegree, comma-separated")
    common.add_argument("--start", type=_int_list, help="chain start (min-chain; default 0)")
    common.add_argument("--max-degree", type=_positive, default=None)
    common.add_argument("--max-links", type=_positive, default=chains.DEFAULT_MAX_LINKS)
    common.add_argument("--field", type=_field, default=parse_field("q"), help="q or p:<prime>")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: all cores)")
    common.add_argument("--verify-oracles", action="store_true", help="run brute-force cross-checks")
    common.add_argument("--form", choices=("weak", "strong", "both"), default="both",
                        help="homology-lemma form")
    common.add_argument("--allow-high-degree", action="store_true", help="permit --max-degree > 5")
    common.add_argument("--no-timing", action="store_true", help="emit runtime_ms as null")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    parser = argparse.ArgumentParser(
        prog="koszul-lab",
        description="Checks on pinched Veronese semigroup rings K[V(n,d) minus a].",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=HANDLERS[name].__doc__)
    return parser


def _cfg(args) -> lattice.GammaConfig:
    if args.n is None or args.d is None:
        raise UsageError("-n and -d are required")
    if args.a is not None and len(args.a) != args.n:
        raise UsageError(f"puncture {args.a} does not have {args.n} coordinates")
    try:
        cfg = lattice.make_gamma(args.n, args.d, args.a)
    except ValueError as exc:
        raise UsageError(str(exc))
    if not cfg.puncture_was_sorted:
        log.warning("puncture %s is not sorted; classified by %s", cfg.puncture, cfg.sorted_puncture)
    return cfg


def _lam(args, cfg) -> tuple[int, ...]:
    if args.lam is None:
        raise UsageError("--lambda is required")
    if len(args.lam) != cfg.n:
        raise UsageError(f"--lambda needs {cfg.n} coordinates")
    return args.lam


def _config_dict(cfg) -> dict:
    out = cfg.describe()
    out["classification"] = cfg.classification.value
    if not cfg.puncture_was_sorted:
        out["sorted_a"] = list(cfg.sorted_puncture)
    return out


def _pts(xs) -> list:
    return [list(x) for x in xs]


# -- handlers -----------------------------------------------------------------

def cmd_points(args) -> dict:
    """List V(n,d) in lex order."""
    if args.n is None or args.d is None:
        raise UsageError("-n and -d are required")
    pts = lattice.enumerate_points(args.n, args.d)
    return {"config": {"n": args.n, "d": args.d, "a": None},
            "results": [{"point": list(p)} for p in pts]}


def cmd_member(args) -> dict:
    """Semigroup membership of --lambda."""
    cfg = _cfg(args)
    lam = _lam(args, cfg)
    ok = lattice.semigroup_member(cfg, lam)
    return {"config": _config_dict(cfg),
            "results": [{"lambda": list(lam), "member": ok, "degree": cfg.level(lam)}]}


def _predicted_two_full(cfg) -> bool:
    if cfg.puncture is None:
        return True
    s = cfg.sorted_puncture
    zeros = (0,) * (cfg.n - 2)
    return s not in (zeros + (0, cfg.d), zeros + (1, cfg.d - 1))


def cmd_two_full(args) -> dict:
    """Is Gamma + Gamma = V(n,2d)?"""
    cfg = _cfg(args)
    full, missing = lattice.is_two_full(cfg)
    violations = []
    if full != _predicted_two_full(cfg):
        violations.append({"expected_two_full": _predicted_two_full(cfg), "two_full": full})
    return {"config": _config_dict(cfg),
            "results": [{"two_full": full, "missing": _pts(missing)}],
            "violations": violations}


def cmd_min_chain(args) -> dict:
    """Least chain from --start (default 0) to --lambda."""
    cfg = _cfg(args)
    end = _lam(args, cfg)
    start = args.start or (0,) * cfg.n
    try:
        c = chains.minimal_chain(cfg, start, end)
    except chains.EmptyChainSetError as exc:
        raise UsageError(str(exc))
    violations = []
    if args.verify_oracles:
        base = chains.minimal_chain(cfg, start, end, method="enumerate", max_links=args.max_links)
        if base.links != c.links:
            violations.append({"greedy": _pts(c.links), "enumerated": _pts(base.links)})
        diff = lattice.sub(end, start)
        bad = chains.verify_min_below_formula(cfg, [diff])
        violations.extend({"min_below": b} for b in bad)
    return {"config": _config_dict(cfg),
            "results": [{"start": list(c.start), "end": list(c.end), "links": _pts(c.links),
                         "a_degree": c.a_degree}],
            "violations": violations}


def cmd_groebner(args) -> dict:
    """Confluence of the quadratic rewriting system on all cubics."""
    cfg = _cfg(args)
    rep = groebner.verify_groebner(cfg)
    violations = [c.as_dict() for c in rep.counterexamples]
    if args.verify_oracles:
        for b in chains.verify_triple_minimality(cfg):
            violations.append({"triple_not_minimal": _pts(b["cubic"]), "minimal": _pts(b["minimal"])})
    return {"config": _config_dict(cfg),
            "summary": {"is_groebner": rep.is_groebner, "rules": len(rep.rules),
                        "cubics_checked": rep.cubics_checked},
            "results": [{"lhs": _pts(r.lhs), "rhs": _pts(r.rhs)} for r in rep.rules],
            "violations": violations}


def cmd_betti_ideal(args) -> dict:
    """Betti numbers of the toric ideal at --lambda (divisor complex)."""
    cfg = _cfg(args)
    lam = _lam(args, cfg)
    prof = _guard(lambda: betti.ideal_homology(cfg, lam, args.field, cross_fields=_cross(args)))
    k = cfg.level(lam)
    rows = betti_rows([(i, lam, r) for i, r in prof.nonzero.items()], cfg.d)
    violations = []
    quadratic_expected = cfg.classification is not lattice.Classification.NON_KOSZUL_EXCEPTION
    if quadratic_expected and k >= 3 and prof[0]:
        violations.append({"i": 0, "lambda": list(lam), "detail": "minimal generator of degree >= 3"})
    return {"config": _config_dict(cfg),
            "summary": {"homology": prof.as_dict(), "connected": prof[0] == 0 and prof[-1] == 0,
                        "discrepancies": prof.discrepancies},
            "results": rows, "violations": violations}


def cmd_betti_field(args) -> dict:
    """Betti numbers of the residue field at --lambda (order complex)."""
    cfg = _cfg(args)
    lam = _lam(args, cfg)
    K = _guard(lambda: betti.order_complex(cfg, lam))
    prof = reduced_homology_ranks(K, args.field, cross_fields=_cross(args))
    k = cfg.level(lam)
    rows = betti_rows([(j + 2, lam, r) for j, r in prof.nonzero.items()], cfg.d)
    violations = [{"i": r["i"], "lambda": r["lambda"]} for r in rows if r["degree"] > r["i"]]
    return {"config": _config_dict(cfg),
            "summary": {"homology": prof.as_dict(), "facets": len(K.facets), "degree": k,
                        "discrepancies": prof.discrepancies},
            "results": rows, "violations": violations}


def cmd_koszul_scan(args) -> dict:
    """All nonzero Betti numbers of the residue field up to --max-degree."""
    cfg = _cfg(args)
    max_degree = args.max_degree or betti.DEFAULT_MAX_DEGREE
    try:
        rep = betti.koszul_scan(cfg, max_degree, args.field, cross_fields=_cross(args),
                                jobs=args.jobs, allow_high_degree=args.allow_high_degree)
    except ValueError as exc:
        raise UsageError(str(exc))
    violations = [{"i": i, "lambda": list(lam)} for i, lam in rep.violations]
    violations += [{"impure": list(lam)} for lam in rep.impure]
    return {"config": _config_dict(cfg),
            "summary": {"max_degree": max_degree, "field": str(args.field),
                        "multidegrees": len(rep.facet_counts), "regularity": rep.regularity,
                        "within_regularity_bound": rep.within_regularity_bound,
                        "discrepancies": [{"lambda": list(x["lambda"]), "detail": x["detail"]}
                                          for x in rep.discrepancies]},
            "results": betti_rows(rep.sorted_entries(), cfg.d),
            "violations": violations}


def cmd_facet_lemmas(args) -> dict:
    """Facet structure of F_{<p} cap p for every offending chain."""
    cfg = _cfg(args)
    if args.lam is not None:
        reports = [_guard(lambda: filtration.verify_facet_lemmas(cfg, _lam(args, cfg), _cross(args)))]
    else:
        reports = filtration.facet_lemma_scan(cfg, 3, args.max_degree or 4, _cross(args), args.jobs)
    results, violations, discrepancies = [], [], []
    for r in reports:
        results.append({"lambda": list(r.lam), "offending": len(r.checks),
                        "violations": len(r.violations), "within_hypotheses": r.within_hypotheses})
        for c in r.violations:
            violations.append({"lambda": list(r.lam), **c.as_dict()})
        discrepancies += [{"lambda": list(r.lam), "detail": s} for s in r.discrepancies]
    return {"config": _config_dict(cfg),
            "summary": {"multidegrees": len(reports),
                        "offending_chains": sum(len(r.checks) for r in reports),
                        "discrepancies": discrepancies},
            "results": results, "violations": violations}


def cmd_homology_lemma(args) -> dict:
    """Homology of abstract facet patterns on -n nodes."""
    if args.n is None:
        raise UsageError("-n is required")
    forms = {"weak": [True], "strong": [False], "both": [True, False]}[args.form]
    results, violations = [], []
    for weak in forms:
        try:
            rep = filtration.verify_abstract_homology_lemma(args.n, weak, _cross(args))
        except ValueError as exc:
            raise UsageError(str(exc))
        form = "weak" if weak else "strong"
        results.append({"n": args.n, "form": form, "patterns_checked": rep.patterns_checked,
                        "violations": len(rep.violations)})
        violations += [{"form": form, **v} for v in rep.violations]
    return {"config": {"n": args.n, "d": None, "a": None},
            "results": results, "violations": violations}


def cmd_mv_scan(args) -> dict:
    """Homology of each stage F_{<p^i} at --lambda."""
    cfg = _cfg(args)
    lam = _lam(args, cfg)
    rep = _guard(lambda: filtration.mayer_vietoris_scan(cfg, lam, args.field, _cross(args)))
    return {"config": _config_dict(cfg),
            "summary": {"stages": len(rep.stages), "gamma_matches": rep.gamma_matches,
                        "within_hypotheses": rep.within_hypotheses},
            "results": [s.as_dict() for s in rep.stages],
            "violations": rep.violations}


HANDLERS: dict[str, Callable] = {
    "points": cmd_points,
    "member": cmd_member,
    "two-full": cmd_two_full,
    "min-chain": cmd_min_chain,
    "groebner": cmd_groebner,
    "betti-ideal": cmd_betti_ideal,
    "betti-field": cmd_betti_field,
    "koszul-scan": cmd_koszul_scan,
    "facet-lemmas": cmd_facet_lemmas,
    "homology-lemma": cmd_homology_lemma,
    "mv-scan": cmd_mv_scan,
}


def _cross(args) -> tuple:
    return CROSS_FIELDS if args.verify_oracles else ()


def _guard(fn):
    try:
        return fn()
    except (betti.NotInSemigroupError, chains.EmptyChainSetError, ValueError) as exc:
        raise UsageError(str(exc))


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = sys.stdout.buffer if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(stream=sys.stderr, level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if args.jobs is None:
        args.jobs = default_jobs()
    t0 = time.perf_counter()
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            report = HANDLERS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"koszul-lab {args.command}: error: {exc}", file=sys.stderr)
        return 2
    report = {"command": args.command, **report}
    report["runtime_ms"] = None if args.no_timing else round((time.perf_counter() - t0) * 1000, 3)
    stdout.write(emit_report(report, args.format))
    stdout.flush()
    return 1 if report.get("violations") else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
