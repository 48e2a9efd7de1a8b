"""Single command-line entry point for every build, check, sweep, and search.

Reports are JSON by default (`schema: 1`); rationals cross the boundary
as "a/b" strings in lowest terms, with 10-place decimal renderings added
for human eyes only — every verdict is computed from the exact values.
Exit status: 0 all asserted verdicts hold, 1 a verdict failed, 2 usage
or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, constructions, lift, posets, search
from .setcube import (
    Family,
    OccupancyProfile,
    hk_defect,
    is_upward_closed,
    measure,
    occupancy,
    random_upset,
    up_closure,
)
from .errors import InvalidParams, UpcubeError
from .upset_io import format_upset, parse_upset, write_upset


def rat(x: Fraction | int) -> str:
    return str(Fraction(x))


def dec10(x: Fraction | int) -> str:
    """10-place decimal rendering, display-only."""
    q = round(Fraction(x) * 10**10)
    sign, q = ("-", -q) if q < 0 else ("", q)
    return f"{sign}{q // 10**10}.{q % 10**10:010d}"


def _rat_arg(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from None


def _profile_block(prof: OccupancyProfile) -> dict:
    return {
        "counts": list(prof.counts),
        "densities": [rat(d) for d in prof.densities],
        "densities_dec": [dec10(d) for d in prof.densities],
        "bias": rat(prof.bias),
    }


def _report(verb: str, params: dict, results: dict, verdicts: dict, notes: list[str] | None = None):
    rep = {"schema": 1, "verb": verb, "params": params, "results": results, "verdicts": verdicts}
    if notes:
        rep["notes"] = notes
    return rep, 0 if all(verdicts.values()) else 1


def _write_triple(triple: constructions.TripleSystem, out: Path, stem: str) -> list[str]:
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for tag, fam in (("x", triple.x), ("y", triple.y), ("z", triple.z)):
        path = out / f"{stem}_{tag}.upset"
        write_upset(fam, path)
        paths.append(str(path))
    return paths


# ---------------------------------------------------------------- verify


def _verify_q5(args) -> tuple[dict, int]:
    triple = constructions.q5_triple()
    prof = occupancy(triple.x, triple.y, triple.z, Fraction(1, 2), workers=args.threads)
    baseline = 3 * Fraction(1, 2) * Fraction(1, 2) ** 2
    results = {
        "label": triple.label,
        "counts": [triple.x.count, triple.y.count, triple.z.count],
        "occupancy": _profile_block(prof),
        "s1": rat(prof.s1),
        "s1_dec": dec10(prof.s1),
        "product_baseline_3r(1-r)^2": rat(baseline),
        "four_ninths_reference": "4/9",
        "s1_below_4_9": prof.s1 < Fraction(4, 9),
    }
    verdicts = {
        "families_upward_closed": all(
            is_upward_closed(f) for f in (triple.x, triple.y, triple.z)
        ),
        "counts_all_16": results["counts"] == [16, 16, 16],
        "occupancy_counts_5_13_7_7": prof.counts == (5, 13, 7, 7),
        "s1_exceeds_baseline": prof.s1 > baseline,
    }
    notes = ["the 4/9 figure is the large-n exactly-one target; this instance sits below it"]
    return _report("verify", {"target": "q5"}, results, verdicts, notes)


def _verify_kahn(args) -> tuple[dict, int]:
    params = constructions.ConstructionParams(args.n, args.l, args.p)
    triple = constructions.kahn_triple(params)
    prof = occupancy(triple.x, triple.y, triple.z, params.p, workers=args.threads)
    formula = constructions.q_formula(params)
    results = {
        "label": triple.label,
        "counts": [triple.x.count, triple.y.count, triple.z.count],
        "z_measure": rat(measure(triple.z, params.p)),
        "occupancy": _profile_block(prof),
        "q_formula": rat(formula),
        "q_formula_dec": dec10(formula),
    }
    verdicts = {
        "families_upward_closed": all(
            is_upward_closed(f) for f in (triple.x, triple.y, triple.z)
        ),
        "s1_matches_formula": prof.s1 == formula,
    }
    return _report(
        "verify", {"target": "kahn", "n": args.n, "l": args.l, "p": rat(args.p)}, results, verdicts
    )


def _verify_q21(args) -> tuple[dict, int]:
    triple, rep = lift.build_q21(workers=args.threads)
    return _q21_report("verify", rep, triple, files=None)


def _q21_report(verb: str, rep: lift.LiftReport, triple, files) -> tuple[dict, int]:
    total = 1 << rep.n
    s1_count = rep.profile.counts[1]
    ceiling = Fraction(rep.z_pre_count + rep.pool_count, total)
    results = {
        "m": rep.m,
        "b": rep.b,
        "n": rep.n,
        "gadget_bias": rat(rep.bias),
        "counts": [rep.x_count, rep.y_count, rep.z_post_count],
        "z_pre_count": rep.z_pre_count,
        "z_pre_measure": rat(Fraction(rep.z_pre_count, total)),
        "z_pre_measure_dec": dec10(Fraction(rep.z_pre_count, total)),
        "pool_count": rep.pool_count,
        "deficit": rep.deficit,
        "pool_ceiling_measure": rat(ceiling),
        "pool_ceiling_measure_dec": dec10(ceiling),
        "target": rep.target,
        "occupancy": _profile_block(rep.profile),
        "s1_count": s1_count,
        "s1": rat(rep.profile.s1),
        "s1_dec": dec10(rep.profile.s1),
        "integer_cross_check": f"9*{s1_count} = {9 * s1_count} vs 4*{total} = {4 * total}",
    }
    if files:
        results["files"] = files
    verdicts = {
        "counts_match_target": rep.x_count == rep.y_count == rep.z_post_count == rep.target,
        "deficit_within_pool": 0 <= rep.deficit <= rep.pool_count,
        "ceiling_exceeds_target_density": ceiling > Fraction(rep.target, total),
        "s1_exceeds_4_9": 9 * s1_count > 4 * total,
    }
    return _report(verb, {"target": "q21"}, results, verdicts)


def _cmd_verify(args) -> tuple[dict, int]:
    return {"q5": _verify_q5, "kahn": _verify_kahn, "q21": _verify_q21}[args.target](args)


# ------------------------------------------------------- measure / closure


def _cmd_measure(args) -> tuple[dict, int]:
    fam = parse_upset(Path(args.family).read_text())
    mu = measure(fam, args.p)
    results = {
        "family": str(args.family),
        "n": fam.n,
        "count": fam.count,
        "upward_closed": is_upward_closed(fam),
        "measure": rat(mu),
        "measure_dec": dec10(mu),
    }
    return _report("measure", {"p": rat(args.p)}, results, {})


def _cmd_closure(args) -> tuple[dict, int]:
    raw = parse_upset(Path(args.family).read_text(), close=False)
    closed = up_closure(raw)
    text = format_upset(closed)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
        return {"schema": 1, "verb": "closure"}, 0
    results = {
        "family": str(args.family),
        "n": raw.n,
        "generators": raw.count,
        "closed_count": closed.count,
        "was_already_closed": raw.bits == closed.bits,
        "out": str(args.out),
    }
    return _report("closure", {}, results, {})


# ----------------------------------------------------------- bound / lp


def _cmd_bound(args) -> tuple[dict, int]:
    if args.sweep:
        rows = []
        for i in range(args.sweep + 1):
            rho = Fraction(i, args.sweep)
            v = bounds.s1_upper_bound(rho)
            rows.append({"rho": rat(rho), "bound": rat(v), "bound_dec": dec10(v)})
        return _report("bound", {"sweep": args.sweep}, {"rows": rows}, {})
    if args.rho is None:
        raise InvalidParams("bound needs --rho or --sweep")
    v = bounds.s1_upper_bound(args.rho)
    results = {"bound": rat(v), "bound_dec": dec10(v)}
    if args.maximize_tol is not None:
        rho_star, value = bounds.bound_maximizer(args.maximize_tol)
        results["maximizer_rho"] = rat(rho_star)
        results["maximizer_rho_dec"] = dec10(rho_star)
        results["maximizer_value"] = rat(value)
        results["maximizer_value_dec"] = dec10(value)
    return _report("bound", {"rho": rat(args.rho)}, results, {})


def _cmd_lp(args) -> tuple[dict, int]:
    sol = bounds.lp_max_s1(args.rho)
    closed = bounds.s1_upper_bound(args.rho)
    results = {
        "profile": [rat(v) for v in sol.profile],
        "profile_dec": [dec10(v) for v in sol.profile],
        "objective": rat(sol.objective),
        "objective_dec": dec10(sol.objective),
        "tight_constraints": list(sol.tight),
        "closed_form": rat(closed),
    }
    verdicts = {"matches_closed_form": sol.objective == closed}
    return _report("lp", {"rho": rat(args.rho)}, results, verdicts)


def _cmd_qcurve(args) -> tuple[dict, int]:
    if args.points:
        grid = [Fraction(tok) for tok in args.points.split(",")]
    elif args.grid:
        grid = [Fraction(i, args.grid) for i in range(args.grid + 1)]
    else:
        raise InvalidParams("qcurve needs --grid or --points")
    rows = [
        {"p": rat(p), "q": rat(q), "q_dec": dec10(q)}
        for p, q in constructions.qcurve(args.n, args.l, grid)
    ]
    return _report("qcurve", {"n": args.n, "l": args.l}, {"rows": rows}, {})


# ---------------------------------------------------------------- build


def _cmd_build(args) -> tuple[dict, int]:
    out = Path(args.out) if args.out else None
    if args.target == "q21":
        triple, rep = lift.build_q21(workers=args.threads)
        files = None
        if out and not args.no_families:
            files = _write_triple(triple, out, "q21")
        return _q21_report("build", rep, triple, files)

    if args.target in ("dictator", "threshold"):
        if args.target == "dictator":
            if args.i is None:
                raise InvalidParams("build dictator needs --i")
            fam = constructions.dictator(args.n, args.i)
            params = {"n": args.n, "i": args.i}
        else:
            if args.l is None:
                raise InvalidParams("build threshold needs --l")
            fam = constructions.threshold(args.n, args.l)
            params = {"n": args.n, "l": args.l}
        stem = "_".join([args.target] + [f"{k}{v}" for k, v in params.items()])
        results = {
            "count": fam.count,
            "upward_closed": is_upward_closed(fam),
            "upset_text": format_upset(fam),
        }
        if out:
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"{stem}.upset"
            write_upset(fam, path)
            results["files"] = [str(path)]
        return _report("build", {"target": args.target, **params}, results, {})

    if args.target == "q5":
        triple = constructions.q5_triple()
        params = {"target": "q5"}
    else:  # kahn
        triple = constructions.kahn_triple(constructions.ConstructionParams(args.n, args.l))
        params = {"target": "kahn", "n": args.n, "l": args.l}
    results = {"label": triple.label, "counts": [triple.x.count, triple.y.count, triple.z.count]}
    if out:
        results["files"] = _write_triple(triple, out, triple.label.split("(")[0])
    verdicts = {
        "families_upward_closed": all(is_upward_closed(f) for f in (triple.x, triple.y, triple.z))
    }
    return _report("build", params, results, verdicts)


# ---------------------------------------------------------------- search


def _cmd_search(args) -> tuple[dict, int]:
    kind = {"s1": "s1_density", "min-part": "min_part_density"}[args.objective]
    objective = search.SearchObjective(kind=kind, bias=args.p)
    seeds = list(range(args.seed, args.seed + args.restarts))
    result = search.best_of_restarts(
        args.n, args.rho, objective, seeds, max_iters=args.iters, stop_at=args.stop_at
    )
    triple = result.triple
    prof = occupancy(triple.x, triple.y, triple.z, objective.bias)
    bound = bounds.s1_upper_bound(args.rho)
    parts = search.part_measures(triple, objective.bias)
    results = {
        "label": triple.label,
        "value": rat(result.value),
        "value_dec": dec10(result.value),
        "iterations": result.iterations,
        "winning_seed": result.seed,
        "counts": [triple.x.count, triple.y.count, triple.z.count],
        "s1": rat(prof.s1),
        "part_measures": [rat(v) for v in parts],
        "bound_at_rho": rat(bound),
    }
    if args.out:
        results["files"] = _write_triple(triple, Path(args.out), f"search_n{args.n}")
    verdicts = {
        "families_upward_closed": all(
            is_upward_closed(f) for f in (triple.x, triple.y, triple.z)
        ),
        "equal_counts": len(set(results["counts"])) == 1,
        "s1_within_bound": prof.s1 <= bound,
    }
    return _report(
        "search",
        {
            "n": args.n,
            "rho": rat(args.rho),
            "objective": args.objective,
            "p": rat(args.p),
            "seed": args.seed,
            "restarts": args.restarts,
            "iters": args.iters,
        },
        results,
        verdicts,
    )


# ---------------------------------------------------------------- poset


def _cmd_poset(args) -> tuple[dict, int]:
    if args.diamond:
        poset = posets.diamond_poset(args.p)
        params = {"diamond": True, "p": rat(args.p)}
    elif args.file:
        poset = posets.load_poset(args.file)
        params = {"file": str(args.file)}
    else:
        raise InvalidParams("poset needs --diamond or --file")
    upsets = posets.enumerate_upsets(poset)
    min_defect, (u, v) = posets.poset_hk_scan(poset)
    results = {
        "elements": list(poset.elements),
        "weights": [rat(w) for w in poset.weights],
        "upset_count": len(upsets),
        "min_defect": rat(min_defect),
        "min_defect_dec": dec10(min_defect),
        "witness_pair": [list(poset.labels_of(u)), list(poset.labels_of(v))],
    }
    verdicts = {"min_defect_nonneg": min_defect >= 0}
    notes = None
    if args.diamond:
        p = Fraction(args.p)
        idx = {e: i for i, e in enumerate(poset.elements)}
        pair_defect = posets.poset_hk_defect(
            poset,
            1 << idx["A"] | 1 << idx["p1"] | 1 << idx["p2"],
            1 << idx["A"] | 1 << idx["p1"] | 1 << idx["p3"],
        )
        two_masks = [1 << idx["A"] | 1 << idx[f"p{i}"] for i in (1, 2, 3)]
        prof2 = posets.poset_occupancy(poset, *two_masks)
        three_masks = [
            (1 << idx["A"]) | sum(1 << idx[f"p{j}"] for j in (1, 2, 3) if j != i)
            for i in (1, 2, 3)
        ]
        prof3 = posets.poset_occupancy(poset, *three_masks)
        lp_profile = bounds.optimal_profile(p)
        results["size3_pair_defect"] = rat(pair_defect)
        results["two_element_triple_occupancy"] = [rat(s) for s in prof2]
        results["three_element_triple_occupancy"] = [rat(s) for s in prof3]
        results["lp_optimal_profile"] = [rat(s) for s in lp_profile]
        verdicts["size3_pair_defect_formula"] = (
            pair_defect == p * (1 - p) ** 2 / (1 + p) ** 2
        )
        verdicts["two_element_triple_matches_lp"] = prof2 == lp_profile
        notes = [
            "the three two-element upsets {A,p_i} each have weight exactly p and realize "
            "the LP-optimal profile; the three-element triple yields the transposed "
            "profile (s1 and s2 swapped)"
        ]
    return _report("poset", params, results, verdicts, notes)


# ------------------------------------------------------------- hk-random


def _cmd_hk_random(args) -> tuple[dict, int]:
    if args.n > 12:
        raise InvalidParams(f"hk-random capped at n=12, got {args.n}")
    if args.trials < 1:
        raise InvalidParams("need at least one trial")
    rng = random.Random(args.seed)
    worst: tuple[Fraction, int, Family, Family] | None = None
    for t in range(args.trials):
        x = random_upset(args.n, rng)
        y = random_upset(args.n, rng)
        d = hk_defect(x, y, args.p)
        if worst is None or d < worst[0]:
            worst = (d, t, x, y)
    assert worst is not None
    d, t, x, y = worst
    results = {
        "trials": args.trials,
        "min_defect": rat(d),
        "min_defect_dec": dec10(d),
        "witness_trial": t,
        "witness_counts": [x.count, y.count],
        "witness_measures": [rat(measure(x, args.p)), rat(measure(y, args.p))],
    }
    verdicts = {"all_defects_nonneg": d >= 0}
    return _report(
        "hk-random",
        {"n": args.n, "seed": args.seed, "p": rat(args.p)},
        results,
        verdicts,
    )


# ------------------------------------------------------------- plumbing


def _flatten(prefix: str, obj, lines: list[str]) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, lines)
    elif isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            lines.append(f"{prefix} = {', '.join(map(str, obj)) if obj else '[]'}")
        else:
            for i, v in enumerate(obj):
                _flatten(f"{prefix}[{i}]", v, lines)
    else:
        lines.append(f"{prefix} = {obj}")


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2))
    elif fmt == "text":
        lines: list[str] = []
        _flatten("", report, lines)
        print("\n".join(lines))
    else:  # csv
        rows = report.get("results", {}).get("rows")
        if not rows:
            raise InvalidParams("csv output is only available for sweep/qcurve reports")
        writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="upcube",
        description="exact-rational toolkit for monotone set systems on the biased cube",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "text", "csv"), default="json", help="report format"
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_parser(name: str, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("verify", help="re-check a named construction's claims")
    p.add_argument("target", choices=("q5", "kahn", "q21"))
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--l", type=int, default=3)
    p.add_argument("--p", type=_rat_arg, default=Fraction(1, 2))
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(handler=_cmd_verify)

    p = add_parser("measure", help="biased measure of a .upset family")
    p.add_argument("--family", required=True)
    p.add_argument("--p", type=_rat_arg, default=Fraction(1, 2))
    p.set_defaults(handler=_cmd_measure)

    p = add_parser("closure", help="upward closure of a .upset generator file")
    p.add_argument("family")
    p.add_argument("--out", help="write closed .upset here (default: stdout)")
    p.set_defaults(handler=_cmd_closure)

    p = add_parser("bound", help="closed-form s1 upper bound")
    p.add_argument("--rho", type=_rat_arg)
    p.add_argument("--sweep", type=int, help="evaluate on the grid i/K, i=0..K")
    p.add_argument(
        "--maximize-tol",
        type=_rat_arg,
        help="also locate the bound's maximizer to this tolerance",
    )
    p.set_defaults(handler=_cmd_bound)

    p = add_parser("lp", help="exact occupancy LP at a common density")
    p.add_argument("--rho", type=_rat_arg, required=True)
    p.set_defaults(handler=_cmd_lp)

    p = add_parser("qcurve", help="sample the closed-form q(n,l,p)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--grid", type=int)
    p.add_argument("--points", help="comma-separated biases, e.g. 1/3,3/8")
    p.set_defaults(handler=_cmd_qcurve)

    p = add_parser("build", help="construct named families / triples")
    p.add_argument("target", choices=("dictator", "threshold", "q5", "kahn", "q21"))
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--l", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--out", help="directory for .upset artifacts")
    p.add_argument("--no-families", action="store_true", help="suppress .upset emission")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(handler=_cmd_build)

    p = add_parser("search", help="hill-climb triples of equal-count upsets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rho", type=_rat_arg, required=True)
    p.add_argument("--objective", choices=("s1", "min-part"), default="s1")
    p.add_argument("--p", type=_rat_arg, default=Fraction(1, 2))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=100_000)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--stop-at", type=_rat_arg, help="stop once the objective reaches this value")
    p.add_argument("--out", help="directory for the winning triple's .upset files")
    p.set_defaults(handler=_cmd_search)

    p = add_parser("poset", help="enumerate upsets and scan correlation defects")
    p.add_argument("--diamond", action="store_true", help="use the built-in diamond poset")
    p.add_argument("--p", type=_rat_arg, default=Fraction(1, 2))
    p.add_argument("--file", help="poset description JSON")
    p.set_defaults(handler=_cmd_poset)

    p = add_parser("hk-random", help="correlation defect on seeded random upset pairs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=_rat_arg, default=Fraction(1, 2))
    p.set_defaults(handler=_cmd_hk_random)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = args.handler(args)
        if report.get("verb") == "closure" and "results" not in report:
            return code  # raw .upset already streamed to stdout
        _emit(report, args.format)
        return code
    except UpcubeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def app() -> None:
    sys.exit(main())


if __name__ == "__main__":
    app()
