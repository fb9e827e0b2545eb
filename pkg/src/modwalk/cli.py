"""Command-line surface.

Exit codes: 0 success, 2 invalid input, 3 degenerate step distribution,
4 solver contradiction, 5 unresolved-path fraction exceeded.  The
environment variable ``MODWALK_SEED`` supplies ``--seed`` when the flag is
absent.  Rationals are accepted and emitted as ``p/q`` strings alongside
full-precision decimals.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .boundary import Cylinder
from .denjoy import DenjoyParams, cylinder_mass, question_mark
from .group import GroupMeasure, parse_word
from .mediant import (
    LRCode,
    cf_to_lr,
    cf_value,
    lr_to_cf,
    lr_to_interval,
    rational_to_lr,
)
from .montecarlo import (
    SimConfig,
    UnresolvedPathsError,
    compare_with_analytic,
    simulate,
)
from .solver import (
    DegenerateStepError,
    SolverContradictionError,
    StepOnS,
    denjoy_membership_residual,
    example_ex0,
    example_ex1,
    example_ex2,
    harmonic_params,
    membership_alpha_roots,
    minkowski_residual,
    nn_step,
    residual,
    solve_master,
)

__all__ = ["main"]


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r} ({exc})") from exc


def _step_from_json(text: str) -> StepOnS:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("step distribution must be a JSON object")
    return StepOnS.from_json_dict(data)


def _measure_from_json(text: str) -> GroupMeasure:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("measure must be a JSON object")
    m = GroupMeasure.from_json_dict(data)
    if not m.is_probability():
        raise ValueError(f"measure must have total mass 1, got {m.total_mass}")
    return m


def _maybe_exact(value) -> str | None:
    return str(value) if isinstance(value, Fraction) else None


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("MODWALK_SEED", "1"))


def _cmd_solve(args) -> str:
    mu = _step_from_json(args.mu)
    triple = solve_master(mu, args.tol)
    res = residual(mu, triple)
    mink = minkowski_residual(mu)
    alpha = triple.y
    p = triple.x / (1 + triple.x)
    if args.format == "csv":
        row = [triple.x, triple.y, triple.ybar, alpha, p, *res, mink]
        return (
            "x,y,ybar,alpha,p,residual1,residual2,residual3,minkowski_residual\n"
            + ",".join(repr(float(v)) for v in row)
        )
    payload = {
        "x": float(triple.x),
        "y": float(triple.y),
        "ybar": float(triple.ybar),
        "alpha": float(alpha),
        "p": float(p),
        "residuals": [float(r) for r in res],
        "minkowski_residual": float(mink),
        "exact": {
            k: s
            for k, s in {
                "x": _maybe_exact(triple.x),
                "y": _maybe_exact(triple.y),
                "ybar": _maybe_exact(triple.ybar),
                "alpha": _maybe_exact(alpha),
                "p": _maybe_exact(p),
                "minkowski_residual": str(mink),
            }.items()
            if s is not None
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def _cmd_classify(args) -> str:
    mu = _step_from_json(args.mu)
    defect = denjoy_membership_residual(mu, args.alpha)
    params = harmonic_params(mu)
    payload = {
        "alpha": float(args.alpha),
        "residual": float(defect),
        "residual_exact": str(defect),
        "is_member": abs(float(defect)) <= args.tol,
        "tol": args.tol,
        "harmonic_alpha": float(params.alpha),
        "harmonic_p": float(params.p),
        "roots_in_unit_interval": list(membership_alpha_roots(mu)),
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def _cmd_simulate(args) -> str:
    mu = _measure_from_json(args.mu)
    cfg = SimConfig(
        paths=args.paths,
        steps=args.steps,
        seed=_seed(args),
        depth=args.depth,
        allow_short_steps=args.allow_short_steps,
    )
    targets = [parse_word(t) for t in args.targets.split(",") if t] if args.targets else []
    report = simulate(mu, cfg, targets=targets)
    if args.format == "csv":
        return report.to_csv().rstrip("\n")
    return report.to_json()


def _cmd_qmark(args) -> str:
    value = question_mark(args.x, args.depth)
    payload = {
        "x": str(args.x),
        "depth": args.depth,
        "dyadic": str(value),
        "decimal": float(value),
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def _code_dict(code: LRCode) -> dict:
    return {"stem": code.stem, "tail": code.tail}


def _interval_dict(word: str) -> dict:
    iv = lr_to_interval(word)
    return {
        "interval": {"left": str(iv.left), "right": str(iv.right)},
        "mediant": str(iv.mediant()),
    }


def _cmd_encode(args) -> str:
    given = [name for name in ("rational", "lr", "cf") if getattr(args, name) is not None]
    if len(given) != 1:
        raise ValueError("pass exactly one of --rational, --lr, --cf")
    if args.rational is not None:
        codes = rational_to_lr(args.rational)
        payload = {
            "rational": str(args.rational),
            "stem": codes.stem,
            "codes": {"left": _code_dict(codes.left), "right": _code_dict(codes.right)},
            "cf": list(lr_to_cf(codes.right)),
            **_interval_dict(codes.stem),
        }
    elif args.lr is not None:
        payload = {
            "lr": args.lr,
            "cf": list(lr_to_cf(args.lr)),
            **_interval_dict(args.lr),
        }
    else:
        text = args.cf.strip()
        digits = json.loads(text) if text.startswith("[") else [int(d) for d in text.split(",") if d.strip()]
        if not isinstance(digits, list) or not all(isinstance(d, int) for d in digits):
            raise ValueError("--cf takes a JSON array of integers or a comma list")
        word = cf_to_lr(digits)
        payload = {"cf": digits, "lr": word}
        if digits:
            payload["value"] = str(cf_value(digits))
    return json.dumps(payload, indent=2, sort_keys=True)


def _cmd_measure(args) -> str:
    params = DenjoyParams(args.alpha, args.p)
    cyl = Cylinder.canonical(parse_word(args.cylinder))
    mass = cylinder_mass(params, cyl)
    payload = {
        "alpha": str(args.alpha),
        "p": str(args.p),
        "cylinder": str(cyl),
        "mass": float(mass),
        "mass_exact": str(mass),
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def _grid_rejection(report, alpha: float) -> dict:
    best_p, best_z = None, None
    for k in range(1, 100):
        p = k / 100
        table = compare_with_analytic(report, DenjoyParams(alpha, p))
        if best_z is None or table.max_abs_z < best_z:
            best_p, best_z = p, table.max_abs_z
    return {"alpha": alpha, "min_over_p_of_max_abs_z": best_z, "weakest_p": best_p}


def _cmd_example(args) -> str:
    if args.name == "ex0":
        report = example_ex0(ts=(args.t,))
        payload = report.as_dict()
        mixed = report.pair[0].combine(report.pair[1], args.t)
        compound_measure = nn_step(mixed).to_group_measure()
        target_alpha = report.alpha_common
    elif args.name == "ex1":
        report = example_ex1(args.bbar, args.bbar2, args.t)
        payload = report.as_dict()
        compound_measure = report.combination.to_group_measure()
        target_alpha = 0.5
    else:
        report = example_ex2(args.bbar)
        payload = report.as_dict()
        compound_measure = report.mu_prime.to_group_measure()
        target_alpha = 0.5
    if args.simulate:
        cfg = SimConfig(paths=args.paths, steps=args.steps, seed=_seed(args), depth=args.depth)
        sim = simulate(compound_measure, cfg)
        mu_prime_params = harmonic_params(StepOnS.from_group_measure(compound_measure))
        own = compare_with_analytic(sim, mu_prime_params)
        payload["simulation"] = {
            "paths": cfg.paths,
            "steps": cfg.steps,
            "seed": cfg.seed,
            "depth": cfg.depth,
            "vs_harmonic_max_abs_z": own.max_abs_z,
            "class_rejection": _grid_rejection(sim, target_alpha),
        }
    return json.dumps(payload, indent=2, sort_keys=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modwalk",
        description="Harmonic measures of random walks on the modular group Z2 * Z3",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="passage probabilities and harmonic parameters")
    p.add_argument("--mu", required=True, help='step weights, e.g. \'{"a":"1/3","b":"1/3","bb":"1/3"}\'')
    p.add_argument("--tol", type=float, default=1e-15)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("classify", help="membership residual for a Denjoy class")
    p.add_argument("--mu", required=True)
    p.add_argument("--alpha", type=_fraction, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("simulate", help="Monte Carlo passage and cylinder estimates")
    p.add_argument("--mu", required=True, help='measure as word weights, e.g. \'{"a":"1/3","ba":"2/3"}\'')
    p.add_argument("--paths", type=int, default=100_000)
    p.add_argument("--steps", type=int, default=400)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--seed", type=int, default=None, help="default: $MODWALK_SEED, else 1")
    p.add_argument("--targets", default="", help="comma-separated words")
    p.add_argument("--allow-short-steps", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("qmark", help="Minkowski question-mark function at a rational")
    p.add_argument("--x", type=_fraction, required=True)
    p.add_argument("--depth", type=int, default=64)
    p.set_defaults(handler=_cmd_qmark)

    p = sub.add_parser("encode", help="rational / LR-word / continued-fraction conversions")
    p.add_argument("--rational", type=_fraction)
    p.add_argument("--lr")
    p.add_argument("--cf")
    p.set_defaults(handler=_cmd_encode)

    p = sub.add_parser("measure", help="cylinder mass of a Denjoy-family measure")
    p.add_argument("--alpha", type=_fraction, required=True)
    p.add_argument("--p", type=_fraction, required=True)
    p.add_argument("--cylinder", required=True)
    p.set_defaults(handler=_cmd_measure)

    p = sub.add_parser("example", help="compound-walk counterexample reports")
    p.add_argument("name", choices=("ex0", "ex1", "ex2"))
    p.add_argument("--t", type=_fraction, default=Fraction(1, 2))
    p.add_argument("--bbar", type=_fraction, default=Fraction(1, 2))
    p.add_argument("--bbar2", type=_fraction, default=Fraction(1, 3))
    p.add_argument("--simulate", action="store_true")
    p.add_argument("--paths", type=int, default=100_000)
    p.add_argument("--steps", type=int, default=400)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(handler=_cmd_example)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        output = args.handler(args)
    except DegenerateStepError as exc:
        print(f"error: degenerate step distribution: {exc}", file=sys.stderr)
        return 3
    except SolverContradictionError as exc:
        print(f"error: solver contradiction: {exc}", file=sys.stderr)
        return 4
    except UnresolvedPathsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return 2
    print(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
