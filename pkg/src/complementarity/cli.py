"""Command-line entry point for the complementarity toolkit.

Exit codes: 0 success, 1 a check failed, 2 usage, 3 parse, 4 validation,
5 numerical non-convergence, 6 infeasible or boundary targets.
"""

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from . import channels, interferometry, invariants, matcore, maxent, states, verification
from .errors import (
    BadParameter,
    DependentConstraints,
    Infeasible,
    NumericalError,
    ValidationError,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_NUMERICAL = 5
EXIT_INFEASIBLE = 6

DEFAULT_SEED = 42
DEFAULT_TOL = 1e-12


class UsageError(Exception):
    pass


class ParseError(Exception):
    pass


def _dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _parse_params(pairs):
    params = {}
    for item in pairs or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            params[key.strip()] = float(value)
        except ValueError as exc:
            raise UsageError(f"--param {key}: not a number: {value!r}") from exc
    return params


def _load_state(args):
    if args.state and args.preset:
        raise UsageError("give either --state or --preset, not both")
    if args.state:
        text = _read(args.state)
        try:
            return states.loads_state(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.state}: {exc}") from exc
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{args.state}: malformed state: {exc}") from exc
    if args.preset:
        if args.preset not in states.PRESET_PARAMS and args.preset not in states.PRESET_ALIASES:
            raise UsageError(f"unknown preset {args.preset!r}; choose from {sorted(states.PRESET_PARAMS)}")
        return states.from_preset(args.preset, **_parse_params(args.param))
    raise UsageError("an input state is required (--state FILE or --preset NAME)")


def _parse_grid(text):
    """``start:stop:num`` (inclusive linspace) or a comma-separated list."""
    if text is None or text.strip() == "":
        return []
    try:
        if ":" in text:
            start, stop, num = text.split(":")
            return np.linspace(float(start), float(stop), int(num)).tolist()
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from exc


def _parse_populations(args):
    if args.populations and args.populations_file:
        raise UsageError("give either --populations or --populations-file")
    if args.populations_file:
        try:
            d = json.loads(_read(args.populations_file))
            return float(d["n1"]), float(d["n2"])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{args.populations_file}: {exc}") from exc
    if args.populations:
        try:
            n1, n2 = (float(x) for x in args.populations.split(","))
        except ValueError as exc:
            raise UsageError("--populations expects 'n1,n2'") from exc
        return n1, n2
    raise UsageError("populations are required (--populations n1,n2 or --populations-file)")


def cmd_analyze(args):
    report = invariants.full_invariants(_load_state(args))
    if args.format == "csv":
        _emit(args, invariants.reports_to_csv([report]))
    else:
        _emit(args, _dump_json(report.to_dict()))
    return EXIT_OK if report.residual_main <= args.tol else EXIT_CHECK_FAILED


def cmd_verify(args):
    if args.n < 1:
        raise UsageError("-n must be at least 1")
    checks = verification.closed_form_checks()
    census = verification.ginibre_census(args.n, args.seed)
    checks += census.checks(tol=args.tol)
    summary = {
        "checks": [c.to_dict() for c in checks],
        "census": asdict(census),
        "passed": all(c.passed for c in checks),
    }
    if args.format == "csv":
        lines = ["name,max_error,tol,points,passed"]
        lines += [
            f"{c.name},{invariants.format_csv(c.max_error)},{c.tol:g},{c.points},{int(c.passed)}" for c in checks
        ]
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _dump_json(summary))
    return EXIT_OK if summary["passed"] else EXIT_CHECK_FAILED


def cmd_sweep(args):
    if args.channel not in channels.KINDS:
        raise UsageError(f"unknown channel {args.channel!r}; choose from {channels.KINDS}")
    state = _load_state(args)
    traj = channels.sweep(state, args.channel, _parse_grid(args.grid))
    if args.format == "json":
        rows = [{traj.parameter: g, **r.to_dict()} for g, r in zip(traj.grid, traj.reports)]
        _emit(args, _dump_json(rows))
    else:
        _emit(args, traj.to_csv())
    return EXIT_OK


def cmd_simulate(args):
    state = _load_state(args)
    path = states.reduce_path(state)
    if args.phases:
        phases = _parse_grid(args.phases)
    elif args.n_phases:
        phases = (2 * np.pi * np.arange(args.n_phases) / args.n_phases).tolist()
    else:
        phases = list(interferometry.CANONICAL_PHASES)
    record = interferometry.synth_fringes(path, phases, I0=args.I0, noise_sigma=args.noise, seed=args.seed)
    _emit(args, record.to_csv())
    if args.populations_out:
        n1, n2 = path.populations()
        with open(args.populations_out, "w", encoding="utf-8") as fh:
            fh.write(_dump_json({"n1": n1, "n2": n2}))
    return EXIT_OK


def cmd_extract(args):
    populations = _parse_populations(args)
    try:
        record = interferometry.FringeRecord.from_csv(_read(args.fringes))
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ParseError(f"{args.fringes}: {exc}") from exc
    if args.method == "least-squares":
        result = interferometry.extract_least_squares(record, populations)
    else:
        result = interferometry.extract_four_point(record, populations)
    _emit(args, _dump_json(asdict(result)))
    return EXIT_OK


def cmd_maxent(args):
    try:
        constraints, settings = maxent.parse_problem(_read(args.problem))
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise ParseError(f"{args.problem}: {exc}") from exc
    sol = maxent.solve(constraints, settings)
    _emit(args, _dump_json(maxent.solution_to_dict(sol, constraints)))
    return EXIT_INFEASIBLE if sol.on_boundary else EXIT_OK


def cmd_sample(args):
    if args.n < 1:
        raise UsageError("-n must be at least 1")
    mats = states.ginibre_matrices(args.n, args.seed)
    dicts = [states.matrix_to_dict(states.validate(m).matrix) for m in mats]
    _emit(args, _dump_json(dicts[0] if args.n == 1 else dicts))
    return EXIT_OK


def _add_state_args(p):
    p.add_argument("--preset", help=f"preset name: {', '.join(states.PRESET_PARAMS)}")
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="preset parameter (repeatable)")
    p.add_argument("--state", metavar="FILE", help="JSON state file")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="identity residual tolerance")
    common.add_argument("--herm-tol", type=float, default=None, help="relative Hermiticity tolerance")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    parser = argparse.ArgumentParser(prog="complementarity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="invariant report of one state")
    _add_state_args(p)
    p.set_defaults(func=cmd_analyze, default_format="json")

    p = sub.add_parser("verify", parents=[common], help="closed-form cases plus a random-state census")
    p.add_argument("-n", type=int, default=10000, help="number of random states")
    p.set_defaults(func=cmd_verify, default_format="json")

    p = sub.add_parser("sweep", parents=[common], help="invariants along a channel parameter grid")
    _add_state_args(p)
    p.add_argument("--channel", required=True, help=f"one of {', '.join(channels.KINDS)}")
    p.add_argument("--grid", required=True, help="start:stop:num or comma-separated values")
    p.set_defaults(func=cmd_sweep, default_format="csv")

    p = sub.add_parser("simulate", parents=[common], help="synthesize a fringe record")
    _add_state_args(p)
    p.add_argument("--phases", help="start:stop:num or comma list (default: 0, pi/2, pi, 3pi/2)")
    p.add_argument("--n-phases", type=int, help="uniform grid of this many phases on [0, 2pi)")
    p.add_argument("--I0", type=float, default=1.0)
    p.add_argument("--noise", type=float, default=0.0, help="noise standard deviation in units of I0")
    p.add_argument("--populations-out", metavar="FILE", help="also write slit populations as JSON")
    p.set_defaults(func=cmd_simulate, default_format="csv")

    p = sub.add_parser("extract", parents=[common], help="recover invariants from a fringe CSV")
    p.add_argument("fringes", help="CSV file with header phase,intensity")
    p.add_argument("--populations", help="n1,n2")
    p.add_argument("--populations-file", metavar="FILE", help='JSON {"n1": ..., "n2": ...}')
    p.add_argument("--method", choices=("four-point", "least-squares"), default="four-point")
    p.set_defaults(func=cmd_extract, default_format="json")

    p = sub.add_parser("maxent", parents=[common], help="maximum-entropy state from constraints")
    p.add_argument("problem", help="JSON problem file")
    p.set_defaults(func=cmd_maxent, default_format="json")

    p = sub.add_parser("sample", parents=[common], help="random Ginibre states as JSON")
    p.add_argument("-n", type=int, default=1)
    p.set_defaults(func=cmd_sample, default_format="json")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.format is None:
        args.format = args.default_format
    old_tol = matcore.set_hermitian_tol(args.herm_tol) if args.herm_tol else None
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except DependentConstraints as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BadParameter as exc:
        print(f"bad parameter: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    finally:
        if old_tol is not None:
            matcore.set_hermitian_tol(old_tol)


if __name__ == "__main__":
    sys.exit(main())
