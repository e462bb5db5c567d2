"""Command-line front end.

Exit codes: 0 success, 2 configuration or usage error, 3 numeric guard
violation. Reports go to stdout unless ``--out`` names a file.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import container, reports
from .errors import ConfigError, GuardError
from .fourier import GridFunction, GridSpec, Partition, SymbolGrid, apply_multiplier, make_symbol, PRESETS
from .fourier import regularity_profile
from .geometry import (ReciprocalExponents, SmoothnessProfile, as_fraction, check_admissible, enumerate_vertices,
                       hull_membership, interpolation_split)
from .hardy import DyadicCube, cz_decompose, make_atom
from .probes import _param, parse_config, ratio_probe, sharpness_sweep

EXIT_OK, EXIT_CONFIG, EXIT_GUARD = 0, 2, 3


class UsageError(ConfigError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fraction_list(text: str) -> list[Fraction]:
    return [as_fraction(v.strip()) for v in text.split(",") if v.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def _params(pairs) -> dict:
    out = {}
    for pair in pairs or ():
        key, sep, value = pair.partition("=")
        if not sep:
            raise ConfigError(f"--param expects key=value, got {pair!r}")
        out[key.strip()] = _param(value)
    return out


def _add_globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--seed", type=int, **(default or {"default": None}), help="master seed")
    parser.add_argument("--grid-N", dest="grid_N", type=int, **(default or {"default": None}),
                        help="grid points per axis")
    parser.add_argument("--period", type=float, **(default or {"default": None}), help="torus period L")
    parser.add_argument("--out", **(default or {"default": None}), help="write the report to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mlmult", description="Multilinear Fourier multiplier toolkit")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _add_globals(p, suppress=True)
        return p

    p = add("region", "vertices, membership and interpolation paths of the admissible region")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--s", required=True, help="smoothness vector, e.g. 1,3/2")
    p.add_argument("--point", help="reciprocal exponents 1/p_i to test, e.g. 1/2,1/2")
    p.add_argument("--paths", action="store_true", help="also emit the interpolation tree for --point")
    p.add_argument("--emit", choices=("json", "csv"), default="json")

    p = add("norm", "regularity constant A of a preset symbol")
    p.add_argument("--preset", default="mikhlin_component", choices=sorted(PRESETS))
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--s", required=True)
    p.add_argument("--jmin", type=int, default=-4)
    p.add_argument("--jmax", type=int, default=4)

    p = add("apply", "evaluate T_sigma on inputs stored in binary containers")
    p.add_argument("--input", action="append", required=True, help="one container per input slot")
    p.add_argument("--symbol", help="dense symbol container (instead of --preset)")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--param", action="append", metavar="KEY=VALUE")

    for name, help_ in (("probe", "operator-norm ratio probe"), ("sweep", "sharpness sweep across a facet")):
        p = add(name, help_)
        p.add_argument("--config", required=True)
        p.add_argument("--trials", type=int)
        p.add_argument("--emit", choices=("json", "csv"), default="json")

    p = add("cz", "Calderon-Zygmund decomposition demo")
    p.add_argument("--height", type=float, default=2.0)
    p.add_argument("--input", help="grid function container (default: 8 chi_[0,1/8) on [0,1))")
    p.add_argument("--emit", choices=("json", "csv", "text"), default="json")

    p = add("atom", "construct and verify an H^p atom")
    p.add_argument("--p", default="1")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--level", type=int, default=2)
    p.add_argument("--coords", default=None, help="cube coordinates (default: zeros)")
    p.add_argument("--order", type=int)
    return parser


def _grid(args, n: int, N: int, L: float) -> GridSpec:
    return GridSpec(n, args.grid_N or N, args.period or L)


def _cmd_region(args) -> str:
    s = _fraction_list(args.s)
    if args.m is not None and args.m != len(s):
        raise ConfigError(f"--m {args.m} but --s has {len(s)} entries")
    profile = SmoothnessProfile(args.n, s)
    vs = enumerate_vertices(profile)
    doc = {"region": reports.vertex_set_doc(vs)}
    if args.point:
        r = ReciprocalExponents(_fraction_list(args.point))
        doc["point"] = list(r)
        doc["admissible"] = check_admissible(profile, r)
        doc["membership"] = reports.certificate_doc(hull_membership(vs, r))
        if args.paths:
            doc["path"] = reports.path_doc(interpolation_split(r, profile))
    elif args.paths:
        raise ConfigError("--paths needs --point")
    if args.emit == "csv":
        return reports.csv_table([f"r{i}" for i in range(profile.m)], vs)
    return reports.dumps(doc)


def _cmd_norm(args) -> str:
    grid = _grid(args, args.n, 32, 8.0)
    sigma = make_symbol(args.preset, grid, args.m, **_params(args.param))
    profile = SmoothnessProfile(args.n, _fraction_list(args.s))
    by_scale = regularity_profile(sigma, profile, Partition(args.jmin, args.jmax))
    return reports.dumps({
        "symbol": sigma.name, "grid": {"n": grid.n, "N": grid.N, "L": grid.L}, "s": list(profile.s),
        "A": max(by_scale.values()), "by_scale": {str(j): v for j, v in by_scale.items()},
    })


def _cmd_apply(args) -> str:
    inputs = [container.load(path) for path in args.input]
    if not all(isinstance(f, GridFunction) for f in inputs):
        raise ConfigError("--input containers must hold grid functions (m = 0)")
    spec = inputs[0].spec
    if args.symbol:
        sigma = container.load(args.symbol)
        if not isinstance(sigma, SymbolGrid):
            raise ConfigError("--symbol container must hold a symbol (m > 0)")
    elif args.preset:
        sigma = make_symbol(args.preset, spec, len(inputs), **_params(args.param))
    else:
        raise ConfigError("apply needs --symbol or --preset")
    if not args.out:
        raise ConfigError("apply writes a binary container; pass --out")
    out = apply_multiplier(sigma, inputs)
    container.save(out, args.out)
    return reports.dumps({"output": str(args.out), "sup": out.norm(np.inf), "l2": out.l2()})


def _load_probe_config(args):
    text = Path(args.config).read_text()
    config = parse_config(text)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.grid_N is not None:
        overrides["N"] = args.grid_N
    if args.period is not None:
        overrides["L"] = args.period
    if args.trials is not None:
        overrides["trials"] = args.trials
    if overrides:
        config = dataclasses.replace(config, **overrides)
    return config


def _cmd_probe(args) -> str:
    report = ratio_probe(_load_probe_config(args))
    return report.to_csv() if args.emit == "csv" else report.to_json()


def _cmd_sweep(args) -> str:
    report = sharpness_sweep(_load_probe_config(args))
    return report.to_csv() if args.emit == "csv" else report.to_json()


def _cmd_cz(args) -> str:
    if args.input:
        f = container.load(args.input)
        if not isinstance(f, GridFunction):
            raise ConfigError("--input must hold a grid function")
    else:
        spec = _grid(args, 1, 64, 1.0)
        f = GridFunction.from_callable(spec, lambda x: np.where(x < spec.L / 8, 8.0, 0.0))
    cz = cz_decompose(f, args.height)
    checks = cz.check()
    if not all(checks.values()):
        failed = sorted(k for k, ok in checks.items() if not ok)
        raise GuardError(f"CZ invariants failed: {', '.join(failed)}")
    if args.emit == "csv":
        return reports.csv_table(["level", "coords"], ([c.level, " ".join(map(str, c.coords))] for c in cz.cubes))
    if args.emit == "text":
        lines = [f"height {cz.height!r}: {len(cz.cubes)} cube(s)"]
        lines += [f"  level {c.level} coords {c.coords}" for c in cz.cubes]
        lines += [f"  {k}: {'ok' if v else 'FAIL'}" for k, v in checks.items()]
        return "\n".join(lines) + "\n"
    return reports.dumps(reports.cz_doc(cz))


def _cmd_atom(args) -> str:
    spec = _grid(args, args.n, 64, 1.0)
    coords = tuple(_int_list(args.coords)) if args.coords else (0,) * args.n
    cube = DyadicCube(args.level, coords, spec.L)
    atom = make_atom(spec, cube, as_fraction(args.p), args.order, seed=args.seed)
    if not atom.is_valid():
        raise GuardError("constructed atom fails its support/size/moment checks")
    return reports.dumps(reports.atom_doc(atom))


COMMANDS = {"region": _cmd_region, "norm": _cmd_norm, "apply": _cmd_apply, "probe": _cmd_probe,
            "sweep": _cmd_sweep, "cz": _cmd_cz, "atom": _cmd_atom}


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = COMMANDS[args.command](args)
        if args.out and args.command != "apply":
            Path(args.out).write_text(text)
        else:
            stdout.write(text)
        return EXIT_OK
    except GuardError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_GUARD
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"error: {exc}", file=stderr)
        return EXIT_CONFIG
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_CONFIG
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run_cli())
