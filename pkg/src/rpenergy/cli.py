"""Command-line interface.

Subcommands: constants, energy, deform, bounds, graph, verify.  Output is
JSON (default) or CSV with fixed column sets; identical command lines
produce byte-identical bytes.  Exit codes: 0 success, 1 verification
failure, 2 argument error, 3 model-precondition error.  Configuration comes
only from flags; no environment variables are read.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import verify as verify_mod
from .bounds import HomotopyClassData, bounds_report, constant_C, constant_D, prop5_ratio
from .deformations import deformed_energy, graph_inflation_report
from .energy_estimators import (
    EnergyEstimate,
    croke_energy,
    default_samples,
    direct_energy,
    slice_energy,
    split_slice_budget,
)
from .errors import ModelError
from .map_model import SmoothMap, catalog, restrict_to_equator
from .spherical_geometry import sphere_volume

N_MIN, N_MAX = 2, 12

METHODS = ("direct", "croke", "slice")

ENERGY_COLUMNS = ("value", "std_error", "samples", "method", "map", "n", "k", "seed")
DEFORM_COLUMNS = ("t", "E_total", "E_cap", "E_retract", "se_total")
GRAPH_COLUMNS = ("r", "energy", "area", "se_energy", "se_area")
CONSTANTS_COLUMNS = ("n", "sigma_n", "C_n", "D_n", "ratio_thm1", "ratio_prop5")
BOUNDS_COLUMNS = ("n", "sigma_n", "C_n", "D_n", "lower_thm1", "upper_thm1",
                  "lower_thm2", "lower_prop5", "upper_prop5", "pu_consistent",
                  "ratio_thm1", "ratio_prop5", "prop5_reason")


def _n_in_range(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"n must be an integer, got {text!r}")
    if not N_MIN <= n <= N_MAX:
        raise argparse.ArgumentTypeError(f"n must be in [{N_MIN}, {N_MAX}], got {n}")
    return n


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _real_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}")


def parse_map_spec(text: str) -> tuple[str, dict]:
    """Parse "name" or "name:key=val,key=val"; values become int when they
    parse as one, float when they parse as one, and stay strings otherwise."""
    name, sep, tail = text.partition(":")
    if not name:
        raise ValueError(f"empty map name in {text!r}")
    params: dict = {}
    if sep and tail:
        for item in tail.split(","):
            key, eq, raw = item.partition("=")
            if not eq or not key or raw == "":
                raise ValueError(f"malformed map parameter {item!r} in {text!r}")
            try:
                value: object = int(raw)
            except ValueError:
                try:
                    value = float(raw)
                except ValueError:
                    value = raw
            params[key] = value
    return name, params


def _fmt(value: object) -> str:
    """CSV cell formatting: full-precision floats, lowercase booleans, empty
    string for missing values."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv(columns: tuple, rows: list[dict]) -> str:
    lines = [",".join(columns)]
    lines.extend(",".join(_fmt(row.get(col)) for col in columns) for row in rows)
    return "\n".join(lines) + "\n"


def _json(payload: object) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    sys.stdout.write(text)
    if out_path is not None:
        with open(out_path, "w") as fh:
            fh.write(text)


def _drop_none(row: dict) -> dict:
    return {k: v for k, v in row.items() if v is not None}


# ---------------------------------------------------------------------------
# subcommands

def cmd_constants(args: argparse.Namespace) -> int:
    n = args.n
    row = {
        "n": n,
        "sigma_n": sphere_volume(n),
        "C_n": constant_C(n),
        "D_n": constant_D(n) if n >= 3 else None,
        "ratio_thm1": 2.0 * (n - 1) / n,
        "ratio_prop5": prop5_ratio(n) if n >= 3 else None,
    }
    if args.output == "csv":
        _emit(_csv(CONSTANTS_COLUMNS, [row]), args.out)
    else:
        _emit(_json(_drop_none(row)), args.out)
    return 0


def _estimate(F: SmoothMap, method: str, k: int, samples: int | None,
              seed: int) -> EnergyEstimate:
    if method == "direct":
        return direct_energy(F, "auto", samples, seed)
    if method == "croke":
        return croke_energy(F, "auto", samples, seed)
    planes, per_plane = split_slice_budget(
        samples if samples is not None else default_samples(F.domain_dim))
    return slice_energy(F, k, planes, per_plane, seed)


def cmd_energy(args: argparse.Namespace) -> int:
    map_id, params = parse_map_spec(args.map)
    F = catalog(map_id, args.n, **params)
    est = _estimate(F, args.method, args.k, args.samples, args.seed)
    row = {
        "value": est.value,
        "std_error": est.std_error,
        "samples": est.samples,
        "method": est.method,
        "map": F.name,
        "n": args.n,
        "k": args.k if args.method == "slice" else None,
        "seed": args.seed,
    }
    if args.output == "csv":
        _emit(_csv(ENERGY_COLUMNS, [row]), args.out)
    else:
        _emit(_json(_drop_none(row)), args.out)
    return 0


def cmd_deform(args: argparse.Namespace) -> int:
    map_id, params = parse_map_spec(args.map)
    F = catalog(map_id, args.n, **params)
    n = F.domain_dim
    if n < 3:
        raise ValueError(
            f"deform needs a domain of dimension >= 3 (the limit formula is "
            f"undefined below), got {n}")
    rows = []
    for t in args.t_grid:
        d = deformed_energy(F, t, args.samples, args.seed)
        rows.append({
            "t": d.t,
            "E_total": d.total.value,
            "E_cap": d.cap_value,
            "E_retract": d.retract_value,
            "se_total": d.total.std_error,
        })
    ratio = sphere_volume(n - 2) / sphere_volume(n - 3)
    base = direct_energy(restrict_to_equator(F), "projective", args.samples, args.seed)
    rows.append({
        "t": "limit",
        "E_total": ratio * base.value,
        "E_cap": None,
        "E_retract": None,
        "se_total": ratio * base.std_error,
    })
    if args.output == "csv":
        _emit(_csv(DEFORM_COLUMNS, rows), args.out)
    else:
        _emit(_json({"map": F.name, "n": n, "rows": [_drop_none(r) for r in rows]}),
              args.out)
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    data = HomotopyClassData(n=args.n, area_star=args.area_star,
                             length_star=args.length_star, beta=args.beta)
    report = bounds_report(data)
    if args.output == "csv":
        d = report.to_dict()
        row = {col: d.get(col) for col in BOUNDS_COLUMNS}
        row["ratio_thm1"] = report.ratios["thm1"]
        row["ratio_prop5"] = report.ratios.get("prop5")
        _emit(_csv(BOUNDS_COLUMNS, [row]), args.out)
    else:
        _emit(_json(report.to_dict()), args.out)
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    map_id, params = parse_map_spec(args.map)
    base = catalog(map_id, 2, **params)
    table = graph_inflation_report(base, args.r_grid, args.samples, args.seed)
    rows = [{
        "r": row.r,
        "energy": row.energy.value,
        "area": row.area.value,
        "se_energy": row.energy.std_error,
        "se_area": row.area.std_error,
    } for row in table]
    if args.output == "csv":
        _emit(_csv(GRAPH_COLUMNS, rows), args.out)
    else:
        _emit(_json({"map": base.name, "rows": rows}), args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    checks = verify_mod.run_suite(args.suite, args.seed, args.samples)
    lines = verify_mod.report_lines(args.suite, checks, args.seed)
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if all(c.ok for c in checks) else 1


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rpenergy",
        description="Monte Carlo energy estimators, energy-reducing "
                    "deformations, and sharp bound constants for maps of "
                    "real projective spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, samples: bool = True) -> None:
        p.add_argument("--output", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="also write the report to this file")
        if samples:
            p.add_argument("--samples", type=_positive_int, default=None)
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("constants", help="bound constants and ratios for one n")
    p.add_argument("--n", type=_n_in_range, default=3)
    add_common(p, samples=False)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("energy", help="estimate the energy of a catalog map")
    p.add_argument("--n", type=_n_in_range, default=3)
    p.add_argument("--map", default="identity",
                   help="map id, optionally with parameters: name:key=val,...")
    p.add_argument("--method", choices=METHODS, default="direct")
    p.add_argument("--k", type=_positive_int, default=1,
                   help="slice dimension (slice method only)")
    add_common(p)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("deform", help="energy along the cap-and-retract deformation")
    p.add_argument("--n", type=_n_in_range, default=3)
    p.add_argument("--map", default="identity")
    p.add_argument("--t-grid", type=_real_list, default=[1.0, 2.0, 5.0, 10.0, 50.0],
                   dest="t_grid")
    add_common(p)
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("bounds", help="evaluate the energy bounds for given invariants")
    p.add_argument("--n", type=_n_in_range, default=3)
    p.add_argument("--area-star", type=float, default=None, dest="area_star")
    p.add_argument("--length-star", type=float, default=None, dest="length_star")
    p.add_argument("--beta", type=float, default=None)
    add_common(p, samples=False)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("graph", help="energy and area of graph maps over the sphere")
    p.add_argument("--map", default="identity", help="base surface map")
    p.add_argument("--r-grid", type=_real_list, default=[0.5, 0.2, 0.1, 0.05],
                   dest="r_grid")
    add_common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("verify", help="run the invariant self-check suites")
    p.add_argument("--suite", choices=verify_mod.SUITES, default="all")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ModelError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"argument error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
