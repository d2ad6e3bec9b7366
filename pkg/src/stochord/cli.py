"""Command-line front end.

Four subcommands: ``compare`` certifies an order between two configured
systems and exports the comparison curve, ``verify-theorem`` runs one
bench scenario, ``majorize`` reports vector/matrix majorization
relations, and ``sample`` draws lifetimes and reports the KS distance
against the analytic law.

Every invocation exits 0 (success / order holds), 2 (input error), or
3 (a certified order or scenario failed). CSV files use the shortest
round-trip decimal formatting and are written atomically (temp file
plus rename), so identical configs and seeds give byte-identical
outputs. The ``--seed`` flag falls back to the STOCHORD_SEED
environment variable, then to 0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bench import SCENARIO_IDS, TheoremScenario, run_scenario
from .errors import ConfigError, StochordError
from .majorization import (
    as_param_matrix,
    chain_majorize_solve_2x2,
    implication_suite,
    pn_membership,
)
from .models import GompertzMakeham, WeibullG
from .montecarlo import ks_distance, sample, sample_system
from .orders import ORDERS, Grid, certify
from .systems import STRUCTURES, SystemSpec

_FAMILY_ALIASES = {
    "weibull-g": "weibull-g",
    "wg": "weibull-g",
    "gompertz-makeham": "gompertz-makeham",
    "gm": "gompertz-makeham",
}
_FAMILY_PARAMS = {
    "weibull-g": ("alpha", "beta", "gamma"),
    "gompertz-makeham": ("alpha", "beta", "lambda"),
}


@dataclass(frozen=True)
class RunConfig:
    """Normalized invocation: one command plus its resolved inputs."""

    command: str
    config_path: str | None = None
    order: str | None = None
    count: int | None = None
    seed: int = 0
    grid_count: int = 2048
    x_max: float | None = None
    out_dir: str | None = None
    inline: dict | None = None

    def __post_init__(self):
        if self.grid_count < 16:
            raise ConfigError(f"--grid must be at least 16, got {self.grid_count}")
        if self.x_max is not None and not self.x_max > 0.0:
            raise ConfigError(f"--xmax must be positive, got {self.x_max}")
        if self.count is not None and self.count < 1:
            raise ConfigError(f"--count must be at least 1, got {self.count}")


def _fmt(value: float) -> str:
    return repr(float(value))


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _write_curve_csv(path: Path, xs, lhs, rhs, diff) -> None:
    rows = ["x,lhs,rhs,diff"]
    for k in range(len(xs)):
        rows.append(f"{_fmt(xs[k])},{_fmt(lhs[k])},{_fmt(rhs[k])},{_fmt(diff[k])}")
    _write_atomic(path, "\n".join(rows) + "\n")


def _write_sample_csv(path: Path, values) -> None:
    rows = ["index,value"]
    for k, v in enumerate(values, start=1):
        rows.append(f"{k},{_fmt(v)}")
    _write_atomic(path, "\n".join(rows) + "\n")


# ---------------------------------------------------------------------------
# config parsing


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such file")
    except json.JSONDecodeError as err:
        raise ConfigError(f"{path}:{err.lineno}: {err.msg}")


def _expect_mapping(obj, path: str, where: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: {where}: expected an object")
    return obj


def _reject_unknown(obj: dict, allowed: tuple[str, ...], path: str, where: str) -> None:
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ConfigError(f"{path}: {where}: unknown key {unknown[0]!r} "
                          f"(allowed: {', '.join(allowed)})")


def _positive_number(obj: dict, key: str, path: str, where: str) -> float:
    if key not in obj:
        raise ConfigError(f"{path}: {where}: missing required key {key!r}")
    value = obj[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{path}: {where}.{key}: expected a number")
    if not value > 0.0 or not np.isfinite(value):
        raise ConfigError(f"{path}: {where}.{key}: must be positive and finite")
    return float(value)


def _component_from(obj, family: str, path: str, where: str):
    comp = _expect_mapping(obj, path, where)
    params = _FAMILY_PARAMS[family]
    _reject_unknown(comp, params, path, where)
    values = {key: _positive_number(comp, key, path, where) for key in params}
    if family == "weibull-g":
        return WeibullG(alpha=values["alpha"], beta=values["beta"], gamma=values["gamma"])
    return GompertzMakeham(alpha=values["alpha"], beta=values["beta"], lam=values["lambda"])


def _system_from(obj, path: str, where: str) -> SystemSpec:
    doc = _expect_mapping(obj, path, where)
    _reject_unknown(doc, ("family", "structure", "components"), path, where)
    for key in ("family", "structure", "components"):
        if key not in doc:
            raise ConfigError(f"{path}: {where}: missing required key {key!r}")
    family = _FAMILY_ALIASES.get(doc["family"])
    if family is None:
        raise ConfigError(f"{path}: {where}.family: must be one of "
                          f"{sorted(set(_FAMILY_ALIASES))}")
    if doc["structure"] not in STRUCTURES:
        raise ConfigError(f"{path}: {where}.structure: must be one of {STRUCTURES}")
    comps = doc["components"]
    if not isinstance(comps, list) or not comps:
        raise ConfigError(f"{path}: {where}.components: expected a non-empty list")
    built = tuple(
        _component_from(comp, family, path, f"{where}.components[{k}]")
        for k, comp in enumerate(comps)
    )
    return SystemSpec(built, doc["structure"])


def _parse_compare_config(path: str, order_flag: str | None):
    doc = _expect_mapping(_load_json(path), path, "top level")
    _reject_unknown(doc, ("order", "first", "second"), path, "top level")
    for key in ("first", "second"):
        if key not in doc:
            raise ConfigError(f"{path}: top level: missing required key {key!r}")
    order = order_flag or doc.get("order")
    if order not in ORDERS:
        raise ConfigError(f"{path}: order must be one of {ORDERS} "
                          "(set it in the config or pass --order)")
    first = _system_from(doc["first"], path, "first")
    second = _system_from(doc["second"], path, "second")
    return order, first, second


# ---------------------------------------------------------------------------
# commands


def _curve_points(order: str, first, second, grid: Grid):
    xs = grid.points
    if order == "st":
        lhs = np.asarray(first.sf(xs))
        rhs = np.asarray(second.sf(xs))
        return xs, lhs, rhs, rhs - lhs
    if order == "hr":
        lhs = np.asarray(first.hazard(xs))
        rhs = np.asarray(second.hazard(xs))
        return xs, lhs, rhs, lhs - rhs
    if order == "rh":
        keep = (np.asarray(first.cdf(xs)) > 0.0) & (np.asarray(second.cdf(xs)) > 0.0)
        xs = xs[keep]
        lhs = np.asarray(first.reversed_hazard(xs))
        rhs = np.asarray(second.reversed_hazard(xs))
        return xs, lhs, rhs, rhs - lhs
    pdf_f = np.asarray(first.pdf(xs))
    pdf_g = np.asarray(second.pdf(xs))
    keep = (pdf_f > 0.0) & (pdf_g > 0.0) & np.isfinite(pdf_f) & np.isfinite(pdf_g)
    xs = xs[keep]
    lhs = np.log(pdf_f[keep])
    rhs = np.log(pdf_g[keep])
    ratio = rhs - lhs
    diff = np.concatenate([[0.0], np.diff(ratio)])
    return xs, lhs, rhs, diff


def cmd_compare(rc: RunConfig) -> int:
    order, first, second = _parse_compare_config(rc.config_path, rc.order)
    grid = Grid.for_models(first, second, count=rc.grid_count, x_max=rc.x_max)
    verdict = certify(order, first, second, grid=grid)
    xs, lhs, rhs, diff = _curve_points(order, first, second, grid)
    out = Path(rc.out_dir or ".") / "compare_curve.csv"
    _write_curve_csv(out, xs, lhs, rhs, diff)
    print("command: compare")
    print(f"order: {order}")
    print(f"first: {first.label}")
    print(f"second: {second.label}")
    print(f"holds: {_bool(verdict.holds)}")
    print(f"margin: {_fmt(verdict.margin)}")
    print(f"tolerance: {_fmt(verdict.tolerance)}")
    print(f"witness_x: {'none' if verdict.witness_x is None else _fmt(verdict.witness_x)}")
    print(f"grid: {verdict.grid_count}")
    print(f"method: {verdict.method}")
    print(f"truncated: {_bool(verdict.truncated)}")
    print(f"curve: {out}")
    return 0 if verdict.holds else 3


def cmd_verify_theorem(rc: RunConfig) -> int:
    sid = rc.inline["theorem"]
    if sid not in SCENARIO_IDS:
        raise ConfigError(f"unknown theorem id {sid!r}; known ids: {', '.join(SCENARIO_IDS)}")
    scenario = TheoremScenario(
        scenario_id=sid,
        count=rc.count if rc.count is not None else 200,
        seed=rc.seed,
        grid_count=rc.grid_count,
    )
    report = run_scenario(scenario)
    for line in report.summary_lines():
        print(line)
    if rc.out_dir is not None and report.curve is not None:
        out = Path(rc.out_dir) / f"theorem_{sid}_curve.csv"
        _write_curve_csv(out, report.curve.x, report.curve.lhs,
                         report.curve.rhs, report.curve.diff)
        print(f"curve: {out}")
    return 0 if report.all_passed else 3


def _parse_vector(text: str, flag: str) -> np.ndarray:
    try:
        vec = np.asarray([float(tok) for tok in text.split(",") if tok.strip() != ""])
    except ValueError:
        raise ConfigError(f"{flag}: expected comma-separated numbers, got {text!r}")
    if vec.size < 1:
        raise ConfigError(f"{flag}: expected at least one number")
    return vec


def _load_matrix(path: str) -> np.ndarray:
    doc = _load_json(path)
    try:
        return as_param_matrix(doc)
    except ValueError as err:
        raise ConfigError(f"{path}: {err}")


def cmd_majorize(rc: RunConfig) -> int:
    args = rc.inline
    vector_mode = args["a"] is not None or args["b"] is not None
    matrix_mode = args["matrix_a"] is not None or args["matrix_b"] is not None
    if vector_mode == matrix_mode:
        raise ConfigError("pass either --a and --b (vectors) or --matrix-a and --matrix-b")
    print("command: majorize")
    if vector_mode:
        if args["a"] is None or args["b"] is None:
            raise ConfigError("both --a and --b are required")
        a = _parse_vector(args["a"], "--a")
        b = _parse_vector(args["b"], "--b")
        if a.size != b.size:
            raise ConfigError("--a and --b must have equal length")
        summary = implication_suite(a, b)
        print("mode: vectors")
        print(f"plain: {_bool(summary.plain)}")
        print(f"weak_sub: {_bool(summary.weak_sub)}")
        print(f"weak_super: {_bool(summary.weak_super)}")
        return 0
    if args["matrix_a"] is None or args["matrix_b"] is None:
        raise ConfigError("both --matrix-a and --matrix-b are required")
    mat_a = _load_matrix(args["matrix_a"])
    mat_b = _load_matrix(args["matrix_b"])
    print("mode: matrices")
    print(f"pn_a: {_bool(pn_membership(mat_a))}")
    print(f"pn_b: {_bool(pn_membership(mat_b))}")
    if mat_a.shape == (2, 2) and mat_b.shape == (2, 2):
        lam = chain_majorize_solve_2x2(mat_a, mat_b)
        print(f"chain_2x2_lambda: {'none' if lam is None else _fmt(lam)}")
    else:
        print("chain_2x2_lambda: not-applicable")
    return 0


def cmd_sample(rc: RunConfig) -> int:
    args = rc.inline
    count = rc.count
    if count is None:
        raise ConfigError("sample needs --n (or --count)")
    out = Path(rc.out_dir or ".") / "samples.csv"
    if args["config"] is not None:
        system = _system_from(_load_json(args["config"]), args["config"], "top level")
        batch = sample_system(system, count, rc.seed)
        ks = ks_distance(batch, system)
        label = system.label
    else:
        family = _FAMILY_ALIASES.get(args["family"] or "")
        if family is None:
            raise ConfigError("--family must be weibull-g (wg) or gompertz-makeham (gm), "
                              "or pass --config")
        needed = _FAMILY_PARAMS[family]
        values = {}
        for key in needed:
            attr = "lam" if key == "lambda" else key
            if args[attr] is None:
                raise ConfigError(f"--{key} is required for family {family}")
            values[key] = args[attr]
        if family == "weibull-g":
            model = WeibullG(alpha=values["alpha"], beta=values["beta"], gamma=values["gamma"])
        else:
            model = GompertzMakeham(alpha=values["alpha"], beta=values["beta"],
                                    lam=values["lambda"])
        batch = sample(model, count, rc.seed)
        ks = ks_distance(batch, model)
        label = model.label
    _write_sample_csv(out, batch.values)
    print("command: sample")
    print(f"model: {label}")
    print(f"count: {count}")
    print(f"seed: {rc.seed}")
    print(f"ks: {_fmt(ks)}")
    print(f"samples: {out}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stochord",
        description="Certify stochastic orderings between heterogeneous component systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compare = sub.add_parser("compare", help="certify an order between two configured systems")
    compare.add_argument("--config", required=True, help="JSON comparison config")
    compare.add_argument("--order", choices=ORDERS, help="override the configured order")
    compare.add_argument("--grid", type=int, default=2048, help="grid point count")
    compare.add_argument("--xmax", type=float, help="override the grid upper end")
    compare.add_argument("--seed", type=int, help="unused by compare; accepted for symmetry")
    compare.add_argument("--out", help="output directory (default: current)")

    verify = sub.add_parser("verify-theorem", help="run one bench scenario")
    verify.add_argument("theorem", help="scenario id such as T3.1 or T4.5")
    verify.add_argument("--count", type=int, default=200, help="instances to run")
    verify.add_argument("--seed", type=int, help="batch seed (default STOCHORD_SEED or 0)")
    verify.add_argument("--grid", type=int, default=2048, help="grid point count")
    verify.add_argument("--out", help="directory for the scenario curve CSV")

    majorize = sub.add_parser("majorize", help="report majorization relations")
    majorize.add_argument("--a", help="first vector, comma separated")
    majorize.add_argument("--b", help="second vector, comma separated")
    majorize.add_argument("--matrix-a", dest="matrix_a", help="first 2 x n matrix (JSON file)")
    majorize.add_argument("--matrix-b", dest="matrix_b", help="second 2 x n matrix (JSON file)")

    smp = sub.add_parser("sample", help="draw lifetimes and report the KS distance")
    smp.add_argument("--family", help="weibull-g (wg) or gompertz-makeham (gm)")
    smp.add_argument("--alpha", type=float)
    smp.add_argument("--beta", type=float)
    smp.add_argument("--gamma", type=float)
    smp.add_argument("--lambda", type=float, dest="lam")
    smp.add_argument("--config", help="sample a configured system instead")
    smp.add_argument("--n", type=int, help="number of draws")
    smp.add_argument("--count", type=int, help="alias for --n")
    smp.add_argument("--seed", type=int, help="draw seed (default STOCHORD_SEED or 0)")
    smp.add_argument("--out", help="output directory (default: current)")
    return parser


def _resolve_seed(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("STOCHORD_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"STOCHORD_SEED must be an integer, got {env!r}")


def _run_config_from(args: argparse.Namespace) -> RunConfig:
    if args.command == "compare":
        return RunConfig(
            command="compare",
            config_path=args.config,
            order=args.order,
            grid_count=args.grid,
            x_max=args.xmax,
            out_dir=args.out,
        )
    if args.command == "verify-theorem":
        return RunConfig(
            command="verify-theorem",
            count=args.count,
            seed=_resolve_seed(args.seed),
            grid_count=args.grid,
            out_dir=args.out,
            inline={"theorem": args.theorem},
        )
    if args.command == "majorize":
        return RunConfig(
            command="majorize",
            inline={"a": args.a, "b": args.b,
                    "matrix_a": args.matrix_a, "matrix_b": args.matrix_b},
        )
    count = args.n if args.n is not None else args.count
    return RunConfig(
        command="sample",
        count=count,
        seed=_resolve_seed(args.seed),
        out_dir=args.out,
        inline={"family": args.family, "alpha": args.alpha, "beta": args.beta,
                "gamma": args.gamma, "lam": args.lam, "config": args.config},
    )


_COMMANDS = {
    "compare": cmd_compare,
    "verify-theorem": cmd_verify_theorem,
    "majorize": cmd_majorize,
    "sample": cmd_sample,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        # argparse exits 0 for --help, 2 for usage errors; keep the contract total
        return int(err.code or 0) if err.code in (0, 2) else 2
    try:
        rc = _run_config_from(args)
        return _COMMANDS[args.command](rc)
    except (StochordError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
