"""Command-line front end.

Subcommands:

    weights    closed-form optimum for one parameter set (text or JSON)
    sweep-nk   SLEM over a grid of set/star counts at fixed m, L (CSV)
    sweep-ml   SLEM over a grid of branch length/count at fixed n, k (CSV)
    simulate   averaging-iteration distance curve (CSV)
    verify     invariant suite for one parameter set or a grid

CSV output is comma-separated with a header row and '#'-prefixed
metadata comments; floats are printed with 17 significant digits so
parsing and re-emitting the output reproduces it byte for byte. The
sweep and simulate commands can also render a figure to a file with
--plot, alongside the delimited output. Exit codes: 0 success, 1
verification or solver failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from .oracle import OracleConfig, optimize_weights
from .sim import DISTRIBUTION, SimConfig, decay_rate, simulate
from .topology import SmhkParams, validate_params
from .weights import (
    InconsistentRootError,
    NoRootError,
    OrbitWeights,
    solve_theta,
)
from .verify import run_checks

__all__ = ["SweepRecord", "parse_grid", "main", "run"]

GRID_NAMES = ("n", "k", "m", "L")
DEFAULT_NK_GRID = "n=2..6,k=2..5"
DEFAULT_ML_GRID = "m=1..5,L=1..5"
DEFAULT_VERIFY_GRID = "n=2..4,k=2..4,m=1..3,L=1..3"


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


@dataclass(frozen=True)
class SweepRecord:
    """One sweep cell: parameters plus the solved quantities.

    slem/theta/w0/w1 are None when the cell failed; error carries the
    message. consistent records that the root passed the spectral
    certification (always true for a solved cell)."""

    params: SmhkParams
    slem: float | None = None
    theta: float | None = None
    w0: float | None = None
    w1: float | None = None
    oracle_slem: float | None = None
    consistent: bool = False
    error: str | None = None


def parse_grid(spec: str) -> dict[str, list[int]]:
    """Parse 'name=a..b' comma-separated ranges into value lists.

    Accepts the names n, k, m, L; a bare 'name=a' is a single value.
    """
    out: dict[str, list[int]] = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        name, eq, rng = part.partition("=")
        name = name.strip()
        if not eq or name not in GRID_NAMES:
            raise ValueError(f"bad grid entry {part!r}; expected one of n,k,m,L = a..b")
        first, dots, last = rng.partition("..")
        try:
            low = int(first)
            high = int(last) if dots else low
        except ValueError:
            raise ValueError(f"bad grid range {part!r}") from None
        if high < low:
            raise ValueError(f"empty grid range {part!r}")
        out[name] = list(range(low, high + 1))
    return out


def _solve_cell(n: int, k: int, m: int, L: int) -> SweepRecord:
    try:
        params = validate_params(n, k, m, L)
    except ValueError as err:
        return SweepRecord(params=None, error=str(err))  # type: ignore[arg-type]
    try:
        solution = solve_theta(params)
    except (NoRootError, InconsistentRootError) as err:
        return SweepRecord(params=params, error=str(err))
    return SweepRecord(
        params=params,
        slem=solution.slem,
        theta=solution.theta,
        w0=solution.weights[0],
        w1=solution.weights[1],
        consistent=True,
    )


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as handle:
            handle.write(text)


def _sweep_csv(records, cells, meta: str) -> str:
    lines = [f"# {meta}", "n,k,m,L,slem,theta"]
    for (n, k, m, L), record in zip(cells, records):
        if record.slem is None:
            lines.append(f"{n},{k},{m},{L},,")
        else:
            lines.append(f"{n},{k},{m},{L},{_fmt(record.slem)},{_fmt(record.theta)}")
    return "\n".join(lines) + "\n"


def _run_sweep(cells) -> list[SweepRecord]:
    records = []
    for n, k, m, L in cells:
        record = _solve_cell(n, k, m, L)
        if record.error is not None:
            print(f"warning: n={n} k={k} m={m} L={L}: {record.error}", file=sys.stderr)
        records.append(record)
    return records


def cmd_weights(args) -> int:
    params = validate_params(args.n, args.k, args.m, args.L)
    try:
        solution = solve_theta(params)
    except (NoRootError, InconsistentRootError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    payload = {
        "n": params.n,
        "k": params.k,
        "m": params.m,
        "L": params.L,
        "theta": solution.theta,
        "slem": solution.slem,
        "weights": list(solution.weights.values),
        "residual": solution.residual,
    }
    if args.oracle:
        oracle = optimize_weights(params, OracleConfig(seed=args.seed))
        payload["oracle_slem"] = oracle.slem
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"params: n={params.n} k={params.k} m={params.m} L={params.L}")
        print(f"theta = {_fmt(solution.theta)}")
        print(f"slem = {_fmt(solution.slem)} (residual {solution.residual:.3e})")
        labels = " ".join(
            f"w{q}={_fmt(w)}" for q, w in enumerate(solution.weights.values)
        )
        print(f"weights: {labels}")
        if args.oracle:
            print(f"oracle slem = {_fmt(payload['oracle_slem'])}")
    return 0


def cmd_sweep_nk(args) -> int:
    grid = parse_grid(args.grid)
    unknown = set(grid) - {"n", "k"}
    if unknown:
        raise ValueError(f"sweep-nk grid accepts only n and k (got {sorted(unknown)})")
    defaults = parse_grid(DEFAULT_NK_GRID)
    ns = grid.get("n", defaults["n"])
    ks = grid.get("k", defaults["k"])
    cells = [(n, k, args.m, args.L) for n in ns for k in ks]
    records = _run_sweep(cells)
    meta = (
        f"sweep-nk m={args.m} L={args.L} "
        f"n={ns[0]}..{ns[-1]} k={ks[0]}..{ks[-1]}"
    )
    _emit(_sweep_csv(records, cells, meta), args.csv)
    if args.plot:
        from . import plotting

        plotting.save_sweep_nk_figure(records, args.plot)
    return 0


def cmd_sweep_ml(args) -> int:
    grid = parse_grid(args.grid)
    unknown = set(grid) - {"m", "L"}
    if unknown:
        raise ValueError(f"sweep-ml grid accepts only m and L (got {sorted(unknown)})")
    defaults = parse_grid(DEFAULT_ML_GRID)
    ms = grid.get("m", defaults["m"])
    Ls = grid.get("L", defaults["L"])
    cells = [(args.n, args.k, m, L) for m in ms for L in Ls]
    records = _run_sweep(cells)
    meta = (
        f"sweep-ml n={args.n} k={args.k} "
        f"m={ms[0]}..{ms[-1]} L={Ls[0]}..{Ls[-1]}"
    )
    _emit(_sweep_csv(records, cells, meta), args.csv)
    if args.plot:
        from . import plotting

        plotting.save_sweep_ml_figure(records, args.plot)
    return 0


def _load_weights_file(path: str, m: int) -> OrbitWeights:
    """Read orbit weights from a JSON file.

    Accepts either a bare list of m + 1 floats or an object with a
    'weights' key (the weights command's --json output works as is).
    """
    with open(path) as handle:
        data = json.load(handle)
    if isinstance(data, dict):
        if "weights" not in data:
            raise ValueError(f"weights file {path!r} has no 'weights' key")
        data = data["weights"]
    if not isinstance(data, list) or len(data) != m + 1:
        raise ValueError(f"weights file {path!r} must hold {m + 1} values")
    return OrbitWeights(tuple(float(v) for v in data))


def cmd_simulate(args) -> int:
    params = validate_params(args.n, args.k, args.m, args.L)
    analytical_slem = None
    if args.weights:
        weights = _load_weights_file(args.weights, params.m)
        source = args.weights
    else:
        try:
            solution = solve_theta(params)
        except (NoRootError, InconsistentRootError) as err:
            print(f"error: {err}", file=sys.stderr)
            return 1
        weights = solution.weights
        analytical_slem = solution.slem
        source = "analytical"
    config = SimConfig(trials=args.trials, iterations=args.iters, seed=args.seed)
    stats = simulate(params, weights, config)
    try:
        fitted = decay_rate(stats)
    except ValueError:
        fitted = None

    lines = [
        f"# simulate n={params.n} k={params.k} m={params.m} L={params.L} "
        f"trials={config.trials} iters={config.iterations} seed={config.seed}",
        f"# distribution={DISTRIBUTION}",
        f"# weights_source={source}",
        "# weights=" + ",".join(_fmt(w) for w in weights.values),
    ]
    if analytical_slem is not None:
        lines.append(f"# analytical_slem={_fmt(analytical_slem)}")
    if fitted is not None:
        lines.append(f"# fitted_rate={_fmt(fitted)}")
    lines.append("t,geo_mean_distance,log10_geo_mean")
    for t, value in enumerate(stats.geo_mean):
        lines.append(f"{t},{_fmt(value)},{_fmt(math.log10(value))}")
    _emit("\n".join(lines) + "\n", args.csv)
    if args.plot:
        from . import plotting

        plotting.save_trajectory_figure(
            stats,
            args.plot,
            title=f"n={params.n} k={params.k} m={params.m} L={params.L}",
        )
    return 0


def cmd_verify(args) -> int:
    given = [v is not None for v in (args.n, args.k, args.m, args.L)]
    if any(given) and not all(given):
        raise ValueError("verify needs all of -n -k -m -L, or none for a grid")
    oracle_config = OracleConfig(seed=args.seed)

    if all(given):
        params = validate_params(args.n, args.k, args.m, args.L)
        checks = run_checks(
            params, include_oracle=args.oracle, oracle_config=oracle_config
        )
        print(f"n={params.n} k={params.k} m={params.m} L={params.L}")
        for check in checks:
            status = "PASS" if check.passed else "FAIL"
            print(f"{status} {check.name:<24s} {check.detail}")
        passed = sum(c.passed for c in checks)
        overall = passed == len(checks)
        print(f"RESULT {'PASS' if overall else 'FAIL'} ({passed}/{len(checks)} checks)")
        return 0 if overall else 1

    grid = parse_grid(args.grid)
    defaults = parse_grid(DEFAULT_VERIFY_GRID)
    values = {name: grid.get(name, defaults[name]) for name in GRID_NAMES}
    cells = [
        (n, k, m, L)
        for n in values["n"]
        for k in values["k"]
        for m in values["m"]
        for L in values["L"]
    ]
    all_pass = True
    cells_passed = 0
    for n, k, m, L in cells:
        params = validate_params(n, k, m, L)
        checks = run_checks(
            params, include_oracle=args.oracle, oracle_config=oracle_config
        )
        passed = sum(c.passed for c in checks)
        cell_ok = passed == len(checks)
        all_pass = all_pass and cell_ok
        cells_passed += cell_ok
        slem_detail = ""
        spectral = next((c for c in checks if c.name == "slem_cos_theta"), None)
        if spectral is not None and cell_ok:
            record = _solve_cell(n, k, m, L)
            slem_detail = f" slem={_fmt(record.slem)}" if record.slem is not None else ""
        status = "PASS" if cell_ok else "FAIL"
        print(
            f"{status} n={n} k={k} m={m} L={L}{slem_detail} "
            f"checks={passed}/{len(checks)}"
        )
        if not cell_ok:
            for check in checks:
                if not check.passed:
                    print(f"     failed {check.name}: {check.detail}")
    print(f"RESULT {'PASS' if all_pass else 'FAIL'} ({cells_passed}/{len(cells)} cells)")
    return 0 if all_pass else 1


def _add_params(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("-n", type=int, required=required, default=None, help="number of sets (>= 2)")
    parser.add_argument("-k", type=int, required=required, default=None, help="stars per set (>= 2)")
    parser.add_argument("-m", type=int, required=required, default=None, help="branch length (>= 1)")
    parser.add_argument("-L", type=int, required=required, default=None, help="branches per star (>= 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smhk",
        description="Optimal consensus-averaging weights on star-mesh hybrid networks with a k-partite core.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_weights = sub.add_parser("weights", help="closed-form optimum for one parameter set")
    _add_params(p_weights, required=True)
    p_weights.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p_weights.add_argument("--oracle", action="store_true", help="also run the numerical oracle")
    p_weights.add_argument("--seed", type=int, default=0, help="oracle seed")
    p_weights.set_defaults(func=cmd_weights)

    p_nk = sub.add_parser("sweep-nk", help="SLEM over a grid of n and k at fixed m, L")
    p_nk.add_argument("-m", type=int, required=True, help="branch length")
    p_nk.add_argument("-L", type=int, required=True, help="branches per star")
    p_nk.add_argument("--grid", default=DEFAULT_NK_GRID, help="ranges, e.g. n=2..6,k=2..5")
    p_nk.add_argument("--csv", default=None, help="write CSV to this path instead of stdout")
    p_nk.add_argument("--plot", default=None, help="render a figure to this path")
    p_nk.set_defaults(func=cmd_sweep_nk)

    p_ml = sub.add_parser("sweep-ml", help="SLEM over a grid of m and L at fixed n, k")
    p_ml.add_argument("-n", type=int, required=True, help="number of sets")
    p_ml.add_argument("-k", type=int, required=True, help="stars per set")
    p_ml.add_argument("--grid", default=DEFAULT_ML_GRID, help="ranges, e.g. m=1..5,L=1..5")
    p_ml.add_argument("--csv", default=None, help="write CSV to this path instead of stdout")
    p_ml.add_argument("--plot", default=None, help="render a figure to this path")
    p_ml.set_defaults(func=cmd_sweep_ml)

    p_sim = sub.add_parser("simulate", help="averaging-iteration distance curve")
    _add_params(p_sim, required=True)
    p_sim.add_argument("--trials", type=int, default=1000, help="number of seeded trials")
    p_sim.add_argument("--iters", type=int, default=200, help="iterations per trial")
    p_sim.add_argument("--seed", type=int, default=0, help="base seed; trial r uses seed + r")
    p_sim.add_argument("--weights", default=None, help="JSON file with orbit weights (default: analytical)")
    p_sim.add_argument("--csv", default=None, help="write CSV to this path instead of stdout")
    p_sim.add_argument("--plot", default=None, help="render a figure to this path")
    p_sim.set_defaults(func=cmd_simulate)

    p_verify = sub.add_parser("verify", help="invariant suite for one parameter set or a grid")
    _add_params(p_verify, required=False)
    p_verify.add_argument("--grid", default=DEFAULT_VERIFY_GRID, help="ranges, e.g. n=2..3,k=2..3,m=1..3,L=1..3")
    p_verify.add_argument("--oracle", action="store_true", help="include the oracle-agreement check")
    p_verify.add_argument("--seed", type=int, default=0, help="oracle seed")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())
