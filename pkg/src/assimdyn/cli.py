"""Command-line front end.

Subcommands: validate, equilibria, simulate, basins, sweep, welfare,
phase.  Structured results go to stdout as a JSON document with top-level
keys {manifest, result}; grid and trajectory data can additionally be
written to CSV files (each CSV gets a sidecar ``<file>.manifest.json``).

Exit codes: 0 success, 1 domain/validation failure, 2 usage/parse
failure.  Commands refuse parameter sets that fail validation, printing
the report to stderr, unless ``--force`` is given.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import BasinGrid, Trajectory, VectorFieldGrid, basins, integrate, integrate_closed, vector_field
from .equilibria import stability_sweep, steady_states_closed, steady_states_open, thresholds
from .errors import AssimdynError, ConfigError, InvalidParamsError
from .model import State
from .params import ModelParams, load_params, validate
from .serialize import dumps, fmt_float, to_jsonable
from .welfare import policy_verdict


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    ts = int(epoch) if epoch is not None else int(time.time())
    return datetime.datetime.fromtimestamp(ts, datetime.timezone.utc).isoformat()


def _manifest(command: str, params: ModelParams, seed: int, options: dict) -> dict:
    return {
        "command": command,
        "version": __version__,
        "timestamp": _timestamp(),
        "seed": seed,
        "params": to_jsonable(params),
        "options": options,
    }


def _document(manifest: dict, result) -> str:
    return dumps({"manifest": manifest, "result": to_jsonable(result)})


def _write(path: str, text: str) -> None:
    Path(path).write_text(text + "\n")


def _write_csv(path: str, header: list[str], rows, manifest: dict) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt_float(v) if isinstance(v, float) else str(v) for v in row))
    _write(path, "\n".join(lines))
    _write(path + ".manifest.json", dumps(manifest))


def _trajectory_rows(traj: Trajectory):
    if traj.states.shape[1] == 2:
        header = ["t", "p", "q"]
        rows = [(float(t), float(s[0]), float(s[1])) for t, s in zip(traj.t, traj.states)]
    else:
        header = ["t", "q"]
        rows = [(float(t), float(s[0])) for t, s in zip(traj.t, traj.states)]
    return header, rows


def _field_rows(vf: VectorFieldGrid):
    if vf.p is not None:
        header = ["p", "q", "dp", "dq"]
        rows = list(zip(vf.p.tolist(), vf.q.tolist(), vf.dp.tolist(), vf.dq.tolist()))
    else:
        header = ["q", "dq"]
        rows = list(zip(vf.q.tolist(), vf.dq.tolist()))
    return header, rows


def _basin_rows(grid: BasinGrid):
    rows = []
    for i, p0 in enumerate(grid.p_centers):
        for j, q0 in enumerate(grid.q_centers):
            rows.append((float(p0), float(q0), str(grid.labels[i, j])))
    return ["p", "q", "label"], rows


def _load(args) -> ModelParams:
    return load_params(Path(args.params))


def cmd_validate(args) -> int:
    params = _load(args)
    report = validate(params)
    manifest = _manifest("validate", params, args.seed, {})
    print(_document(manifest, report))
    return 0 if report.overall else 1


def cmd_equilibria(args) -> int:
    params = _load(args)
    manifest = _manifest("equilibria", params, args.seed, {"closed": args.closed})
    if args.closed:
        states = steady_states_closed(params, force=args.force)
    else:
        states = steady_states_open(params, force=args.force)
    result = {
        "mode": "closed" if args.closed else "open",
        "thresholds": to_jsonable(thresholds(params, force=args.force)),
        "steady_states": [to_jsonable(s) for s in states],
    }
    doc = _document(manifest, result)
    print(doc)
    if args.out:
        _write(args.out, doc)
    return 0


def cmd_simulate(args) -> int:
    params = _load(args)
    options = {
        "closed": args.closed,
        "p0": args.p0,
        "q0": args.q0,
        "t_max": args.t_max,
        "dt": args.dt,
        "record_every": args.record_every,
    }
    manifest = _manifest("simulate", params, args.seed, options)
    if args.closed:
        traj = integrate_closed(
            params, args.q0, args.t_max, args.dt, record_every=args.record_every, force=args.force
        )
    else:
        if args.p0 is None:
            print("simulate: --p0 is required unless --closed is given", file=sys.stderr)
            return 2
        traj = integrate(
            params,
            State(args.p0, args.q0),
            args.t_max,
            args.dt,
            record_every=args.record_every,
            force=args.force,
        )
    summary = {
        "terminal": to_jsonable(traj.terminal) if isinstance(traj.terminal, State) else traj.terminal,
        "steps": traj.steps,
        "converged": traj.converged,
        "converged_to": to_jsonable(traj.converged_to) if traj.converged_to else None,
        "max_clamp": traj.max_clamp,
    }
    print(_document(manifest, summary))
    if args.out:
        if args.format == "csv":
            header, rows = _trajectory_rows(traj)
            _write_csv(args.out, header, rows, manifest)
        else:
            _write(args.out, _document(manifest, traj))
    return 0


def cmd_basins(args) -> int:
    params = _load(args)
    options = {"resolution": args.resolution, "t_max": args.t_max, "dt": args.dt}
    manifest = _manifest("basins", params, args.seed, options)
    grid = basins(params, args.resolution, args.t_max, args.dt, force=args.force)
    summary = {
        "resolution": grid.resolution,
        "shares": dict(grid.shares),
        "equilibria": [to_jsonable(s) for s in grid.equilibria],
    }
    print(_document(manifest, summary))
    if args.out:
        if args.format == "csv":
            header, rows = _basin_rows(grid)
            _write_csv(args.out, header, rows, manifest)
        else:
            _write(args.out, _document(manifest, grid))
    return 0


def cmd_sweep(args) -> int:
    params = _load(args)
    options = {"A_from": args.A_from, "A_to": args.A_to, "steps": args.steps}
    manifest = _manifest("sweep", params, args.seed, options)
    if args.steps < 1:
        print("sweep: --steps must be >= 1", file=sys.stderr)
        return 2
    a_values = [args.A_from] if args.steps == 1 else np.linspace(args.A_from, args.A_to, args.steps).tolist()
    rows = stability_sweep(params, a_values, force=args.force)
    print(_document(manifest, {"rows": [to_jsonable(r) for r in rows]}))
    if args.out:
        if args.format == "csv":
            _write_csv(
                args.out,
                ["A", "no_assim_stable", "full_assim_stable", "regime"],
                [(r.A, str(r.no_assim_stable).lower(), str(r.full_assim_stable).lower(), r.regime) for r in rows],
                manifest,
            )
        else:
            _write(args.out, _document(manifest, {"rows": [to_jsonable(r) for r in rows]}))
    return 0


def cmd_welfare(args) -> int:
    params = _load(args)
    manifest = _manifest("welfare", params, args.seed, {})
    report = policy_verdict(params, force=args.force)
    doc = _document(manifest, report)
    print(doc)
    if args.out:
        _write(args.out, doc)
    return 0


def _load_initial_states(path: str, closed: bool):
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read initial-states file {path!r}: {e}") from e
    if not isinstance(doc, list):
        raise ConfigError("initial-states file must hold a JSON list")
    states = []
    for entry in doc:
        if closed:
            states.append(float(entry))
        else:
            p0, q0 = entry
            states.append((float(p0), float(q0)))
    return states


def cmd_phase(args) -> int:
    params = _load(args)
    options = {
        "resolution": args.resolution,
        "closed": args.closed,
        "trajectories": args.trajectories,
        "t_max": args.t_max,
        "dt": args.dt,
    }
    manifest = _manifest("phase", params, args.seed, options)
    vf = vector_field(params, args.resolution, closed=args.closed, force=args.force)
    trajs = []
    if args.trajectories:
        for start in _load_initial_states(args.trajectories, args.closed):
            if args.closed:
                trajs.append(integrate_closed(params, start, args.t_max, args.dt, force=args.force))
            else:
                trajs.append(integrate(params, State(*start), args.t_max, args.dt, force=args.force))
    written = []
    if args.format == "csv":
        field_path = f"{args.out}_field.csv"
        header, rows = _field_rows(vf)
        _write_csv(field_path, header, rows, manifest)
        written.append(field_path)
        for i, traj in enumerate(trajs):
            traj_path = f"{args.out}_traj_{i:02d}.csv"
            header, rows = _trajectory_rows(traj)
            _write_csv(traj_path, header, rows, manifest)
            written.append(traj_path)
    else:
        path = f"{args.out}.json"
        _write(path, _document(manifest, {"field": to_jsonable(vf), "trajectories": [to_jsonable(t) for t in trajs]}))
        written.append(path)
    print(_document(manifest, {"files": written}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="assimdyn",
        description="Analyze the coevolution of migrant assimilation and native skill formation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, out: bool = True) -> None:
        p.add_argument("--params", required=True, help="JSON parameter file")
        p.add_argument("--force", action="store_true", help="run despite failed validation (unsupported)")
        p.add_argument("--seed", type=int, default=0, help="seed recorded in the manifest")
        if out:
            p.add_argument("--out", help="output file path")
            p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("validate", help="evaluate all admissibility checks")
    common(p, out=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("equilibria", help="enumerate steady states and thresholds")
    common(p, out=False)
    p.add_argument("--closed", action="store_true", help="closed-to-migration benchmark")
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=cmd_equilibria)

    p = sub.add_parser("simulate", help="integrate one trajectory")
    common(p)
    p.add_argument("--closed", action="store_true")
    p.add_argument("--p0", type=float, help="initial assimilating fraction")
    p.add_argument("--q0", type=float, required=True, help="initial high-skill fraction")
    p.add_argument("--t-max", type=float, default=2000.0, dest="t_max")
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--record-every", type=int, default=1, dest="record_every")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("basins", help="basin-of-attraction grid")
    common(p)
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--t-max", type=float, default=2000.0, dest="t_max")
    p.add_argument("--dt", type=float, default=0.01)
    p.set_defaults(func=cmd_basins)

    p = sub.add_parser("sweep", help="stability regimes over an allowance grid")
    common(p)
    p.add_argument("--A-from", type=float, required=True, dest="A_from")
    p.add_argument("--A-to", type=float, required=True, dest="A_to")
    p.add_argument("--steps", type=int, required=True, help="number of grid points (inclusive)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("welfare", help="policy welfare verdict")
    common(p, out=False)
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=cmd_welfare)

    p = sub.add_parser("phase", help="vector-field and trajectory data files")
    common(p, out=False)
    p.add_argument("--closed", action="store_true")
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--trajectories", help="JSON list of initial states")
    p.add_argument("--t-max", type=float, default=2000.0, dest="t_max")
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_phase)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except InvalidParamsError as e:
        print("invalid parameters, refusing to run (use --force to override):", file=sys.stderr)
        print(dumps(to_jsonable(e.report)), file=sys.stderr)
        return 1
    except AssimdynError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
