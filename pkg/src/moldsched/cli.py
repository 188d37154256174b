"""Command-line interface, JSON file formats, bench harness, and SVG Gantt.

Formats (rationals serialize as "p/q" strings; decimal strings are accepted
on input and converted exactly):

  instance file   {"m": int, "jobs": [{"id": int, "times": ["p/q", ...]}]}
  schedule file   {"makespan": "p/q", "lambda": "p/q", "accepted_d": "p/q",
                   "placements": [{"job": int, "first_machine": int,
                                   "width": int, "start": "p/q",
                                   "duration": "p/q"}]}

Exit codes: 0 success / feasible, 1 infeasible schedule, 2 invalid input,
3 internal invariant violation (diagnostic dumped to stderr).

The bench harness runs solves in a process pool (worker count from the
MOLDSCHED_WORKERS environment variable) and writes one CSV row per
(n, m, seed) in deterministic order.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .driver import initial_bounds, solve
from .gen import GenConfig, generate
from .model import Instance, Job, PlacedJob, Schedule, rat, validate_instance
from .shelf import ShelfInvariantError
from .verify import validate_schedule

WORKERS_ENV = "MOLDSCHED_WORKERS"


# ---------------------------------------------------------------------------
# serialization


def instance_to_obj(inst: Instance) -> dict:
    return {
        "m": inst.m,
        "jobs": [
            {"id": j.id, "times": [str(t) for t in j.times]} for j in inst.jobs
        ],
    }


def instance_from_obj(obj: dict) -> Instance:
    jobs = tuple(
        Job(int(j["id"]), tuple(rat(t) for t in j["times"])) for j in obj["jobs"]
    )
    return Instance(int(obj["m"]), jobs)


def schedule_to_obj(sched: Schedule, lam: Fraction, accepted_d: Fraction) -> dict:
    return {
        "makespan": str(sched.makespan),
        "lambda": str(lam),
        "accepted_d": str(accepted_d),
        "placements": [
            {
                "job": p.job_id,
                "first_machine": p.first_machine,
                "width": p.width,
                "start": str(p.start),
                "duration": str(p.duration),
            }
            for p in sched.placements
        ],
    }


def schedule_from_obj(obj: dict) -> tuple[Schedule, Fraction, Fraction]:
    placements = tuple(
        PlacedJob(
            int(p["job"]),
            int(p["first_machine"]),
            int(p["width"]),
            rat(p["start"]),
            rat(p["duration"]),
        )
        for p in obj["placements"]
    )
    sched = Schedule(placements, rat(obj["makespan"]))
    return sched, rat(obj["lambda"]), rat(obj["accepted_d"])


def _dump_json(obj: dict, path: str) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def load_instance(path: str) -> Instance:
    return instance_from_obj(_load_json(path))


# ---------------------------------------------------------------------------
# gantt


def gantt_svg(inst: Instance, sched: Schedule, width: int = 900, row: int = 22) -> str:
    """One rectangle per placement, machines on the y-axis, time on the x-axis."""
    m = inst.m
    margin = 60
    height = m * row + 2 * margin
    span = float(sched.makespan) or 1.0
    scale = (width - 2 * margin) / span
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<text x="{width - margin}" y="{height - margin + 16}" '
        f'font-size="11" text-anchor="end">t = {sched.makespan}</text>',
    ]
    for p in sched.placements:
        x = margin + float(p.start) * scale
        w = max(float(p.duration) * scale, 1.0)
        y = margin + p.first_machine * row
        h = p.width * row - 2
        hue = (p.job_id * 61) % 360
        parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{h:.2f}" '
            f'fill="hsl({hue},65%,70%)" stroke="black" stroke-width="0.5">'
            f"<title>job {p.job_id}</title></rect>"
        )
    for i in range(m):
        parts.append(
            f'<text x="{margin - 6}" y="{margin + i * row + row * 0.7:.2f}" '
            f'font-size="10" text-anchor="end">{i}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


# ---------------------------------------------------------------------------
# commands


def cmd_solve(
    instance_path: str,
    epsilon: Fraction,
    out_path: Optional[str],
    gantt_path: Optional[str] = None,
) -> int:
    try:
        obj = _load_json(instance_path)
        inst = instance_from_obj(obj)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno}, column {exc.colno}", file=sys.stderr)
        return 2
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: bad instance file: {exc}", file=sys.stderr)
        return 2
    problems = validate_instance(inst)
    if problems:
        for v in problems:
            print(f"error: job {v.job_id}, k={v.k}: {v.kind}", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    try:
        result = solve(inst, epsilon)
    except ShelfInvariantError as exc:
        print(f"internal invariant violation: {exc.diagnostic()}", file=sys.stderr)
        return 3
    wall = time.perf_counter() - t0
    if out_path:
        _dump_json(
            schedule_to_obj(result.schedule, result.lambda_used, result.accepted_d),
            out_path,
        )
    if gantt_path:
        Path(gantt_path).write_text(gantt_svg(inst, result.schedule))
    print(f"makespan    {result.makespan}  (~{float(result.makespan):.6g})")
    print(f"accepted_d  {result.accepted_d}  (~{float(result.accepted_d):.6g})")
    print(f"lambda      {result.lambda_used}  (~{float(result.lambda_used):.6g})")
    print(f"iterations  {result.iterations}")
    print(f"wall_s      {wall:.3f}")
    return 0


def cmd_gen(n: int, m: int, seed: int, out_path: str) -> int:
    inst = generate(GenConfig(n=n, m=m, seed=seed))
    _dump_json(instance_to_obj(inst), out_path)
    print(f"wrote {out_path}: n={n} m={m} seed={seed}")
    return 0


def cmd_verify(instance_path: str, schedule_path: str, contiguous: bool) -> int:
    try:
        inst = load_instance(instance_path)
        sched, _, _ = schedule_from_obj(_load_json(schedule_path))
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno}, column {exc.colno}", file=sys.stderr)
        return 2
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: bad input file: {exc}", file=sys.stderr)
        return 2
    placed_ids = {p.job_id for p in sched.placements}
    unknown = placed_ids - set(inst.by_id)
    if unknown:
        print(f"error: schedule places unknown job ids {sorted(unknown)}", file=sys.stderr)
        return 2
    report = validate_schedule(inst, sched, require_contiguous=contiguous)
    print(f"makespan {report.makespan}")
    for v in report.violations:
        where = f" machine {v.machine}" if v.machine is not None else ""
        print(f"violation: {v.kind} jobs={list(v.job_ids)}{where} {v.detail}")
    if report.ok(require_contiguous=contiguous):
        print("ok")
        return 0
    return 1


def _bench_one(task: tuple[int, int, int, str]) -> dict:
    n, m, seed, eps_str = task
    row = {"n": n, "m": m, "seed": seed, "epsilon": eps_str, "error": ""}
    try:
        inst = generate(GenConfig(n=n, m=m, seed=seed))
        t0 = time.perf_counter()
        result = solve(inst, rat(eps_str))
        wall_ms = (time.perf_counter() - t0) * 1000.0
        bounds_lower = initial_bounds(inst).lower
        lower = max(result.certified_lower, bounds_lower)
        ratio = result.makespan / lower if lower > 0 else Fraction(0)
        row.update(
            makespan=str(result.makespan),
            accepted_d=str(result.accepted_d),
            lambda_used=str(result.lambda_used),
            ratio_vs_lower_bound=f"{float(ratio):.6f}",
            wall_ms=f"{wall_ms:.3f}",
            iterations=result.iterations,
        )
    except Exception as exc:  # recorded per-row, harness keeps going
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


_BENCH_FIELDS = [
    "n", "m", "seed", "epsilon", "makespan", "accepted_d", "lambda_used",
    "ratio_vs_lower_bound", "wall_ms", "iterations", "error",
]


def cmd_bench(config_path: str, out_csv: str) -> int:
    try:
        cfg = _load_json(config_path)
        tasks = []
        for run in cfg["runs"]:
            eps = str(run.get("epsilon", "1/20"))
            for seed in run["seeds"]:
                tasks.append((int(run["n"]), int(run["m"]), int(seed), eps))
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno}, column {exc.colno}", file=sys.stderr)
        return 2
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: bad bench config: {exc}", file=sys.stderr)
        return 2
    workers = int(os.environ.get(WORKERS_ENV, "0")) or None
    rows: list[dict] = []
    if len(tasks) <= 1:
        rows = [_bench_one(t) for t in tasks]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_bench_one, tasks))
    rows.sort(key=lambda r: (r["n"], r["m"], r["seed"]))
    with open(out_csv, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_BENCH_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k, "") for k in _BENCH_FIELDS})
    failures = sum(1 for r in rows if r["error"])
    print(f"wrote {out_csv}: {len(rows)} rows, {failures} failures")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moldsched",
        description="Monotone moldable job scheduling: below-3/2 approximation "
        "with contiguous machine assignment.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance")
    p.add_argument("--epsilon", default="1/20", help="relative accuracy (default 1/20)")
    p.add_argument("--out", help="write the schedule JSON here")
    p.add_argument("--gantt", help="write an SVG Gantt chart here")

    p = sub.add_parser("gen", help="generate a random monotone instance")
    p.add_argument("--jobs", "-n", type=int, required=True)
    p.add_argument("--machines", "-m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="verify a schedule against an instance")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.add_argument("--contiguous", action="store_true", help="also require contiguity")

    p = sub.add_parser("bench", help="run a benchmark grid to CSV")
    p.add_argument("config")
    p.add_argument("--out", required=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "solve":
        try:
            eps = rat(args.epsilon)
        except (ValueError, ZeroDivisionError):
            print(f"error: bad epsilon {args.epsilon!r}", file=sys.stderr)
            return 2
        return cmd_solve(args.instance, eps, args.out, args.gantt)
    if args.command == "gen":
        return cmd_gen(args.jobs, args.machines, args.seed, args.out)
    if args.command == "verify":
        return cmd_verify(args.instance, args.schedule, args.contiguous)
    if args.command == "bench":
        return cmd_bench(args.config, args.out)
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
