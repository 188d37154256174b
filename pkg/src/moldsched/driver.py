"""Dual-approximation driver: binary search over the makespan guess.

For each guess d the pipeline either produces a verified contiguous schedule
of makespan at most lam*d (lam depending on the idle-machine regime of the
shelf schedule) or certifies d < OPT.  A geometric binary search over d then
gives makespan <= lam * (1 + eps) * OPT.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import mckp, shelf
from .model import (
    LAMBDA_Q0,
    LAMBDA_SMALL_Q,
    LAMBDA_STAR_UPPER,
    Instance,
    PlacedJob,
    Schedule,
    classify_jobs,
    make_schedule,
)
from .verify import validate_schedule

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchBounds:
    lower: Fraction  # certified lower bound on OPT
    upper: Fraction  # guess with a known-feasible schedule
    best: Schedule   # feasible schedule achieving makespan <= upper (sequential)


@dataclass
class SolveResult:
    schedule: Schedule
    accepted_d: Fraction
    lambda_used: Fraction
    makespan: Fraction
    iterations: int
    timings: dict[str, float] = field(default_factory=dict)
    certified_lower: Fraction = Fraction(0)
    mckp_assignment: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class _Accepted:
    schedule: Schedule
    lam: Fraction
    solution: mckp.MckpSolution
    shelf_q: int


def initial_bounds(inst: Instance) -> SearchBounds:
    """Trivial certified bounds: work/m and the fastest full-width job from
    below, the one-machine sequential schedule from above."""
    if not inst.jobs:
        empty = make_schedule([])
        return SearchBounds(Fraction(0), Fraction(0), empty)
    total_seq = sum((j.times[0] for j in inst.jobs), Fraction(0))
    lower = max(total_seq / inst.m, max(j.times[inst.m - 1] for j in inst.jobs))
    placements = []
    t = Fraction(0)
    for job in inst.jobs:
        placements.append(PlacedJob(job.id, 0, 1, t, job.times[0]))
        t += job.times[0]
    return SearchBounds(lower, total_seq, make_schedule(placements))


def try_guess(inst: Instance, d: Fraction) -> Union[Schedule, mckp.Reject]:
    """One dual-approximation round: schedule within lam*d or Reject (d < OPT)."""
    outcome = _attempt(inst, d)
    if isinstance(outcome, mckp.Reject):
        return outcome
    return outcome.schedule


def _attempt(
    inst: Instance, d: Fraction, timings: Optional[dict[str, float]] = None
) -> Union[_Accepted, mckp.Reject]:
    tick = time.perf_counter

    t0 = tick()
    cls = classify_jobs(inst, d)
    items = mckp.build_items(inst, cls.big, d)
    if isinstance(items, mckp.Reject):
        log.debug("d=%s rejected: %s (job %s)", d, items.reason, items.job_id)
        return items
    solution = mckp.solve_mckp(items, inst.m)
    if isinstance(solution, mckp.Infeasible):
        log.debug("d=%s rejected: knapsack infeasible (%s)", d, solution.reason)
        return mckp.Reject(d, "mckp-infeasible")
    budget = inst.m * d - cls.ws
    if solution.total_cost > budget:
        log.debug(
            "d=%s rejected: cost %s > budget %s", d, solution.total_cost, budget
        )
        return mckp.Reject(d, "work-budget")
    t1 = tick()

    sched, lam, shelf_q = _shelf_pipeline(inst, solution, d)
    t2 = tick()
    sched = shelf.add_small_jobs(sched, inst, cls.small, lam, d)
    t3 = tick()

    report = validate_schedule(inst, sched, require_contiguous=True)
    if not report.ok() or sched.makespan > lam * d:
        raise shelf.ShelfInvariantError(
            f"pipeline output failed verification at d={d}: "
            + "; ".join(v.kind for v in report.violations)
        )
    t4 = tick()
    if timings is not None:
        timings["mckp"] = timings.get("mckp", 0.0) + (t1 - t0)
        timings["shelf"] = timings.get("shelf", 0.0) + (t2 - t1)
        timings["small"] = timings.get("small", 0.0) + (t3 - t2)
        timings["verify"] = timings.get("verify", 0.0) + (t4 - t3)
    return _Accepted(sched, lam, solution, shelf_q)


def _shelf_pipeline(
    inst: Instance, solution: mckp.MckpSolution, d: Fraction
) -> tuple[Schedule, Fraction, int]:
    """Build/transform at 10/7 and escalate the stretch by idle-machine regime.

    q == 0 keeps 10/7; 0 < q <= m'/6 rebuilds at 13/9; q > m'/6 rebuilds at
    the Lambert-W stretch.  If the regime shifts after the 13/9 rebuild, the
    final rebuild at the largest stretch covers both repairs.
    """

    def build(lam: Fraction) -> shelf.ShelfSchedule:
        ss = shelf.build_three_shelf(inst, solution, d, lam)
        return shelf.apply_transformations(ss)

    def regime(ss: shelf.ShelfSchedule) -> int:
        m_eff = inst.m - ss.m0
        if ss.q == 0:
            return 0
        return 1 if 6 * ss.q <= m_eff else 2

    ss = build(LAMBDA_Q0)
    r = regime(ss)
    if r == 0:
        return shelf.repair_s2_small_q(ss), LAMBDA_Q0, ss.q
    if r == 1:
        ss = build(LAMBDA_SMALL_Q)
        if regime(ss) <= 1:
            return shelf.repair_s2_small_q(ss), LAMBDA_SMALL_Q, ss.q
    ss = build(LAMBDA_STAR_UPPER)
    if regime(ss) == 2:
        return shelf.repair_s2_large_q(ss), LAMBDA_STAR_UPPER, ss.q
    return shelf.repair_s2_small_q(ss), LAMBDA_STAR_UPPER, ss.q


def solve(inst: Instance, eps: Fraction = Fraction(1, 20)) -> SolveResult:
    """Binary search on d; returns the best verified schedule.

    Guarantee: makespan <= lambda_used * (1 + eps) * OPT, with lambda_used in
    {10/7, 13/9, LAMBDA_STAR_UPPER}.
    """
    eps = Fraction(eps)
    if not Fraction(0) < eps <= 1:
        raise ValueError(f"eps must be in (0, 1], got {eps}")
    if not inst.jobs:
        return SolveResult(
            make_schedule([]), Fraction(0), LAMBDA_Q0, Fraction(0), 0
        )
    bounds = initial_bounds(inst)
    lower, upper = bounds.lower, bounds.upper
    timings: dict[str, float] = {}

    first = _attempt(inst, upper, timings)
    if isinstance(first, mckp.Reject):
        raise shelf.ShelfInvariantError(
            f"guess {upper} >= OPT was rejected ({first.reason}); "
            "rejection soundness is broken"
        )
    best, accepted_d = first, upper

    iterations = 0
    while upper > (1 + eps) * lower:
        d = _geometric_mid(lower, upper)
        iterations += 1
        outcome = _attempt(inst, d, timings)
        if isinstance(outcome, mckp.Reject):
            lower = d
        else:
            upper, best, accepted_d = d, outcome, d

    return SolveResult(
        schedule=best.schedule,
        accepted_d=accepted_d,
        lambda_used=best.lam,
        makespan=best.schedule.makespan,
        iterations=iterations,
        timings=timings,
        certified_lower=lower,
        mckp_assignment=dict(best.solution.assignment),
    )


def _geometric_mid(lo: Fraction, hi: Fraction) -> Fraction:
    """A rational strictly inside (lo, hi), near sqrt(lo*hi).

    The probe location only steers the search; correctness comes from the
    exact accept/reject decisions, so a float approximation rounded to a
    bounded denominator is fine, with the arithmetic midpoint as fallback.
    """
    try:
        g = math.sqrt(float(lo)) * math.sqrt(float(hi))
        mid = Fraction(g).limit_denominator(10**12)
    except (OverflowError, ValueError):
        mid = (lo + hi) / 2
    if not lo < mid < hi:
        mid = (lo + hi) / 2
    return mid
