"""Shelf construction and repair: turn an accepted class partition into a
contiguous schedule of height at most lam*d.

The pipeline for one accepted guess d is:

  build_three_shelf   class-1 jobs at gamma(j,d); class-2 jobs compressed to
                      half their canonical machines (pairing the 1- and
                      3-machine ones); class-3 jobs parked on shelf 2 with
                      height at most (lam-1)*d, possibly using more than the
                      available machines.
  apply_transformations
                      three local moves that shrink shelf-1 usage: wide short
                      jobs drop to fewer machines in shelf 0, two short
                      one-machine jobs stack onto a single machine, and a
                      shelf-2 job that fits on the idle machines leaves
                      shelf 2.
  repair_s2_small_q / repair_s2_large_q
                      make shelf 2 fit.  With few idle machines, repeatedly
                      take a machine away from the flattest shelf-2 job and
                      interleave shelf 1 (descending) with shelf 2
                      (ascending, hanging at lam*d).  With many idle
                      machines shelf 2 holds a single job, which is slid
                      over the least-loaded machine suffix.
  add_small_jobs      greedy least-loaded insertion of the small jobs.

No step ever increases a job's machine count, so total work never grows and
stays within the knapsack budget m*d - W_S; that budget is what makes the
repairs provably succeed.  Every structural fact the repairs rely on is
asserted and raises ShelfInvariantError instead of emitting a bad schedule.

Machine bookkeeping: shelf 0 owns machines [0, m0); shelves 1 and 2 share
the remaining m' = m - m0 machines, and all repair thresholds (q vs m'/6,
shelf-2 width vs m') are taken relative to m'.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .mckp import MckpSolution
from .model import (
    LAMBDA_Q0,
    Instance,
    PlacedJob,
    Schedule,
    gamma,
    make_schedule,
    work,
)


class ShelfInvariantError(RuntimeError):
    """A structural guarantee of the repair phase failed.

    For an accepted partition this is unreachable; if it fires, either the
    input violates monotony or there is a bug, and the shelf state is
    attached for diagnosis.
    """

    def __init__(self, message: str, shelf: Optional["ShelfSchedule"] = None):
        super().__init__(message)
        self.shelf = shelf

    def diagnostic(self) -> str:
        if self.shelf is None:
            return str(self)
        return f"{self}\n{self.shelf.summary()}"


@dataclass(frozen=True)
class ColumnPart:
    job_id: int
    height: Fraction


@dataclass
class ShelfColumn:
    """One column of shelf 0 or 1: stacked jobs sharing a machine interval.

    ``split_of`` marks the two single-machine lanes of a two-machine class-2
    job that carries a one-machine partner on top of one lane; the layout
    step recombines the lanes onto adjacent machines.
    """

    width: int
    parts: list[ColumnPart]
    split_of: Optional[int] = None
    lane: Optional[int] = None  # 0 = lane with the partner on top, 1 = bare lane

    @property
    def height(self) -> Fraction:
        return sum((p.height for p in self.parts), Fraction(0))

    def min_job_id(self) -> int:
        return min(p.job_id for p in self.parts)


@dataclass
class S2Job:
    job_id: int
    width: int
    height: Fraction


@dataclass(frozen=True)
class IdleRun:
    width: int


@dataclass
class ShelfSchedule:
    inst: Instance
    d: Fraction
    lam: Fraction
    s0: list[ShelfColumn] = field(default_factory=list)
    s1: list[ShelfColumn] = field(default_factory=list)
    s2: list[S2Job] = field(default_factory=list)
    split_job: Optional[int] = None

    @property
    def m0(self) -> int:
        return sum(c.width for c in self.s0)

    @property
    def m1_used(self) -> int:
        return sum(c.width for c in self.s1)

    @property
    def m2(self) -> int:
        return sum(j.width for j in self.s2)

    @property
    def q(self) -> int:
        return self.inst.m - self.m0 - self.m1_used

    def total_work(self) -> Fraction:
        # The split job's bottom part appears once per lane at width 1, which
        # sums to its true two-machine work, so a plain sum is exact.
        tot = Fraction(0)
        for col in self.s0 + self.s1:
            for part in col.parts:
                tot += part.height * col.width
        for j in self.s2:
            tot += j.height * j.width
        return tot

    def summary(self) -> str:
        def cols(cs: list[ShelfColumn]) -> str:
            return ", ".join(
                f"[w={c.width} h={c.height} jobs={[p.job_id for p in c.parts]}"
                + (f" split={c.split_of}/{c.lane}" if c.split_of is not None else "")
                + "]"
                for c in cs
            )

        return (
            f"shelf schedule: m={self.inst.m} d={self.d} lam={self.lam} "
            f"m0={self.m0} m1_used={self.m1_used} q={self.q} m2={self.m2}\n"
            f"  s0: {cols(self.s0)}\n  s1: {cols(self.s1)}\n"
            f"  s2: {[(j.job_id, j.width, str(j.height)) for j in self.s2]}\n"
            f"  split_job={self.split_job}"
        )


def _t(inst: Instance, job_id: int, k: int) -> Fraction:
    return inst.job(job_id).times[k - 1]


def build_three_shelf(
    inst: Instance,
    partition: Union[MckpSolution, dict[int, int]],
    d: Fraction,
    lam: Fraction,
) -> ShelfSchedule:
    """Place the partitioned big jobs onto shelves 0/1/2 for stretch lam.

    Class-2 jobs are compressed so that shelves 0 and 1 together need at most
    m machines: canonical count g >= 4 drops to floor(g/2) machines, g == 2
    drops to one machine, and the g == 3 / g == 1 jobs are stacked in pairs.
    A leftover 3-machine job lands on gamma(j, lam*d) <= 2 machines; if a
    leftover 1-machine job exists as well, it rides on top of one lane of the
    3-machine job, recorded as two split lanes.
    """
    if not LAMBDA_Q0 <= lam < Fraction(3, 2):
        raise ValueError(f"lam must be in [10/7, 3/2), got {lam}")
    assignment = (
        partition.assignment if isinstance(partition, MckpSolution) else dict(partition)
    )
    ss = ShelfSchedule(inst, d, lam)
    lam_d = lam * d
    h2 = Fraction(4, 7) * d

    def drop(col: ShelfColumn) -> None:
        if col.height > lam_d:
            raise ShelfInvariantError(
                f"column height {col.height} exceeds lam*d = {lam_d}", ss
            )
        (ss.s0 if col.height > d else ss.s1).append(col)

    threes: list[int] = []
    ones: list[int] = []
    for job_id in sorted(assignment):
        cls = assignment[job_id]
        job = inst.job(job_id)
        if cls == 1:
            g = gamma(job, d, inst.m)
            if g is None:
                raise ShelfInvariantError(f"class-1 job {job_id} cannot meet d", ss)
            drop(ShelfColumn(g, [ColumnPart(job_id, job.times[g - 1])]))
        elif cls == 2:
            g = gamma(job, h2, inst.m)
            if g is None:
                raise ShelfInvariantError(f"class-2 job {job_id} cannot meet (4/7)d", ss)
            if g >= 4:
                w = g // 2
                drop(ShelfColumn(w, [ColumnPart(job_id, job.times[w - 1])]))
            elif g == 2:
                drop(ShelfColumn(1, [ColumnPart(job_id, job.times[0])]))
            elif g == 3:
                threes.append(job_id)
            else:
                ones.append(job_id)
        elif cls == 3:
            g = gamma(job, (lam - 1) * d, inst.m)
            if g is None:
                raise ShelfInvariantError(f"class-3 job {job_id} cannot meet (lam-1)d", ss)
            ss.s2.append(S2Job(job_id, g, job.times[g - 1]))
        else:
            raise ValueError(f"job {job_id}: class must be 1..3, got {cls}")

    leftover3 = _pair_up(ss, threes, width=3, height_at=3, drop=drop)
    leftover1 = _pair_up(ss, ones, width=1, height_at=1, drop=drop)

    if leftover3 is not None and leftover1 is not None:
        t3 = _t(inst, leftover3, 2)
        t1 = _t(inst, leftover1, 1)
        lane0 = ShelfColumn(
            1,
            [ColumnPart(leftover3, t3), ColumnPart(leftover1, t1)],
            split_of=leftover3,
            lane=0,
        )
        lane1 = ShelfColumn(1, [ColumnPart(leftover3, t3)], split_of=leftover3, lane=1)
        if lane0.height > lam_d or not lane0.height > d:
            raise ShelfInvariantError("split column height out of range", ss)
        ss.s0.append(lane0)
        ss.s1.append(lane1)
        ss.split_job = leftover3
    elif leftover3 is not None:
        job = inst.job(leftover3)
        g = gamma(job, lam_d, inst.m)
        if g is None or g > 2:
            raise ShelfInvariantError(
                f"leftover 3-machine job {leftover3} needs more than 2 machines", ss
            )
        drop(ShelfColumn(g, [ColumnPart(leftover3, job.times[g - 1])]))
    elif leftover1 is not None:
        drop(ShelfColumn(1, [ColumnPart(leftover1, _t(inst, leftover1, 1))]))

    if ss.m0 + ss.m1_used > inst.m:
        raise ShelfInvariantError(
            f"shelves 0+1 need {ss.m0 + ss.m1_used} > m = {inst.m} machines", ss
        )
    return ss


def _pair_up(
    ss: ShelfSchedule, job_ids: list[int], width: int, height_at: int, drop
) -> Optional[int]:
    """Stack jobs in pairs (tallest with next-tallest); return the odd one out."""
    inst = ss.inst
    ordered = sorted(job_ids, key=lambda j: (-_t(inst, j, height_at), j))
    for a, b in zip(ordered[0::2], ordered[1::2]):
        drop(
            ShelfColumn(
                width,
                [
                    ColumnPart(a, _t(inst, a, height_at)),
                    ColumnPart(b, _t(inst, b, height_at)),
                ],
            )
        )
    return ordered[-1] if len(ordered) % 2 else None


# ---------------------------------------------------------------------------
# transformations


def apply_transformations(ss: ShelfSchedule) -> ShelfSchedule:
    """Apply the three shelf-shrinking moves until none applies (in place).

    Each move pushes a job toward shelf 0 (or out of shelf 2), so the loop
    runs at most twice per job; a generous guard turns any unexpected cycling
    into a loud error.
    """
    n_jobs = sum(len(c.parts) for c in ss.s0 + ss.s1) + len(ss.s2)
    guard = 4 * n_jobs + 16
    while True:
        guard -= 1
        if guard < 0:
            raise ShelfInvariantError("transformation loop exceeded its bound", ss)
        if _shrink_wide_short_job(ss) or _stack_two_shorts(ss) or _drain_shelf2(ss):
            continue
        break
    _check_transformed(ss)
    return ss


def _shrink_wide_short_job(ss: ShelfSchedule) -> bool:
    # A shelf-1 job no taller than (lam/2)d on more than one machine can drop
    # to gamma(j, lam*d) machines and own them fully in shelf 0.
    half = ss.lam / 2 * ss.d
    for col in ss.s1:
        if col.width > 1 and col.height <= half:
            if len(col.parts) != 1 or col.split_of is not None:
                raise ShelfInvariantError("composite column met the shrink rule", ss)
            job = ss.inst.job(col.parts[0].job_id)
            g = gamma(job, ss.lam * ss.d, ss.inst.m)
            if g is None or g > col.width:
                raise ShelfInvariantError("shrink would widen a job", ss)
            col.width = g
            col.parts[0] = ColumnPart(job.id, job.times[g - 1])
            ss.s1.remove(col)
            ss.s0.append(col)
            return True
    return False


def _stack_two_shorts(ss: ShelfSchedule) -> bool:
    # Two one-machine shelf-1 jobs strictly shorter than (lam/2)d share one
    # machine in shelf 0, freeing a machine.  A split lane may participate
    # but must stay at the bottom so its two machines keep a common start.
    half = ss.lam / 2 * ss.d
    cands = [c for c in ss.s1 if c.width == 1 and c.height < half]
    if len(cands) < 2:
        return False
    cands.sort(key=lambda c: (c.split_of is None, -c.height, c.min_job_id()))
    bottom, top = cands[0], cands[1]
    if top.split_of is not None:
        raise ShelfInvariantError("two split lanes on shelf 1", ss)
    merged = ShelfColumn(
        1, bottom.parts + top.parts, split_of=bottom.split_of, lane=bottom.lane
    )
    ss.s1.remove(bottom)
    ss.s1.remove(top)
    ss.s0.append(merged)
    return True


def _drain_shelf2(ss: ShelfSchedule) -> bool:
    # A shelf-2 job that would finish within lam*d on the q idle machines
    # leaves shelf 2 for gamma(j, lam*d) machines in shelf 1 or 0.
    q = ss.q
    if q < 1:
        return False
    lam_d = ss.lam * ss.d
    for j in ss.s2:
        job = ss.inst.job(j.job_id)
        if job.times[q - 1] <= lam_d:
            g = gamma(job, lam_d, ss.inst.m)
            if g is None or g > q:
                raise ShelfInvariantError("shelf-2 drain does not fit idle machines", ss)
            col = ShelfColumn(g, [ColumnPart(j.job_id, job.times[g - 1])])
            ss.s2.remove(j)
            (ss.s1 if col.height <= ss.d else ss.s0).append(col)
            return True
    return False


def _check_transformed(ss: ShelfSchedule) -> None:
    """Structural facts the repairs rely on; violations are internal errors."""
    if ss.m0 + ss.m1_used > ss.inst.m:
        raise ShelfInvariantError("shelves 0+1 exceed the machine count", ss)
    half = ss.lam / 2 * ss.d
    shorts = [c for c in ss.s1 if c.height < half]
    if len(shorts) > 1:
        raise ShelfInvariantError(
            f"{len(shorts)} shelf-1 machines run jobs shorter than (lam/2)d", ss
        )
    q = ss.q
    if q >= 1:
        bound = ss.lam * ss.d * q
        for j in ss.s2:
            if work(ss.inst.job(j.job_id), j.width) <= bound:
                raise ShelfInvariantError(
                    f"shelf-2 job {j.job_id} has work <= lam*d*q", ss
                )


# ---------------------------------------------------------------------------
# repairs


def repair_s2_small_q(ss: ShelfSchedule) -> Schedule:
    """Fit shelf 2 when q <= m'/6 by compressing its flattest jobs.

    While shelf 2 needs more than the m' shared machines, the job with the
    smallest height loses one machine (heights grow, staying under the proven
    caps).  Shelf 1 is then laid out descending from the left and shelf 2
    ascending from the right, each shelf-2 job finishing exactly at lam*d.
    """
    m_eff = ss.inst.m - ss.m0
    if 6 * ss.q > m_eff:
        raise ShelfInvariantError("small-q repair called with q > m'/6", ss)
    if ss.s2 and ss.m2 >= 3 * m_eff:
        raise ShelfInvariantError(
            f"shelf 2 uses {ss.m2} >= 3*m' = {3 * m_eff} machines", ss
        )
    while ss.m2 > m_eff:
        j = min(ss.s2, key=lambda s: (s.height, s.job_id))
        if j.width <= 1:
            raise ShelfInvariantError("flattest shelf-2 job is already one machine", ss)
        j.width -= 1
        j.height = _t(ss.inst, j.job_id, j.width)
    return _place_right_aligned(ss)


def repair_s2_large_q(ss: ShelfSchedule, lam: Optional[Fraction] = None) -> Schedule:
    """Fit shelf 2 when q > m'/6: a single job slides over a machine suffix.

    Shelf 1 is sorted descending, so for each i the m' - i least loaded
    machines are the suffix starting at relative machine i.  The single
    shelf-2 job is placed on the first (widest) suffix whose tallest machine
    leaves room under lam*d; at the stretch LAMBDA_STAR_UPPER such an i
    always exists while the work budget holds.
    """
    if lam is not None and lam != ss.lam:
        raise ValueError(f"lam {lam} does not match the shelf stretch {ss.lam}")
    m_eff = ss.inst.m - ss.m0
    if 6 * ss.q <= m_eff:
        raise ShelfInvariantError("large-q repair called with q <= m'/6", ss)
    if len(ss.s2) > 1:
        raise ShelfInvariantError(
            f"{len(ss.s2)} shelf-2 jobs with q > m'/6 (expected at most 1)", ss
        )
    if not ss.s2 or ss.m2 <= m_eff:
        return _place_right_aligned(ss)

    j0 = ss.s2[0]
    inst = ss.inst
    lam_d = ss.lam * ss.d
    cols = _descending(ss.s1)
    loads: list[Fraction] = []
    for col in cols:
        loads.extend([col.height] * col.width)
    loads.extend([Fraction(0)] * ss.q)

    chosen_i: Optional[int] = None
    for i in range(m_eff - ss.q):
        w = m_eff - i
        if loads[i] + inst.job(j0.job_id).times[w - 1] <= lam_d:
            chosen_i = i
            break
    if chosen_i is None:
        raise ShelfInvariantError(
            "no machine suffix admits the shelf-2 job within lam*d", ss
        )
    w = m_eff - chosen_i
    j0.width = w
    j0.height = inst.job(j0.job_id).times[w - 1]

    split_lane = _split_lane_in(ss.s1)
    if split_lane is None:
        runs: list[Union[ShelfColumn, IdleRun]] = list(cols)
        if ss.q:
            runs.append(IdleRun(ss.q))
        rel_start = chosen_i
    else:
        # Keep the split lane on the first shared machine (next to its shelf-0
        # twin) and rebuild the run order around the suffix boundary.  Any
        # column under the shelf-2 job has height <= loads[chosen_i], so
        # reordering within the covered/uncovered groups stays feasible.
        prefix, straddler, suffix = _split_at(cols, chosen_i)
        if split_lane in suffix:
            suffix.remove(split_lane)
            runs = [split_lane] + suffix + straddler + [IdleRun(ss.q)] + prefix
            rel_start = 0
        else:
            prefix.remove(split_lane)
            runs = [split_lane] + prefix + straddler + suffix + [IdleRun(ss.q)]
            rel_start = m_eff - w
    plan = [(j0, ss.m0 + rel_start)]
    return layout_contiguous(ss, runs, plan)


def _split_at(
    cols: list[ShelfColumn], boundary: int
) -> tuple[list[ShelfColumn], list[ShelfColumn], list[ShelfColumn]]:
    """Partition columns by position relative to a machine boundary."""
    prefix: list[ShelfColumn] = []
    straddler: list[ShelfColumn] = []
    suffix: list[ShelfColumn] = []
    x = 0
    for col in cols:
        if x + col.width <= boundary:
            prefix.append(col)
        elif x >= boundary:
            suffix.append(col)
        else:
            straddler.append(col)
        x += col.width
    return prefix, straddler, suffix


def _split_lane_in(cols: list[ShelfColumn]) -> Optional[ShelfColumn]:
    for col in cols:
        if col.split_of is not None:
            return col
    return None


def _descending(cols: Iterable[ShelfColumn]) -> list[ShelfColumn]:
    return sorted(cols, key=lambda c: (-c.height, c.min_job_id()))


def _place_right_aligned(ss: ShelfSchedule) -> Schedule:
    """Shelf 1 descending from the left, shelf 2 ascending hanging at lam*d."""
    m_eff = ss.inst.m - ss.m0
    if ss.m2 > m_eff:
        raise ShelfInvariantError("shelf 2 still too wide for placement", ss)
    cols = _descending(ss.s1)
    split_lane = _split_lane_in(cols)
    if split_lane is not None:
        cols.remove(split_lane)
        cols.insert(0, split_lane)
    plan = []
    cursor = ss.inst.m - ss.m2
    for j in sorted(ss.s2, key=lambda s: (s.height, s.job_id)):
        plan.append((j, cursor))
        cursor += j.width
    return layout_contiguous(ss, cols, plan)


def layout_contiguous(
    ss: ShelfSchedule,
    s1_runs: Sequence[Union[ShelfColumn, IdleRun]],
    s2_plan: Sequence[tuple[S2Job, int]],
) -> Schedule:
    """Assign machine indices and emit the final placements.

    Shelf-0 columns take machines [0, m0) with any split lanes moved to the
    right edge; shelf-1 runs follow in the given order; shelf-2 jobs start at
    lam*d minus their height on the machines the caller planned.  The two
    lanes of a split job are recombined into one two-machine placement, which
    requires them to land on adjacent machines.
    """
    inst = ss.inst
    lam_d = ss.lam * ss.d
    placements: list[PlacedJob] = []
    split_lanes: list[tuple[int, int, ColumnPart]] = []  # (lane, machine, part)

    def emit(col: ShelfColumn, first: int) -> None:
        y = Fraction(0)
        for idx, part in enumerate(col.parts):
            if col.split_of is not None and idx == 0:
                if y != 0:
                    raise ShelfInvariantError("split lane must start at time 0", ss)
                split_lanes.append((col.lane or 0, first, part))
            else:
                placements.append(PlacedJob(part.job_id, first, col.width, y, part.height))
            y += part.height

    s0_normal = [c for c in ss.s0 if c.split_of is None]
    s0_lanes = sorted(
        (c for c in ss.s0 if c.split_of is not None), key=lambda c: c.lane or 0
    )
    cursor = 0
    for col in s0_normal + s0_lanes:
        emit(col, cursor)
        cursor += col.width
    if cursor != ss.m0:
        raise ShelfInvariantError("shelf-0 width accounting is off", ss)
    for run in s1_runs:
        if isinstance(run, IdleRun):
            cursor += run.width
            continue
        emit(run, cursor)
        cursor += run.width
    if cursor > inst.m:
        raise ShelfInvariantError("layout overruns the machine count", ss)

    if ss.split_job is not None:
        if len(split_lanes) != 2:
            raise ShelfInvariantError("expected exactly two split lanes", ss)
        split_lanes.sort()
        (_, mach0, part0), (_, mach1, part1) = split_lanes
        if abs(mach0 - mach1) != 1 or part0.height != part1.height:
            raise ShelfInvariantError("split lanes are not adjacent twins", ss)
        placements.append(
            PlacedJob(ss.split_job, min(mach0, mach1), 2, Fraction(0), part0.height)
        )
    elif split_lanes:
        raise ShelfInvariantError("stray split lane", ss)

    for j, first in s2_plan:
        if first < ss.m0 or first + j.width > inst.m:
            raise ShelfInvariantError("shelf-2 placement outside the shared region", ss)
        placements.append(
            PlacedJob(j.job_id, first, j.width, lam_d - j.height, j.height)
        )

    sched = make_schedule(placements)
    _assert_loads(sched, inst.m, lam_d, ss)
    return sched


def _assert_loads(sched: Schedule, m: int, cap: Fraction, ss: ShelfSchedule) -> None:
    """Per-machine disjointness and the lam*d ceiling, checked exactly."""
    per_machine: list[list[tuple[Fraction, Fraction]]] = [[] for _ in range(m)]
    for p in sched.placements:
        if p.start < 0 or p.end > cap:
            raise ShelfInvariantError(
                f"job {p.job_id} runs [{p.start}, {p.end}) outside [0, {cap}]", ss
            )
        for mach in p.machines:
            per_machine[mach].append((p.start, p.end))
    for mach, ivs in enumerate(per_machine):
        ivs.sort()
        for (s1_, e1), (s2_, _) in zip(ivs, ivs[1:]):
            if s2_ < e1:
                raise ShelfInvariantError(
                    f"overlap on machine {mach} at time {s2_}", ss
                )


def add_small_jobs(
    sched: Schedule,
    inst: Instance,
    small: Iterable[int],
    lam: Fraction,
    d: Fraction,
) -> Schedule:
    """Greedy insertion of the one-machine small jobs.

    Expects every machine's busy time to be a bottom stack starting at 0 plus
    at most one top stack ending exactly at lam*d, so the idle time is one
    gap.  Each small job goes to the machine with the least total busy time
    (lowest index on ties) and starts at the top of its bottom stack; the
    work budget guarantees it fits under lam*d.
    """
    small = sorted(small)
    if not small:
        return sched
    cap = lam * d
    m = inst.m
    bottom, top = _gap_profile(sched, m, cap)
    heap = [(bottom[i] + (cap - top[i]), i) for i in range(m)]
    heapq.heapify(heap)
    placements = list(sched.placements)
    for job_id in small:
        t1 = inst.job(job_id).times[0]
        busy, i = heapq.heappop(heap)
        start = bottom[i]
        if start + t1 > top[i]:
            raise ShelfInvariantError(
                f"small job {job_id} would end at {start + t1} past the gap", None
            )
        placements.append(PlacedJob(job_id, i, 1, start, t1))
        bottom[i] = start + t1
        heapq.heappush(heap, (busy + t1, i))
    return make_schedule(placements)


def _gap_profile(
    sched: Schedule, m: int, cap: Fraction
) -> tuple[list[Fraction], list[Fraction]]:
    per_machine: list[list[tuple[Fraction, Fraction]]] = [[] for _ in range(m)]
    for p in sched.placements:
        for mach in p.machines:
            per_machine[mach].append((p.start, p.end))
    bottom = [Fraction(0)] * m
    top = [cap] * m
    for i, ivs in enumerate(per_machine):
        ivs.sort()
        t = Fraction(0)
        k = 0
        while k < len(ivs) and ivs[k][0] == t:
            t = ivs[k][1]
            k += 1
        bottom[i] = t
        if k < len(ivs):
            top[i] = ivs[k][0]
            t2 = top[i]
            for s, e in ivs[k:]:
                if s != t2:
                    raise ShelfInvariantError(
                        f"machine {i} has more than one idle gap", None
                    )
                t2 = e
            if t2 != cap:
                raise ShelfInvariantError(
                    f"machine {i} top stack ends at {t2}, not {cap}", None
                )
        if bottom[i] > top[i]:
            raise ShelfInvariantError(f"machine {i} gap is negative", None)
    return bottom, top
