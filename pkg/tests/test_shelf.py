import random
from fractions import Fraction

import pytest

from moldsched import (
    LAMBDA_Q0,
    LAMBDA_STAR_UPPER,
    ColumnPart,
    Infeasible,
    Reject,
    S2Job,
    ShelfColumn,
    ShelfInvariantError,
    ShelfSchedule,
    add_small_jobs,
    apply_transformations,
    build_items,
    build_three_shelf,
    classify_jobs,
    make_schedule,
    rat,
    repair_s2_large_q,
    repair_s2_small_q,
    solve_mckp,
    validate_schedule,
)
from util import const_work_job, instance, job, random_instance

D1 = rat(1)


class TestBuildThreeShelf:
    def test_class2_canonical4_compresses_to_half(self):
        # gamma(j, 4/7) = 4 with constant work 2: lands on 2 machines, t(j,2)=1.
        inst = instance(4, const_work_job(1, 2, 4))
        ss = build_three_shelf(inst, {1: 2}, D1, LAMBDA_Q0)
        (col,) = ss.s1
        assert col.width == 2
        assert col.height == 1  # exactly d: shelf 1

    def test_class2_canonical4_tall_goes_to_shelf0(self):
        inst = instance(4, const_work_job(1, rat("2.2"), 4))
        ss = build_three_shelf(inst, {1: 2}, D1, LAMBDA_Q0)
        (col,) = ss.s0
        assert col.width == 2 and col.height == rat("1.1")
        assert not ss.s1

    def test_class2_pair_of_singles_stacks(self):
        inst = instance(3, const_work_job(1, rat("0.5"), 3), const_work_job(2, rat("0.55"), 3))
        ss = build_three_shelf(inst, {1: 2, 2: 2}, D1, LAMBDA_Q0)
        (col,) = ss.s0
        assert col.width == 1
        assert [p.job_id for p in col.parts] == [2, 1]  # taller at the bottom
        assert col.height == rat("1.05")

    def test_class2_canonical2_runs_on_one_machine(self):
        # gamma(j, 4/7) = 2: t(j,1) in (4/7, 8/7] by monotony; one machine.
        inst = instance(2, const_work_job(1, rat("1.1"), 2))
        ss = build_three_shelf(inst, {1: 2}, D1, LAMBDA_Q0)
        (col,) = ss.s0
        assert col.width == 1 and col.height == rat("1.1")

    def test_class3_adversarial_job_on_all_machines(self):
        d = rat("1.08")
        inst = instance(13, const_work_job(1, rat("6.01"), 13))
        assert rat("6.01") / 13 <= Fraction(3, 7) * d
        ss = build_three_shelf(inst, {1: 3}, d, LAMBDA_Q0)
        (j,) = ss.s2
        assert j.width == 13
        assert j.height == rat("6.01") / 13

    def test_split_pair_of_leftovers(self):
        # One 3-machine-class job (work 1.5) and one 1-machine-class job
        # (work 0.5) remain unpaired: the first takes two machines with the
        # second stacked on one of them.
        inst = instance(4, const_work_job(1, rat("1.5"), 4), const_work_job(2, rat("0.5"), 4))
        ss = build_three_shelf(inst, {1: 2, 2: 2}, D1, LAMBDA_Q0)
        assert ss.split_job == 1
        (lane0,) = ss.s0
        (lane1,) = ss.s1
        assert lane0.split_of == 1 and lane0.lane == 0
        assert [p.job_id for p in lane0.parts] == [1, 2]
        assert lane0.height == rat("1.25")
        assert lane1.split_of == 1 and lane1.parts[0].height == rat("0.75")

    def test_leftover_three_alone(self):
        inst = instance(4, const_work_job(1, rat("1.5"), 4))
        ss = build_three_shelf(inst, {1: 2}, D1, LAMBDA_Q0)
        (col,) = ss.s1
        assert col.width == 2 and col.height == rat("0.75")
        assert ss.split_job is None

    def test_machine_overflow_is_loud(self):
        inst = instance(2, job(1, rat("1.5"), 1), job(2, rat("1.5"), 1))
        with pytest.raises(ShelfInvariantError):
            build_three_shelf(inst, {1: 1, 2: 1}, D1, LAMBDA_Q0)

    def test_work_never_grows_through_pipeline(self):
        rng = random.Random(41)
        for _ in range(30):
            inst = random_instance(rng, rng.randint(1, 12), rng.randint(1, 10))
            d = sum(j.times[0] for j in inst.jobs)  # >= OPT: always accepted
            cls = classify_jobs(inst, d)
            items = build_items(inst, cls.big, d)
            assert not isinstance(items, Reject)
            sol = solve_mckp(items, inst.m)
            assert not isinstance(sol, Infeasible)
            budget = inst.m * d - cls.ws
            assert sol.total_cost <= budget
            ss = build_three_shelf(inst, sol, d, LAMBDA_Q0)
            w_built = ss.total_work()
            assert w_built <= sol.total_cost <= budget
            apply_transformations(ss)
            assert ss.total_work() <= w_built


class TestTransformations:
    def test_wide_short_job_drops_to_shelf0(self):
        inst = instance(3, job(1, rat("1.1"), rat("0.6"), rat("0.5")))
        ss = ShelfSchedule(inst, D1, LAMBDA_Q0)
        ss.s1.append(ShelfColumn(2, [ColumnPart(1, rat("0.6"))]))
        apply_transformations(ss)
        assert not ss.s1
        (col,) = ss.s0
        assert col.width == 1 and col.height == rat("1.1")

    def test_two_shorts_stack_and_free_a_machine(self):
        inst = instance(
            2, job(1, rat("0.6"), rat("0.35")), job(2, rat("0.55"), rat("0.3"))
        )
        ss = ShelfSchedule(inst, D1, LAMBDA_Q0)
        ss.s1.append(ShelfColumn(1, [ColumnPart(1, rat("0.6"))]))
        ss.s1.append(ShelfColumn(1, [ColumnPart(2, rat("0.55"))]))
        assert ss.q == 0
        apply_transformations(ss)
        assert ss.q == 1
        (col,) = ss.s0
        assert [p.job_id for p in col.parts] == [1, 2]  # taller at the bottom

    def test_shelf2_job_fitting_idle_machines_moves_out(self):
        inst = instance(
            4,
            job(1, rat("1.3"), rat("0.9"), rat("0.8"), rat("0.7")),
            job(2, rat("1.5"), rat("1.3"), rat("1.2"), rat("1.1")),
        )
        ss = ShelfSchedule(inst, D1, LAMBDA_Q0)
        ss.s1.append(ShelfColumn(1, [ColumnPart(1, rat("1.3"))]))  # placed tall: shelf-0-ish
        ss.s1[0] = ShelfColumn(1, [ColumnPart(1, rat("0.8"))])     # keep shelf 1 legal
        inst2 = inst
        ss.s2.append(S2Job(2, 3, rat("1.2")))
        # q = 3 and t(2, 3) = 1.2 <= (10/7)d, so the job leaves shelf 2 for
        # gamma(2, 10/7) = 2 machines at height 1.3 > d: shelf 0.
        apply_transformations(ss)
        assert not ss.s2
        assert any(c.width == 2 and c.height == rat("1.3") for c in ss.s0)

    def test_leftover_short_is_at_most_one(self):
        inst = instance(1, job(1, rat("0.6")))
        ss = ShelfSchedule(inst, D1, LAMBDA_Q0)
        ss.s1.append(ShelfColumn(1, [ColumnPart(1, rat("0.6"))]))
        apply_transformations(ss)  # single short job: nothing to stack, no error
        assert len(ss.s1) == 1


def _compression_fixture():
    # 7 machines, d = 1, lam = 10/7.  Seven one-machine shelf-1 jobs of
    # height 0.73 and four two-machine shelf-2 jobs of height 0.22 give
    # m2 = 8 > 7 with q = 0 and total work 6.87 <= 7.
    jobs = [const_work_job(i, rat("0.73"), 7) for i in range(1, 8)]
    jobs += [const_work_job(i, rat("0.44"), 7) for i in range(8, 12)]
    inst = instance(7, *jobs)
    ss = ShelfSchedule(inst, D1, LAMBDA_Q0)
    for i in range(1, 8):
        ss.s1.append(ShelfColumn(1, [ColumnPart(i, rat("0.73"))]))
    for i in range(8, 12):
        ss.s2.append(S2Job(i, 2, rat("0.22")))
    return inst, ss


class TestRepairSmallQ:
    def test_no_shelf2_is_descending_shelf1(self):
        inst = instance(2, job(1, rat("0.9"), rat("0.5")), job(2, rat("0.8"), rat("0.45")))
        ss = ShelfSchedule(inst, D1, LAMBDA_Q0)
        ss.s1.append(ShelfColumn(1, [ColumnPart(1, rat("0.9"))]))
        ss.s1.append(ShelfColumn(1, [ColumnPart(2, rat("0.8"))]))
        sched = repair_s2_small_q(ss)
        assert sched.makespan == rat("0.9")
        by_job = {p.job_id: p for p in sched.placements}
        assert by_job[1].first_machine == 0 and by_job[2].first_machine == 1

    def test_one_compression_step_then_placement(self):
        inst, ss = _compression_fixture()
        sched = repair_s2_small_q(ss)
        widths = sorted(j.width for j in ss.s2)
        assert widths == [1, 2, 2, 2]          # exactly one job lost one machine
        assert ss.s2[0].job_id == 8            # smallest height, lowest id compressed
        assert ss.s2[0].height == rat("0.44")  # height recomputed from its times
        by_job = {p.job_id: p for p in sched.placements}
        assert by_job[8].first_machine == 6    # ascending: tallest shelf-2 job rightmost
        assert by_job[8].end == LAMBDA_Q0      # hangs at lam*d
        report = validate_schedule(inst, sched)
        assert report.feasible and report.contiguous
        assert sched.makespan <= LAMBDA_Q0

    def test_rejects_wrong_regime(self):
        inst = instance(6, job(1, *([rat("0.9")] + [rat("0.9")] * 5)))
        ss = ShelfSchedule(inst, D1, LAMBDA_Q0)
        ss.s1.append(ShelfColumn(1, [ColumnPart(1, rat("0.9"))]))
        assert ss.q == 5  # way above m'/6
        with pytest.raises(ShelfInvariantError):
            repair_s2_small_q(ss)


def _large_q_fixture(j0_work):
    jobs = [
        const_work_job(1, rat("1.2"), 5),
        const_work_job(2, rat("0.9"), 5),
        const_work_job(3, rat("0.8"), 5),
        const_work_job(4, j0_work, 5),
    ]
    inst = instance(5, *jobs)
    ss = ShelfSchedule(inst, D1, LAMBDA_STAR_UPPER)
    ss.s0.append(ShelfColumn(1, [ColumnPart(1, rat("1.2"))]))
    ss.s1.append(ShelfColumn(1, [ColumnPart(2, rat("0.9"))]))
    ss.s1.append(ShelfColumn(1, [ColumnPart(3, rat("0.8"))]))
    ss.s2.append(S2Job(4, 5, rat(j0_work) / 5))
    return inst, ss


class TestRepairLargeQ:
    def test_no_shelf2_is_descending_shelf1(self):
        inst = instance(4, job(1, rat("0.9"), *[rat("0.5")] * 3))
        ss = ShelfSchedule(inst, D1, LAMBDA_STAR_UPPER)
        ss.s1.append(ShelfColumn(1, [ColumnPart(1, rat("0.9"))]))
        assert ss.q == 3
        sched = repair_s2_large_q(ss)
        assert sched.makespan == rat("0.9")

    def test_widest_suffix_wins(self):
        # The first i whose boundary load leaves room is i = 0: work monotony
        # makes t(j0, 4) <= t(j0, 2) = 0.5 <= lam - 0.9, so the single
        # shelf-2 job ends up on all four shared machines.
        inst, ss = _large_q_fixture(1)
        assert ss.q == 2
        sched = repair_s2_large_q(ss)
        by_job = {p.job_id: p for p in sched.placements}
        p = by_job[4]
        assert (p.first_machine, p.width) == (1, 4)
        assert p.start == LAMBDA_STAR_UPPER - Fraction(1, 4)
        assert p.end == LAMBDA_STAR_UPPER
        report = validate_schedule(inst, sched)
        assert report.feasible and report.contiguous

    def test_work_violating_input_raises(self):
        # Shelf-1 loads of d plus a 2.25-work shelf-2 job overshoot the work
        # budget the repair relies on; no suffix admits the job: loud failure.
        jobs = [
            const_work_job(1, rat("1.2"), 5),
            const_work_job(2, rat(2), 5),
            const_work_job(3, rat(2), 5),
            const_work_job(4, rat("2.25"), 5),
        ]
        inst2 = instance(5, *jobs)
        ss2 = ShelfSchedule(inst2, D1, LAMBDA_STAR_UPPER)
        ss2.s0.append(ShelfColumn(1, [ColumnPart(1, rat("1.2"))]))
        ss2.s1.append(ShelfColumn(1, [ColumnPart(2, rat(1))]))
        ss2.s1.append(ShelfColumn(1, [ColumnPart(3, rat(1))]))
        ss2.s2.append(S2Job(4, 5, rat("0.45")))
        with pytest.raises(ShelfInvariantError):
            repair_s2_large_q(ss2)

    def test_two_shelf2_jobs_rejected(self):
        inst = instance(
            5,
            const_work_job(1, rat(2), 5),
            const_work_job(2, rat(2), 5),
            const_work_job(3, rat("0.9"), 5),
        )
        ss = ShelfSchedule(inst, D1, LAMBDA_STAR_UPPER)
        ss.s1.append(ShelfColumn(1, [ColumnPart(3, rat("0.9"))]))
        ss.s2.append(S2Job(1, 5, rat("0.4")))
        ss.s2.append(S2Job(2, 5, rat("0.4")))
        with pytest.raises(ShelfInvariantError):
            repair_s2_large_q(ss)


def _split_large_q_fixture(j0_work):
    # Shelf 0 holds the split stack (two-machine job 1 with job 2 on top of
    # one lane); shelf 1 holds the bare lane plus a tall one-machine job;
    # six idle machines put the repair in the many-idle regime, and the
    # shelf-2 job is wider than the shared region so the suffix search runs.
    jobs = [
        const_work_job(1, rat("1.6"), 9),   # t(1,2) = 0.8: the split job
        const_work_job(2, rat("0.5"), 9),   # rides on top of one lane
        const_work_job(3, rat("0.95"), 9),  # tall shelf-1 column
        const_work_job(4, j0_work, 9),      # the single shelf-2 job
    ]
    inst = instance(9, *jobs)
    ss = ShelfSchedule(inst, D1, LAMBDA_STAR_UPPER, split_job=1)
    ss.s0.append(
        ShelfColumn(
            1,
            [ColumnPart(1, rat("0.8")), ColumnPart(2, rat("0.5"))],
            split_of=1,
            lane=0,
        )
    )
    ss.s1.append(ShelfColumn(1, [ColumnPart(1, rat("0.8"))], split_of=1, lane=1))
    ss.s1.append(ShelfColumn(1, [ColumnPart(3, rat("0.95"))]))
    ss.s2.append(S2Job(4, 9, rat(j0_work) / 9))
    return inst, ss


class TestSplitInLargeQRepair:
    def test_split_lane_under_the_wide_job(self):
        # Work 4: t(4,8) = 0.5 fits over the tallest column, so the widest
        # suffix wins and the bare lane sits under the shelf-2 job, still
        # adjacent to its shelf-0 twin.
        inst, ss = _split_large_q_fixture(4)
        sched = repair_s2_large_q(ss)
        by_job = {p.job_id: p for p in sched.placements}
        assert (by_job[4].first_machine, by_job[4].width) == (1, 8)
        assert by_job[1].width == 2 and by_job[1].first_machine == 0
        assert by_job[2].first_machine in by_job[1].machines
        report = validate_schedule(inst, sched)
        assert report.feasible and report.contiguous

    def test_split_lane_left_of_the_wide_job(self):
        # The suffix boundary lands between the bare lane (0.8) and the two
        # 0.75 columns: t(j0,10) = 0.67 does not clear 1.45932 - 0.8 but
        # t(j0,9) = 0.7 clears 1.45932 - 0.75, so the lane stays left of the
        # wide job and is pulled to the shelf-0 edge.
        j0_times = [rat(x) for x in
                    ("6.3", "3.15", "2.1", "1.575", "1.26", "1.05", "0.9",
                     "0.7875", "0.7", "0.67", "0.62", "0.58", "0.54")]
        jobs = [
            const_work_job(1, rat("1.6"), 13),
            const_work_job(2, rat("0.5"), 13),
            const_work_job(3, rat("0.95"), 13),
            const_work_job(4, rat("0.95"), 13),
            const_work_job(5, rat("0.75"), 13),
            const_work_job(6, rat("0.75"), 13),
            job(7, *j0_times),
        ]
        inst = instance(13, *jobs)
        ss = ShelfSchedule(inst, D1, LAMBDA_STAR_UPPER, split_job=1)
        ss.s0.append(
            ShelfColumn(
                1,
                [ColumnPart(1, rat("0.8")), ColumnPart(2, rat("0.5"))],
                split_of=1,
                lane=0,
            )
        )
        ss.s1.append(ShelfColumn(1, [ColumnPart(1, rat("0.8"))], split_of=1, lane=1))
        for jid, h in ((3, "0.95"), (4, "0.95"), (5, "0.75"), (6, "0.75")):
            ss.s1.append(ShelfColumn(1, [ColumnPart(jid, rat(h))]))
        ss.s2.append(S2Job(7, 13, rat("0.54")))
        assert ss.q == 7 and 6 * ss.q > 13 - ss.m0
        sched = repair_s2_large_q(ss)
        by_job = {p.job_id: p for p in sched.placements}
        assert (by_job[7].first_machine, by_job[7].width) == (4, 9)
        assert by_job[7].duration == rat("0.7")
        assert by_job[1].width == 2 and by_job[1].first_machine == 0
        assert by_job[2].first_machine in by_job[1].machines
        report = validate_schedule(inst, sched)
        assert report.feasible and report.contiguous


class TestSplitContiguity:
    def test_split_job_spans_adjacent_machines(self):
        inst = instance(
            4, const_work_job(1, rat("1.5"), 4), const_work_job(2, rat("0.5"), 4)
        )
        ss = build_three_shelf(inst, {1: 2, 2: 2}, D1, LAMBDA_Q0)
        apply_transformations(ss)
        sched = repair_s2_small_q(ss) if 6 * ss.q <= 4 - ss.m0 else repair_s2_large_q(ss)
        by_job = {p.job_id: p for p in sched.placements}
        assert by_job[1].width == 2 and by_job[1].start == 0
        assert by_job[2].width == 1
        # the partner starts exactly when the two-machine job ends, on one of
        # its machines
        assert by_job[2].start == by_job[1].duration
        assert by_job[2].first_machine in by_job[1].machines
        report = validate_schedule(inst, sched)
        assert report.feasible and report.contiguous


class TestForcedPartitionFuzz:
    def test_class2_heavy_partitions_repair_cleanly(self):
        # Push every job that can meet the 4/7 deadline into class 2 so the
        # pairing, leftover, and split code runs constantly; repair whenever
        # the work budget the guarantees assume actually holds.
        rng = random.Random(97)
        splits = repaired = 0
        for trial in range(400):
            inst = random_instance(rng, rng.randint(2, 14), rng.randint(2, 12))
            cls_d = sorted(j.times[0] for j in inst.jobs)[len(inst.jobs) // 2]
            d = cls_d * Fraction(7, 3) + Fraction(rng.randint(0, 100), 100)
            cls = classify_jobs(inst, d)
            if not cls.big:
                continue
            assignment = {}
            for job_id in sorted(cls.big):
                j = inst.job(job_id)
                from moldsched import gamma

                if gamma(j, Fraction(4, 7) * d, inst.m) is not None:
                    assignment[job_id] = 2
                elif gamma(j, d, inst.m) is not None:
                    assignment[job_id] = 1
                else:
                    assignment[job_id] = None
            if any(v is None for v in assignment.values()):
                continue
            ss = build_three_shelf(inst, assignment, d, LAMBDA_Q0)
            if ss.split_job is not None:
                splits += 1
            apply_transformations(ss)
            if ss.total_work() > inst.m * d - cls.ws:
                continue  # forced partition broke the budget: repairs not owed
            m_eff = inst.m - ss.m0
            if 6 * ss.q <= m_eff:
                sched = repair_s2_small_q(ss)
            else:
                ss = build_three_shelf(inst, assignment, d, LAMBDA_STAR_UPPER)
                apply_transformations(ss)
                m_eff = inst.m - ss.m0
                if ss.total_work() > inst.m * d - cls.ws:
                    continue
                if 6 * ss.q <= m_eff:
                    sched = repair_s2_small_q(ss)
                else:
                    sched = repair_s2_large_q(ss)
            repaired += 1
            placed = {p.job_id for p in sched.placements}
            assert placed == set(assignment), trial
            report = validate_schedule(
                instance(inst.m, *[inst.job(j) for j in sorted(placed)]), sched
            )
            assert report.feasible and report.contiguous, (trial, report.violations)
        assert repaired >= 100
        assert splits >= 20  # the split machinery really ran


class TestAddSmallJobs:
    def test_no_smalls_is_identity(self):
        sched = make_schedule([])
        inst = instance(2, job(1, 3, rat("1.6")))
        assert add_small_jobs(sched, inst, [], LAMBDA_Q0, rat(5)) is sched

    def test_greedy_on_empty_schedule(self):
        inst = instance(
            2, job(1, 3, rat("1.6")), job(2, 3, rat("1.6")), job(3, 3, rat("1.6"))
        )
        sched = add_small_jobs(make_schedule([]), inst, [1, 2, 3], LAMBDA_Q0, rat("4.9"))
        by_job = {p.job_id: p for p in sched.placements}
        assert by_job[1].first_machine == 0       # tie -> lowest index
        assert by_job[2].first_machine == 1
        assert by_job[3].first_machine == 0       # least loaded after the tie
        assert by_job[3].start == 3
        assert sched.makespan == 6

    def test_overflow_raises(self):
        inst = instance(2, job(1, 5, 3), job(2, 5, 3), job(3, 5, 3))
        with pytest.raises(ShelfInvariantError):
            add_small_jobs(make_schedule([]), inst, [1, 2, 3], LAMBDA_Q0, rat("4.9"))
