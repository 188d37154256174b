import random
from fractions import Fraction

import pytest

from moldsched import (
    Infeasible,
    MckpItem,
    MckpOption,
    Reject,
    brute_mckp,
    build_items,
    classify_jobs,
    rat,
    solve_mckp,
)
from util import const_work_job, instance, job, random_instance


def random_items(rng: random.Random, n: int, m: int) -> list[MckpItem]:
    """Unstructured option grids: random costs/sizes, random unavailability."""
    items = []
    for i in range(n):
        opts = []
        for _ in range(3):
            if rng.random() < 0.15:
                opts.append(MckpOption(None, 0))
            else:
                cost = Fraction(rng.randint(0, 400), rng.randint(1, 40))
                size = rng.randint(0, 2 * m + 2)
                opts.append(MckpOption(cost, size))
        items.append(MckpItem(i + 1, tuple(opts)))
    return items


class TestBuildItems:
    def test_hand_example(self):
        inst = instance(3, job(1, 1, rat("0.5"), rat("0.34")))
        items = build_items(inst, {1}, rat(1))
        assert not isinstance(items, Reject)
        (item,) = items
        assert item.options[0] == MckpOption(rat(1), 2)
        assert item.options[1] == MckpOption(rat(1), 2)
        assert item.options[2] == MckpOption(rat("1.02"), 0)

    def test_reject_when_job_cannot_meet_d(self):
        inst = instance(2, job(1, 10, 6))
        out = build_items(inst, {1}, rat(5))
        assert isinstance(out, Reject)
        assert out.job_id == 1

    def test_adversarial_top_job_has_no_class3_at_d1(self):
        # At d = 1 the 6.01-work job cannot finish within (3/7)d even on all
        # 13 machines: 6.01/13 > 3/7.
        inst = instance(13, const_work_job(1, rat("6.01"), 13))
        assert rat("6.01") / 13 > Fraction(3, 7)
        items = build_items(inst, {1}, rat(1))
        assert not isinstance(items, Reject)
        (item,) = items
        assert not item.options[2].available
        assert item.options[0] == MckpOption(rat("6.01"), 14)  # gamma(1) = 7
        assert item.options[1] == MckpOption(rat("6.01"), 11)

    def test_unavailable_options_in_middle(self):
        # Meets d on all machines but never (4/7)d or (3/7)d.
        inst = instance(2, job(1, 10, 6))
        items = build_items(inst, {1}, rat(6))
        (item,) = items
        assert item.options[0].available
        assert not item.options[1].available
        assert not item.options[2].available


class TestSolveMckp:
    def test_empty(self):
        sol = solve_mckp([], 5)
        assert sol.assignment == {}
        assert sol.total_cost == 0
        assert sol.total_size2 == 0

    def test_single_item_over_capacity(self):
        items = [MckpItem(1, (MckpOption(rat(1), 2 * 3 + 2), MckpOption(None, 0), MckpOption(None, 0)))]
        assert isinstance(solve_mckp(items, 3), Infeasible)

    def test_all_class3_available_feasible(self):
        rng = random.Random(5)
        items = random_items(rng, 8, 4)
        items = [
            MckpItem(it.job_id, (it.options[0], it.options[1], MckpOption(rat(1), 0)))
            for it in items
        ]
        sol = solve_mckp(items, 4)
        assert not isinstance(sol, Infeasible)
        ref = brute_mckp(items, 4)
        assert sol.total_cost == ref.total_cost

    def test_paths_agree(self):
        rng = random.Random(17)
        for _ in range(60):
            items = random_items(rng, rng.randint(1, 9), rng.randint(1, 6))
            m = rng.randint(1, 6)
            a = solve_mckp(items, m, _impl="numpy")
            b = solve_mckp(items, m, _impl="python")
            if isinstance(a, Infeasible):
                assert isinstance(b, Infeasible)
            else:
                assert a == b

    def test_monotone_in_d(self):
        rng = random.Random(23)
        for _ in range(40):
            inst = random_instance(rng, rng.randint(1, 10), rng.randint(1, 8))
            lo = min(j.times[-1] for j in inst.jobs)
            d1 = lo + Fraction(rng.randint(0, 200), 100)
            d2 = d1 + Fraction(rng.randint(1, 200), 100)
            costs = []
            for d in (d1, d2):
                big = classify_jobs(inst, d).big
                items = build_items(inst, big, d)
                if isinstance(items, Reject):
                    costs.append(None)
                    continue
                sol = solve_mckp(items, inst.m)
                costs.append(None if isinstance(sol, Infeasible) else sol.total_cost)
            if costs[0] is not None and costs[1] is not None:
                assert costs[0] >= costs[1]


class TestBruteMckp:
    def test_empty(self):
        sol = brute_mckp([], 3)
        assert sol.total_cost == 0 and sol.assignment == {}

    def test_single_item_picks_cheapest_fitting(self):
        items = [MckpItem(7, (MckpOption(rat(5), 1), MckpOption(rat(3), 2), MckpOption(rat(9), 0)))]
        sol = brute_mckp(items, 2)
        assert sol.assignment == {7: 2}

    def test_size_cap(self):
        rng = random.Random(3)
        with pytest.raises(ValueError):
            brute_mckp(random_items(rng, 15, 2), 2)

    def test_oracle_equality_bulk(self):
        rng = random.Random(31)
        for trial in range(120):
            n = rng.randint(0, 10)
            m = rng.randint(1, 10)
            items = random_items(rng, n, m)
            got = solve_mckp(items, m)
            ref = brute_mckp(items, m)
            if isinstance(ref, Infeasible):
                assert isinstance(got, Infeasible), trial
            else:
                assert not isinstance(got, Infeasible), trial
                assert got.total_cost == ref.total_cost, trial
                assert got.total_size2 == ref.total_size2, trial
                assert got.assignment == ref.assignment, trial

    def test_oracle_equality_on_instances(self):
        rng = random.Random(37)
        for _ in range(40):
            inst = random_instance(rng, rng.randint(1, 9), rng.randint(1, 8))
            d = max(j.times[-1] for j in inst.jobs) + Fraction(rng.randint(0, 300), 100)
            big = classify_jobs(inst, d).big
            items = build_items(inst, big, d)
            assert not isinstance(items, Reject)
            got = solve_mckp(items, inst.m)
            ref = brute_mckp(items, inst.m)
            assert type(got) is type(ref)
            if not isinstance(got, Infeasible):
                assert got == ref
