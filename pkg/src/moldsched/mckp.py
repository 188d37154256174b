"""Three-class minimization knapsack over the big jobs of a makespan guess.

For a guess d, each big job offers up to three (cost, size) options:

  class 1: cost w(j, gamma(j, d)),        size 2*gamma(j, d) half-machines
  class 2: cost w(j, gamma(j, (4/7)d)),   size gamma(j, (4/7)d) half-machines
  class 3: cost w(j, gamma(j, (3/7)d)),   size 0

Sizes are counted in half-machines so the class-2 "half a machine per unit"
stays integral; the capacity is 2m.  The DP minimizes total cost subject to
total size <= 2m, which is exactly the partition feasibility question: the
guess is workable iff the minimum cost is at most m*d - W_S.

Costs are exact rationals.  Internally the DP rescales them to integers by
the lcm of their denominators; when the scaled totals fit comfortably in
int64 a vectorized numpy table is used, otherwise a pure-Python table with
unbounded ints.  Both paths apply identical tie-breaking (min cost, then min
total size, then lowest class index per job in input order) so results are
bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .model import Instance, gamma, work

_INT64_SAFE_TOTAL = 1 << 59
_INF = 1 << 61


@dataclass(frozen=True)
class MckpOption:
    cost: Optional[Fraction]  # None = unavailable (job cannot meet the class deadline)
    size2: int                # size in half-machines

    @property
    def available(self) -> bool:
        return self.cost is not None


@dataclass(frozen=True)
class MckpItem:
    job_id: int
    options: tuple[MckpOption, MckpOption, MckpOption]


@dataclass(frozen=True)
class MckpSolution:
    assignment: dict[int, int]  # job id -> class in {1, 2, 3}
    total_cost: Fraction
    total_size2: int


@dataclass(frozen=True)
class Reject:
    """The guess d is certified too small (some job cannot finish within d)."""

    d: Fraction
    reason: str
    job_id: Optional[int] = None


@dataclass(frozen=True)
class Infeasible:
    """No class assignment fits the half-machine capacity."""

    reason: str = "capacity"


def build_items(
    inst: Instance, big: Sequence[int] | frozenset[int], d: Fraction
) -> Union[list[MckpItem], Reject]:
    """Construct the per-job options, or Reject when some gamma(j, d) is infinite."""
    items: list[MckpItem] = []
    h2 = Fraction(4, 7) * d
    h3 = Fraction(3, 7) * d
    for job_id in sorted(big):
        job = inst.job(job_id)
        g1 = gamma(job, d, inst.m)
        if g1 is None:
            return Reject(d, "job-exceeds-guess", job_id)
        g2 = gamma(job, h2, inst.m)
        g3 = gamma(job, h3, inst.m)
        opts = (
            MckpOption(work(job, g1), 2 * g1),
            MckpOption(work(job, g2), g2) if g2 is not None else MckpOption(None, 0),
            MckpOption(work(job, g3), 0) if g3 is not None else MckpOption(None, 0),
        )
        items.append(MckpItem(job_id, opts))
    return items


def _scaled_costs(items: Sequence[MckpItem]) -> tuple[int, list[list[Optional[int]]]]:
    """Rescale all option costs to integers by the lcm of their denominators."""
    scale = 1
    for item in items:
        for opt in item.options:
            if opt.cost is not None:
                scale = math.lcm(scale, opt.cost.denominator)
    scaled = [
        [
            opt.cost.numerator * (scale // opt.cost.denominator)
            if opt.cost is not None
            else None
            for opt in item.options
        ]
        for item in items
    ]
    return scale, scaled


def solve_mckp(
    items: Sequence[MckpItem], m: int, _impl: str = "auto"
) -> Union[MckpSolution, Infeasible]:
    """Minimize total cost subject to total size <= 2m; O(n*m) table.

    Among minimum-cost assignments the one with the smallest total size is
    returned; remaining ties resolve to the lowest class index per job,
    scanning jobs in input order.
    """
    cap = 2 * m
    if not items:
        return MckpSolution({}, Fraction(0), 0)
    scale, scaled = _scaled_costs(items)

    max_total = 0
    for row in scaled:
        avail = [c for c in row if c is not None]
        if not avail:
            return Infeasible("item-has-no-option")
        max_total += max(avail)

    use_numpy = _impl == "numpy" or (_impl == "auto" and max_total <= _INT64_SAFE_TOTAL)
    if _impl not in ("auto", "numpy", "python"):
        raise ValueError(f"unknown _impl {_impl!r}")
    if use_numpy:
        choice = _dp_numpy(items, scaled, cap)
    else:
        choice = _dp_python(items, scaled, cap)
    if choice is None:
        return Infeasible()

    assignment = {item.job_id: cls for item, cls in zip(items, choice)}
    total_cost = sum(
        (item.options[cls - 1].cost for item, cls in zip(items, choice)),
        Fraction(0),
    )
    total_size2 = sum(item.options[cls - 1].size2 for item, cls in zip(items, choice))
    return MckpSolution(assignment, total_cost, total_size2)


def _dp_numpy(
    items: Sequence[MckpItem], scaled: list[list[Optional[int]]], cap: int
) -> Optional[list[int]]:
    # Suffix DP: rows[j] holds, for every capacity c, the lexicographic minimum
    # of (cost, size) over assignments of items j..n-1 with total size <= c.
    # Suffix orientation lets the selection pass scan jobs in input order.
    n = len(items)
    rows_c: list[np.ndarray] = [np.zeros(cap + 1, dtype=np.int64)] * (n + 1)
    rows_s: list[np.ndarray] = [np.zeros(cap + 1, dtype=np.int64)] * (n + 1)
    for j in range(n - 1, -1, -1):
        prev_c, prev_s = rows_c[j + 1], rows_s[j + 1]
        best_c = np.full(cap + 1, _INF, dtype=np.int64)
        best_s = np.zeros(cap + 1, dtype=np.int64)
        for cls in (1, 2, 3):
            c = scaled[j][cls - 1]
            s = items[j].options[cls - 1].size2
            if c is None or s > cap:
                continue
            cand_c = np.full(cap + 1, _INF, dtype=np.int64)
            cand_s = np.zeros(cap + 1, dtype=np.int64)
            cand_c[s:] = prev_c[: cap + 1 - s] + c
            cand_s[s:] = prev_s[: cap + 1 - s] + s
            better = (cand_c < best_c) | ((cand_c == best_c) & (cand_s < best_s))
            best_c = np.where(better, cand_c, best_c)
            best_s = np.where(better, cand_s, best_s)
        rows_c[j], rows_s[j] = best_c, best_s
    if int(rows_c[0][cap]) >= _INF:
        return None
    return _select(items, scaled, cap, lambda j, c: (int(rows_c[j][c]), int(rows_s[j][c])))


def _dp_python(
    items: Sequence[MckpItem], scaled: list[list[Optional[int]]], cap: int
) -> Optional[list[int]]:
    n = len(items)
    inf = None  # sentinel: no assignment fits
    rows: list[list[Optional[tuple[int, int]]]] = [[(0, 0)] * (cap + 1)]
    for j in range(n - 1, -1, -1):
        prev = rows[-1]
        cur: list[Optional[tuple[int, int]]] = [inf] * (cap + 1)
        opts = [
            (scaled[j][cls - 1], items[j].options[cls - 1].size2)
            for cls in (1, 2, 3)
            if scaled[j][cls - 1] is not None
        ]
        for c in range(cap + 1):
            best: Optional[tuple[int, int]] = None
            for cost, s in opts:
                if s > c:
                    continue
                p = prev[c - s]
                if p is None:
                    continue
                cand = (p[0] + cost, p[1] + s)
                if best is None or cand < best:
                    best = cand
            cur[c] = best
        rows.append(cur)
    rows.reverse()  # rows[j] = suffix j..n-1
    if rows[0][cap] is None:
        return None
    return _select(items, scaled, cap, lambda j, c: rows[j][c])


def _select(items, scaled, cap, value_at) -> list[int]:
    """Walk the table forward, taking the lowest class that achieves the optimum."""
    n = len(items)
    choice: list[int] = []
    c = cap
    for j in range(n):
        target = value_at(j, c)
        picked = None
        for cls in (1, 2, 3):
            cost = scaled[j][cls - 1]
            s = items[j].options[cls - 1].size2
            if cost is None or s > c:
                continue
            nxt = value_at(j + 1, c - s)
            if nxt is None:
                continue
            if (nxt[0] + cost, nxt[1] + s) == target:
                picked = cls
                c -= s
                break
        if picked is None:
            raise AssertionError("DP table inconsistent during selection")
        choice.append(picked)
    return choice


def brute_mckp(
    items: Sequence[MckpItem], m: int
) -> Union[MckpSolution, Infeasible]:
    """Exhaustive oracle over all 3^n class vectors; n <= 14 enforced.

    Applies the same tie-breaking as solve_mckp: minimum (cost, size), first
    such vector in lexicographic class order.
    """
    if len(items) > 14:
        raise ValueError(f"brute_mckp is capped at 14 items, got {len(items)}")
    cap = 2 * m
    if not items:
        return MckpSolution({}, Fraction(0), 0)
    scale, scaled = _scaled_costs(items)
    n = len(items)
    # Admissible per-item lower bounds on the remaining cost let the DFS prune
    # without ever cutting an equal-cost branch (ties matter for size/lex).
    suffix_min = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        avail = [c for c in scaled[j] if c is not None]
        if not avail:
            return Infeasible("item-has-no-option")
        suffix_min[j] = suffix_min[j + 1] + min(avail)

    best: Optional[tuple[int, int]] = None
    best_choice: Optional[list[int]] = None
    choice = [0] * n

    def dfs(j: int, cost: int, size: int) -> None:
        nonlocal best, best_choice
        if size > cap:
            return
        if best is not None and cost + suffix_min[j] > best[0]:
            return
        if j == n:
            cand = (cost, size)
            if best is None or cand < best:
                best = cand
                best_choice = choice.copy()
            return
        for cls in (1, 2, 3):
            c = scaled[j][cls - 1]
            if c is None:
                continue
            choice[j] = cls
            dfs(j + 1, cost + c, size + items[j].options[cls - 1].size2)

    dfs(0, 0, 0)
    if best_choice is None:
        return Infeasible()
    assignment = {item.job_id: cls for item, cls in zip(items, best_choice)}
    total_cost = sum(
        (item.options[cls - 1].cost for item, cls in zip(items, best_choice)),
        Fraction(0),
    )
    total_size2 = sum(
        item.options[cls - 1].size2 for item, cls in zip(items, best_choice)
    )
    return MckpSolution(assignment, total_cost, total_size2)
