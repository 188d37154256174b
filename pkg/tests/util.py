"""Shared fixture builders for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from moldsched import Instance, Job, rat


def job(job_id, *times) -> Job:
    return Job(job_id, tuple(rat(t) for t in times))


def const_work_job(job_id: int, w, m: int) -> Job:
    """t(j,k) = w/k: the extreme of both monotonies (work constant)."""
    w = rat(w)
    return Job(job_id, tuple(w / k for k in range(1, m + 1)))


def instance(m, *jobs) -> Instance:
    return Instance(m, tuple(jobs))


def random_monotone_job(rng: random.Random, job_id: int, m: int, hi: int = 400) -> Job:
    """Monotone time vector over denominator 100, independent of moldsched.gen."""
    v = rng.randint(1, hi)
    nums = [v]
    for k in range(2, m + 1):
        lo = -((-(k - 1) * v) // k)
        v = rng.randint(lo, v)
        nums.append(v)
    return Job(job_id, tuple(Fraction(x, 100) for x in nums))


def random_instance(rng: random.Random, n: int, m: int) -> Instance:
    return Instance(m, tuple(random_monotone_job(rng, i + 1, m) for i in range(n)))
