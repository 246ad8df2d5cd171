import itertools
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from wisopt.instances import GroundPoint

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def brute_combinations(entries, bound):
    """Values in [0, bound] reachable as nonnegative combinations, by nested enumeration."""
    reach = set()
    ranges = [range(bound // e + 1) for e in entries]
    for mu in itertools.product(*ranges):
        v = sum(m * e for m, e in zip(mu, entries))
        if v <= bound:
            reach.add(v)
    return reach


def brute_frobenius(entries):
    entries = sorted(set(entries))
    if not entries or 1 in entries:
        return 0, set()
    bound = entries[0] * entries[-1]
    reach = brute_combinations(entries, bound)
    gaps = set(range(bound + 1)) - reach
    return max(gaps, default=0), gaps


def brute_restricted(entries, lam):
    return {sum(m * e for m, e in zip(mu, entries))
            for mu in itertools.product(*(range(l + 1) for l in lam))}


def all_points(system):
    return sorted(system.points(), key=lambda x: x.bits)


def brute_face_max(points, w, lower, upper):
    face = [x for x in points
            if all(x.bits[j] == 0 for j in lower) and all(x.bits[j] == 1 for j in upper)]
    if not face:
        return None
    return max(w.value(x) for x in face)


def brute_block_max(points, w, lam, mu):
    vals = [w.value(x) for x in points
            if all(c == m if m < l else c >= m for c, m, l in zip(w.lam(x), mu, lam))]
    return max(vals) if vals else None


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def point(s):
    return GroundPoint.from_string(s)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
