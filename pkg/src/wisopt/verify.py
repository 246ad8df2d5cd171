"""Ground truth by enumeration, r-best certification, and the two adversaries.

Everything here is allowed to read objective values directly; solvers are not.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .instances import (AdversarialFamily, ComparisonOracle, ExplicitSystem, GeneratorSystem,
                        GroundPoint, Instance, MembershipOracle, ObjectiveTable, OracleStats,
                        WeightVector, make_lower_bound_family, make_membership_family)
from .solver import SolveReport

MAX_EXPLICIT_POINTS = 1 << 20
MAX_ADVERSARY_M = 4


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class BruteForceResult:
    optimum: float
    argmin_weight: int
    image: tuple[int, ...]

    def f_values(self, f: ObjectiveTable) -> list[float]:
        return sorted({f.value(v) for v in self.image})


def _image(instance: Instance) -> frozenset[int]:
    system = instance.system
    if isinstance(system, ExplicitSystem) and len(system) > MAX_EXPLICIT_POINTS:
        raise InstanceTooLarge(f"instance too large: {len(system)} explicit points")
    if isinstance(system, GeneratorSystem) and len(system.generators) * system.n > 1 << 24:
        raise InstanceTooLarge(
            f"instance too large: {len(system.generators)} generators over n={system.n}")
    return system.image(instance.weights)


def brute_force_solve(instance: Instance) -> BruteForceResult:
    img = sorted(_image(instance))
    f = instance.objective
    best = min(img, key=lambda v: (f.value(v), v))
    return BruteForceResult(f.value(best), best, tuple(img))


def distinct_rank(f: ObjectiveTable, image: Sequence[int], value: int) -> tuple[int, list[int]]:
    """Number of distinct f-values over ``image`` strictly below f(value)."""
    target = f.value(value)
    better = [v for v in image if f.value(v) < target]
    return len({f.value(v) for v in better}), sorted(better)


@dataclass(frozen=True)
class RankCertificate:
    instance_id: str
    value: float
    weight: int
    better_weights: tuple[int, ...]
    rank: int
    guarantee: int
    feasible: bool

    @property
    def ok(self) -> bool:
        return self.feasible and self.rank <= self.guarantee

    def to_dict(self) -> dict:
        return {"instance": self.instance_id, "value": self.value, "weight": self.weight,
                "better_weights": list(self.better_weights), "rank": self.rank,
                "guarantee": self.guarantee, "feasible": self.feasible, "ok": self.ok}


def certify_rank(report: SolveReport, instance: Instance) -> RankCertificate:
    img = sorted(_image(instance))
    f = instance.objective
    rank, better = distinct_rank(f, img, report.weight)
    return RankCertificate(instance.name, f.value(report.weight), report.weight, tuple(better),
                           rank, report.guarantee, instance.system.contains(report.solution))


# -- lower-bound adversary (linear-optimization oracle) -------------------------------

def _family(m: int, kind: str) -> AdversarialFamily:
    if m > MAX_ADVERSARY_M:
        raise ValueError(f"m={m} exceeds enumeration cap m <= {MAX_ADVERSARY_M}")
    return make_lower_bound_family(m) if kind == "lower_bound" else make_membership_family(m)


def _witness_matrix(family: AdversarialFamily) -> np.ndarray:
    return np.array([y.bits for y in family.witnesses], dtype=np.int64)


def _system_max(system: GeneratorSystem, c: Sequence[int]) -> int:
    return system.linear_max(c).dot(c)


def compute_Y(c: Sequence[int], m: int, family: Optional[AdversarialFamily] = None) -> frozenset[int]:
    """Indices of witnesses y with c.y > max{c.x : x in S}."""
    family = family or _family(m, "lower_bound")
    if len(c) != family.system.n:
        raise ValueError(f"query length {len(c)} does not match n={family.system.n}")
    ys = _witness_matrix(family) @ np.asarray(c, dtype=np.int64)
    top = _system_max(family.system, c)
    out = frozenset(int(k) for k in np.flatnonzero(ys > top))
    assert len(out) <= math.comb(2 * m, m - 1), f"|Y(c)|={len(out)} exceeds bound"
    return out


@dataclass
class AdversaryTranscript:
    family: str
    m: int
    queries: list[tuple] = field(default_factory=list)
    surviving_y: int = 0
    witnesses: int = 0
    threshold: int = 0
    fooled: bool = False
    answer: Optional[GroundPoint] = None
    union_bound: Optional[int] = None
    witness_queries: Optional[int] = None

    @property
    def query_count(self) -> int:
        return len(self.queries)

    def to_dict(self) -> dict:
        return {"family": self.family, "m": self.m, "queries": self.query_count,
                "threshold": self.threshold, "witnesses": self.witnesses,
                "surviving_y": self.surviving_y, "fooled": self.fooled,
                "answer": None if self.answer is None else str(self.answer),
                "union_bound": self.union_bound, "witness_queries": self.witness_queries}


class AdversaryLinearOracle:
    """Answers every query from S alone with its lexicographically smallest maximizer."""

    def __init__(self, family: AdversarialFamily, stats: Optional[OracleStats] = None):
        self.family = family
        self.n = family.system.n
        self.stats = stats if stats is not None else OracleStats()
        self.log: list[tuple[tuple[int, ...], GroundPoint]] = []

    def __call__(self, v: Sequence[int]) -> GroundPoint:
        self.stats.bump("linear_queries")
        x = self.family.system.linear_max(v)
        self.log.append((tuple(int(c) for c in v), x))
        return x


class AdversaryMembershipOracle(MembershipOracle):
    def __init__(self, family: AdversarialFamily, stats: Optional[OracleStats] = None):
        super().__init__(family.system, stats)
        self.log: list[tuple[GroundPoint, bool]] = []

    def __call__(self, x: GroundPoint) -> bool:
        ans = super().__call__(x)
        self.log.append((x, ans))
        return ans


Answer = Union[GroundPoint, SolveReport, None]
LinearAlgorithm = Callable[[AdversaryLinearOracle, WeightVector, ComparisonOracle], Answer]
MembershipAlgorithm = Callable[[AdversaryMembershipOracle, WeightVector, ComparisonOracle], Answer]


def _answer_point(answer: Answer) -> Optional[GroundPoint]:
    if isinstance(answer, SolveReport):
        return answer.solution
    return answer


def _wrong_somewhere(family: AdversarialFamily, answer: Optional[GroundPoint],
                     surviving: Sequence[int]) -> bool:
    """True iff the answer fails to be optimal in S or in some surviving S_y.

    The spike objective makes the witness value the unique minimizer, so the
    optimum in S_y is exactly y's value and S never attains it.
    """
    if answer is None:
        return True
    f = family.objective()
    wx = family.weights.value(answer)
    correct_in_s = family.system.contains(answer) and \
        f.value(wx) == min(f.value(v) for v in family.system.image(family.weights))
    if not correct_in_s:
        return True
    # answer is optimal in S, hence its value differs from the witness value
    return bool(surviving)


def adversary_run(algorithm: LinearAlgorithm, m: int) -> AdversaryTranscript:
    family = _family(m, "lower_bound")
    stats = OracleStats()
    oracle = AdversaryLinearOracle(family, stats)
    cmp = ComparisonOracle(family.objective(), stats)
    answer = _answer_point(algorithm(oracle, family.weights, cmp))

    killed: set[int] = set()
    total = 0
    for c, _ in oracle.log:
        y = compute_Y(c, m, family)
        total += len(y)
        killed |= y
    surviving = [k for k in range(family.size) if k not in killed]
    return AdversaryTranscript(
        "lower_bound", m, list(oracle.log), len(surviving), family.size,
        math.comb(2 * m, m + 1), bool(surviving) and _wrong_somewhere(family, answer, surviving),
        answer, union_bound=total)


def adversary_membership_run(algorithm: MembershipAlgorithm, m: int) -> AdversaryTranscript:
    family = _family(m, "membership")
    stats = OracleStats()
    oracle = AdversaryMembershipOracle(family, stats)
    cmp = ComparisonOracle(family.objective(), stats)
    answer = _answer_point(algorithm(oracle, family.weights, cmp))

    asked = {x for x, _ in oracle.log}
    surviving = [k for k, y in enumerate(family.witnesses) if y not in asked]
    weight_m = sum(1 for x in asked if sum(x.bits) == m)
    transcript = AdversaryTranscript(
        "membership", m, list(oracle.log), len(surviving), family.size, math.comb(2 * m, m),
        bool(surviving) and _wrong_somewhere(family, answer, surviving), answer)
    transcript.witness_queries = weight_m
    return transcript


# -- reference algorithms for the adversaries ---------------------------------------

def exhaustive_membership(oracle, w: WeightVector, cmp: ComparisonOracle) -> GroundPoint:
    """Query every point of support size n/2; return the f-best member, else 0."""
    n = oracle.n
    best = GroundPoint.zero(n)
    for c in itertools.combinations(range(n), n // 2):
        x = GroundPoint.indicator(n, c)
        if oracle(x) and cmp.compare(w.value(x), w.value(best)) < 0:
            best = x
    return best


def make_query_budget_algorithm(queries: int, seed: int = 0) -> LinearAlgorithm:
    """A deterministic algorithm issuing ``queries`` pseudo-random linear queries."""

    def run(oracle, w: WeightVector, cmp: ComparisonOracle) -> GroundPoint:
        rng = np.random.default_rng(seed)
        best = None
        for _ in range(queries):
            c = rng.integers(-5, 6, size=oracle.n).tolist()
            x = oracle(c)
            if best is None or cmp.compare(w.value(x), w.value(best)) < 0:
                best = x
        return best if best is not None else GroundPoint.zero(oracle.n)

    return run


def make_membership_budget_algorithm(queries: int) -> MembershipAlgorithm:
    """Queries the first ``queries`` weight-m points in lexicographic order."""

    def run(oracle, w: WeightVector, cmp: ComparisonOracle) -> GroundPoint:
        n = oracle.n
        m = n // 2
        best = GroundPoint.zero(n)
        for c in itertools.islice(itertools.combinations(range(n), m), queries):
            x = GroundPoint.indicator(n, c)
            if oracle(x) and cmp.compare(w.value(x), w.value(best)) < 0:
                best = x
        return best

    return run
