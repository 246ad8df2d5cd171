"""Naive strategy, face and block maximization, the r(a)-best solver, and the
quasiconvex chain solver.

Solvers see the independence system only through a ``LinearOracle`` and the
objective only through a ``ComparisonOracle``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .instances import ComparisonOracle, GroundPoint, LinearOracle, OracleStats, WeightVector
from .monoid import PrimitiveTuple, as_tuple, default_lambda, multi_indices, r_bound


@dataclass(frozen=True)
class FaceSpec:
    lower: frozenset[int] = frozenset()
    upper: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "lower", frozenset(self.lower))
        object.__setattr__(self, "upper", frozenset(self.upper))
        if self.lower & self.upper:
            raise ValueError(f"face bounds overlap: {sorted(self.lower & self.upper)}")

    def contains(self, x: GroundPoint) -> bool:
        return (all(x.bits[j] == 0 for j in self.lower)
                and all(x.bits[j] == 1 for j in self.upper))


@dataclass(frozen=True)
class BlockSpec:
    lam: tuple[int, ...]
    mu: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))
        object.__setattr__(self, "mu", tuple(self.mu))
        if len(self.lam) != len(self.mu):
            raise ValueError("lam and mu lengths differ")
        if any(m > l or m < 0 for m, l in zip(self.mu, self.lam)):
            raise ValueError(f"mu {self.mu} is not <= lam {self.lam}")

    @property
    def pinned(self) -> tuple[int, ...]:
        """Classes whose count is fixed exactly (mu_i < lam_i)."""
        return tuple(i for i, (m, l) in enumerate(zip(self.mu, self.lam)) if m < l)

    def contains(self, counts: Sequence[int]) -> bool:
        return all(c == m if m < l else c >= m
                   for c, m, l in zip(counts, self.mu, self.lam))

    def face_budget(self, class_sizes: Sequence[int]) -> int:
        return math.prod(math.comb(s, m) for s, m in zip(class_sizes, self.mu))


def block_of(counts: Sequence[int], lam: Sequence[int]) -> tuple[int, ...]:
    """The unique mu <= lam whose block contains a point with these class counts."""
    return tuple(min(c, l) for c, l in zip(counts, lam))


@dataclass
class BlockRecord:
    block: BlockSpec
    maximizer: GroundPoint
    minimizer: GroundPoint
    linear_queries: int
    comparisons: int
    face_budget: int
    comparison_budget: int

    def to_dict(self) -> dict:
        return {"mu": list(self.block.mu), "maximizer": str(self.maximizer),
                "minimizer": str(self.minimizer), "linear_queries": self.linear_queries,
                "comparisons": self.comparisons, "face_budget": self.face_budget,
                "comparison_budget": self.comparison_budget}


@dataclass
class SolveReport:
    solver: str
    solution: GroundPoint
    weight: int
    guarantee: int
    stats: OracleStats
    per_block: list[BlockRecord] = field(default_factory=list)
    examined: frozenset[int] = frozenset()
    chain: tuple[int, ...] = ()
    query_budget: Optional[int] = None

    def to_dict(self) -> dict:
        out = {"solver": self.solver, "solution": str(self.solution),
               "support": list(self.solution.support()), "weight": self.weight,
               "guarantee": self.guarantee, "stats": self.stats.snapshot(),
               "examined": sorted(self.examined)}
        if self.per_block:
            out["blocks"] = [b.to_dict() for b in self.per_block]
        if self.chain:
            out["chain"] = list(self.chain)
        if self.query_budget is not None:
            out["query_budget"] = self.query_budget
        return out


def _argmin(candidates, w: WeightVector, cmp: ComparisonOracle):
    """First candidate of minimal f(wx); one comparison per later candidate."""
    best, best_val = None, None
    for x in candidates:
        val = w.value(x)
        if best is None or cmp.compare(val, best_val) < 0:
            best, best_val = x, val
    return best


def naive_candidates(xbar: GroundPoint, w: WeightVector) -> list[GroundPoint]:
    """One point x_nu <= xbar per nu <= tau, keeping the lowest-indexed elements."""
    if len(xbar) != w.n:
        raise ValueError(f"point length {len(xbar)} does not match n={w.n}")
    per_class = [[j for j in cls if xbar.bits[j]] for cls in w.classes]
    tau = [len(s) for s in per_class]
    out = []
    for nu in multi_indices(tau):
        keep = [j for s, k in zip(per_class, nu) for j in s[:k]]
        out.append(GroundPoint.indicator(w.n, keep))
    return out


def naive_min_under(xbar: GroundPoint, w: WeightVector, cmp: ComparisonOracle) -> GroundPoint:
    """min f(wx) over x <= xbar using at most prod(tau_i + 1) comparisons."""
    return _argmin(naive_candidates(xbar, w), w, cmp)


def face_alpha(w: WeightVector) -> int:
    return 1 + 2 * w.n * max((abs(x) for x in w.weights), default=0)


def face_maximize(oracle: LinearOracle, w: WeightVector, face: FaceSpec) -> Optional[GroundPoint]:
    """Maximize wx over the face pinned to 0 on ``face.lower`` and 1 on ``face.upper``.

    One oracle call with penalized weights; ``None`` if the face is empty.
    """
    alpha = face_alpha(w)
    v = list(w.weights)
    for j in face.upper:
        v[j] += alpha
    for j in face.lower:
        v[j] -= alpha
    x = oracle(v)
    value = x.dot(v) - len(face.upper) * alpha
    # alpha is odd, so the integer value never equals -alpha/2
    assert 2 * value != -alpha
    if 2 * value > -alpha:
        return x
    return None


def block_maximize(oracle: LinearOracle, w: WeightVector, block: BlockSpec) -> Optional[GroundPoint]:
    """Maximize wx over the block S^lam_mu, or ``None`` if it is empty."""
    if len(block.mu) != len(w.classes):
        raise ValueError("block length does not match number of weight classes")
    pinned = set(block.pinned)
    if any(m > len(cls) for m, cls in zip(block.mu, w.classes)):
        return None
    best, best_val = None, None
    for choice in itertools.product(*(itertools.combinations(cls, m)
                                      for cls, m in zip(w.classes, block.mu))):
        upper = frozenset(j for part in choice for j in part)
        lower = frozenset(j for i in pinned for j in w.classes[i] if j not in upper)
        x = face_maximize(oracle, w, FaceSpec(lower, upper))
        if x is not None:
            val = w.value(x)
            if best_val is None or val > best_val:
                best, best_val = x, val
    return best


def _check_weights(w: WeightVector, a: PrimitiveTuple) -> None:
    allowed = set(a.entries)
    for j, wj in enumerate(w.weights):
        if wj not in allowed:
            raise ValueError(f"weight not in tuple: w[{j}]={wj}, tuple {a}")


def _aligned(w: WeightVector, a: PrimitiveTuple) -> WeightVector:
    _check_weights(w, a)
    return w if w.tuple == a else WeightVector(w.weights, a)


def r_best_solve(oracle: LinearOracle, w: WeightVector, cmp: ComparisonOracle,
                 a=None, lam: Optional[Sequence[int]] = None) -> SolveReport:
    """Partition S into blocks by lam = (max(a),)*p, maximize wx in each block,
    run the naive strategy below each block maximizer, keep the f-best."""
    a = as_tuple(a) if a is not None else w.tuple
    w = _aligned(w, a)
    lam = tuple(lam) if lam is not None else default_lambda(a)
    stats = oracle.stats
    records: list[BlockRecord] = []
    examined: set[int] = set()
    sizes = w.class_sizes()
    budget = 0
    for mu in multi_indices(lam):
        block = BlockSpec(lam, mu)
        budget += block.face_budget(sizes)
        before = stats.snapshot()
        x_mu = block_maximize(oracle, w, block)
        if x_mu is None:
            continue
        mid = stats.snapshot()
        candidates = naive_candidates(x_mu, w)
        examined.update(w.value(x) for x in candidates)
        x_star = _argmin(candidates, w, cmp)
        after = stats.snapshot()
        records.append(BlockRecord(
            block, x_mu, x_star,
            linear_queries=mid["linear_queries"] - before["linear_queries"],
            comparisons=after["comparison_queries"] - mid["comparison_queries"],
            face_budget=block.face_budget(sizes),
            comparison_budget=len(candidates)))
    best = _argmin([r.minimizer for r in records], w, cmp)
    return SolveReport("main", best, w.value(best), r_bound(a, lam), stats,
                       per_block=records, examined=frozenset(examined), query_budget=budget)


def naive_solve(oracle: LinearOracle, w: WeightVector, cmp: ComparisonOracle,
                a=None) -> SolveReport:
    """The unrefined strategy: one maximizer, then min f below it. No guarantee."""
    a = as_tuple(a) if a is not None else w.tuple
    w = _aligned(w, a)
    xbar = oracle(list(w.weights))
    candidates = naive_candidates(xbar, w)
    x_star = _argmin(candidates, w, cmp)
    # no constant bound exists for this strategy; report the trivial one
    return SolveReport("naive", x_star, w.value(x_star), w.max_value(), oracle.stats,
                       examined=frozenset(w.value(x) for x in candidates))


def descending_chain(x: GroundPoint) -> list[GroundPoint]:
    """x^0 = 0 <= x^1 <= ... <= x^k = x, removing the highest index first going down."""
    chain = [x]
    for j in reversed(x.support()):
        chain.append(chain[-1].without(j))
    chain.reverse()
    return chain


def quasiconvex_solve(oracle: LinearOracle, w: WeightVector, cmp: ComparisonOracle,
                      a=None) -> SolveReport:
    """(max(a) - 1)-best for quasiconvex f; f is trusted to be quasiconvex."""
    a = as_tuple(a) if a is not None else w.tuple
    w = _aligned(w, a)
    xbar = oracle(list(w.weights))
    chain = descending_chain(xbar)
    best = _argmin(chain, w, cmp)
    weights = tuple(w.value(x) for x in chain)
    return SolveReport("quasiconvex", best, w.value(best), max(a.max - 1, 0), oracle.stats,
                       examined=frozenset(weights), chain=weights)


SOLVERS = {"main": r_best_solve, "naive": naive_solve, "quasiconvex": quasiconvex_solve}
