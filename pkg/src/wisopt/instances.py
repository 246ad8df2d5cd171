"""Independence systems, weight vectors, objective tables and counted oracles.

Indices are 0-based throughout; in 0/1 strings index 0 is the leftmost
character.
"""
from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .monoid import PrimitiveTuple, as_tuple


@dataclass(frozen=True, order=False)
class GroundPoint:
    bits: tuple[int, ...]

    def __init__(self, bits: Iterable[int]):
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"ground point must be 0/1: {bits}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def zero(cls, n: int) -> "GroundPoint":
        return cls((0,) * n)

    @classmethod
    def indicator(cls, n: int, support: Iterable[int]) -> "GroundPoint":
        bits = [0] * n
        for j in support:
            bits[j] = 1
        return cls(bits)

    @classmethod
    def from_string(cls, s: str) -> "GroundPoint":
        if set(s) - {"0", "1"}:
            raise ValueError(f"not a 0/1 string: {s!r}")
        return cls(int(c) for c in s)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __le__(self, other: "GroundPoint") -> bool:
        return all(x <= y for x, y in zip(self.bits, other.bits))

    def __ge__(self, other: "GroundPoint") -> bool:
        return other <= self

    def __lt__(self, other: "GroundPoint") -> bool:
        return self <= other and self != other

    def __gt__(self, other: "GroundPoint") -> bool:
        return other < self

    def support(self) -> tuple[int, ...]:
        return tuple(j for j, b in enumerate(self.bits) if b)

    def without(self, j: int) -> "GroundPoint":
        bits = list(self.bits)
        bits[j] = 0
        return GroundPoint(bits)

    def dot(self, v: Sequence[int]) -> int:
        return sum(c for c, b in zip(v, self.bits) if b)

    def subsets(self) -> Iterator["GroundPoint"]:
        supp = self.support()
        n = len(self.bits)
        for k in range(len(supp) + 1):
            for sub in itertools.combinations(supp, k):
                yield GroundPoint.indicator(n, sub)


def lex_key(x: GroundPoint) -> tuple[int, ...]:
    return x.bits


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[int, ...]
    tuple: PrimitiveTuple
    classes: tuple[tuple[int, ...], ...] = field(init=False)

    def __init__(self, weights: Iterable[int], a):
        weights = tuple(int(w) for w in weights)
        a = as_tuple(a)
        index = {ai: i for i, ai in enumerate(a)}
        classes: list[list[int]] = [[] for _ in a]
        for j, wj in enumerate(weights):
            if wj not in index:
                raise ValueError(f"weight not in tuple: w[{j}]={wj}, tuple {a}")
            classes[index[wj]].append(j)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "tuple", a)
        object.__setattr__(self, "classes", tuple(map(tuple, classes)))

    @property
    def n(self) -> int:
        return len(self.weights)

    def value(self, x: GroundPoint) -> int:
        return x.dot(self.weights)

    def lam(self, x: GroundPoint) -> tuple[int, ...]:
        """Per-class support counts, so that ``value(x) == lam(x) . a``."""
        return tuple(sum(x.bits[j] for j in cls) for cls in self.classes)

    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def max_value(self) -> int:
        return sum(self.weights)


class IndependenceSystem:
    """Common interface of the two representations."""

    n: int

    def linear_max(self, v: Sequence[int]) -> GroundPoint:
        raise NotImplementedError

    def contains(self, x: GroundPoint) -> bool:
        raise NotImplementedError

    def points(self) -> frozenset[GroundPoint]:
        raise NotImplementedError

    def image(self, w: WeightVector) -> frozenset[int]:
        raise NotImplementedError

    def _check_vector(self, v: Sequence[int]) -> None:
        if len(v) != self.n:
            raise ValueError(f"vector length {len(v)} does not match n={self.n}")


def _subset_weight_bits(weights: Sequence[int], support: Iterable[int]) -> int:
    bits = 1
    for j in support:
        bits |= bits << weights[j]
    return bits


def _bitset_values(bits: int) -> frozenset[int]:
    return frozenset(i for i in range(bits.bit_length()) if bits >> i & 1)


class ExplicitSystem(IndependenceSystem):
    """A finite point list, closed downward when constructed."""

    def __init__(self, n: int, points: Iterable[GroundPoint], strict: bool = False):
        self.n = n
        given = {GroundPoint(p) if not isinstance(p, GroundPoint) else p for p in points}
        for p in given:
            if len(p) != n:
                raise ValueError(f"point {p} has length {len(p)}, expected {n}")
        closed: set[GroundPoint] = {GroundPoint.zero(n)}
        for p in given:
            closed.update(p.subsets())
        if strict and closed != given:
            raise ValueError("point set is not downward closed")
        self._points = frozenset(closed)
        self._sorted = sorted(self._points, key=lex_key)

    def linear_max(self, v: Sequence[int]) -> GroundPoint:
        self._check_vector(v)
        best, best_val = None, None
        for x in self._sorted:  # lex order, so first maximizer is lex smallest
            val = x.dot(v)
            if best_val is None or val > best_val:
                best, best_val = x, val
        return best

    def contains(self, x: GroundPoint) -> bool:
        return x in self._points

    def points(self) -> frozenset[GroundPoint]:
        return self._points

    def image(self, w: WeightVector) -> frozenset[int]:
        return frozenset(w.value(x) for x in self._points)

    def __len__(self) -> int:
        return len(self._points)

    def __repr__(self) -> str:
        return f"ExplicitSystem(n={self.n}, |S|={len(self._points)})"


def _maximal(points: list[GroundPoint], n: int) -> list[GroundPoint]:
    """Drop points dominated by another point; they add nothing to the closure."""
    if n <= 62:
        masks = np.array([sum(1 << j for j in p.support()) for p in points], dtype=np.int64)
        keep = [not np.any(((m & ~masks) == 0) & (masks != m)) for m in masks]
        return [p for p, k in zip(points, keep) if k]
    return [p for p in points if not any(p < q for q in points)]


class GeneratorSystem(IndependenceSystem):
    """Downward closure of a finite set of generators."""

    def __init__(self, n: int, generators: Iterable[GroundPoint]):
        self.n = n
        gens = {GroundPoint(g) if not isinstance(g, GroundPoint) else g for g in generators}
        for g in gens:
            if len(g) != n:
                raise ValueError(f"generator {g} has length {len(g)}, expected {n}")
        kept = _maximal(list(gens), n) or [GroundPoint.zero(n)]
        self.generators = tuple(sorted(kept, key=lex_key))
        self._matrix = np.array([g.bits for g in self.generators], dtype=np.int64).reshape(
            len(self.generators), n)

    def linear_max(self, v: Sequence[int]) -> GroundPoint:
        self._check_vector(v)
        pos = np.asarray(v, dtype=np.int64) > 0
        cand = self._matrix & pos  # best point below each generator
        vals = cand @ np.asarray(v, dtype=np.int64)
        top = vals.max()
        rows = {tuple(int(b) for b in cand[k]) for k in np.flatnonzero(vals == top)}
        return GroundPoint(min(rows))

    def contains(self, x: GroundPoint) -> bool:
        if len(x) != self.n:
            return False
        xs = np.asarray(x.bits, dtype=np.int64)
        return bool(np.any(np.all(self._matrix >= xs, axis=1)))

    def points(self) -> frozenset[GroundPoint]:
        out: set[GroundPoint] = set()
        for g in self.generators:
            out.update(g.subsets())
        return frozenset(out)

    def image(self, w: WeightVector) -> frozenset[int]:
        bits = 0
        for g in self.generators:
            bits |= _subset_weight_bits(w.weights, g.support())
        return _bitset_values(bits)

    def to_explicit(self) -> ExplicitSystem:
        return ExplicitSystem(self.n, self.points())

    def __repr__(self) -> str:
        return f"GeneratorSystem(n={self.n}, generators={len(self.generators)})"


@dataclass(frozen=True)
class ObjectiveTable:
    values: tuple[float, ...]

    def __init__(self, values: Iterable[float]):
        object.__setattr__(self, "values", tuple(values))

    def __len__(self) -> int:
        return len(self.values)

    def value(self, k: int) -> float:
        if not 0 <= k < len(self.values):
            raise IndexError(f"objective table too short: index {k}, length {len(self.values)}")
        return self.values[k]


@dataclass
class OracleStats:
    linear_queries: int = 0
    comparison_queries: int = 0
    membership_queries: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def bump(self, kind: str) -> None:
        with self._lock:
            setattr(self, kind, getattr(self, kind) + 1)

    def snapshot(self) -> dict[str, int]:
        with self._lock:
            return {"linear_queries": self.linear_queries,
                    "comparison_queries": self.comparison_queries,
                    "membership_queries": self.membership_queries}


class LinearOracle:
    """Counted linear-optimization view of an independence system."""

    def __init__(self, system: IndependenceSystem, stats: Optional[OracleStats] = None):
        self._system = system
        self.n = system.n
        self.stats = stats if stats is not None else OracleStats()

    def __call__(self, v: Sequence[int]) -> GroundPoint:
        self.stats.bump("linear_queries")
        return self._system.linear_max(v)


class MembershipOracle:
    def __init__(self, system: IndependenceSystem, stats: Optional[OracleStats] = None):
        self._system = system
        self.n = system.n
        self.stats = stats if stats is not None else OracleStats()

    def __call__(self, x: GroundPoint) -> bool:
        self.stats.bump("membership_queries")
        return self._system.contains(x)


class ComparisonOracle:
    """Counted comparisons of f; the table itself is not exposed."""

    def __init__(self, table: ObjectiveTable, stats: Optional[OracleStats] = None):
        self.__table = table
        self.stats = stats if stats is not None else OracleStats()

    def compare(self, x_val: int, y_val: int) -> int:
        """-1, 0 or 1 as f(x_val) is less than, equal to or greater than f(y_val)."""
        fx, fy = self.__table.value(x_val), self.__table.value(y_val)
        self.stats.bump("comparison_queries")
        return (fx > fy) - (fx < fy)

    def leq(self, x_val: int, y_val: int) -> bool:
        return self.compare(x_val, y_val) <= 0


def compare(f: ObjectiveTable, x_val: int, y_val: int,
            stats: Optional[OracleStats] = None) -> int:
    return ComparisonOracle(f, stats).compare(x_val, y_val)


def image(system: IndependenceSystem, w: WeightVector) -> frozenset[int]:
    return system.image(w)


def linear_oracle(system: IndependenceSystem, v: Sequence[int]) -> GroundPoint:
    return system.linear_max(v)


@dataclass(frozen=True)
class Instance:
    system: IndependenceSystem
    weights: WeightVector
    objective: ObjectiveTable
    name: str = "instance"

    @property
    def n(self) -> int:
        return self.system.n

    @property
    def tuple(self) -> PrimitiveTuple:
        return self.weights.tuple

    def oracles(self, stats: Optional[OracleStats] = None):
        stats = stats if stats is not None else OracleStats()
        return LinearOracle(self.system, stats), ComparisonOracle(self.objective, stats), stats


# -- named families ----------------------------------------------------------

def example_3_1_objective(m: int) -> ObjectiveTable:
    return ObjectiveTable(k if k % 2 else 2 * m for k in range(4 * m + 1))


def make_example_3_1(m: int) -> Instance:
    """a = (1, 2), n = 4m, S generated by y (first half) and z (second half)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n = 4 * m
    y = GroundPoint.indicator(n, range(2 * m))
    z = GroundPoint.indicator(n, range(2 * m, 4 * m))
    w = WeightVector([1] * (2 * m) + [2] * (2 * m), (1, 2))
    return Instance(GeneratorSystem(n, [y, z]), w, example_3_1_objective(m),
                    name=f"example_3_1(m={m})")


def spike_objective(size: int, at: int) -> ObjectiveTable:
    """f(at) = 0 and f(k) = 1 + k elsewhere; ``at`` is the unique minimizer."""
    return ObjectiveTable(0 if k == at else 1 + k for k in range(size))


@dataclass(frozen=True)
class AdversarialFamily:
    """A base system S and witnesses y, each giving S_y = S + {y}."""

    kind: str
    m: int
    system: GeneratorSystem
    weights: WeightVector
    witness_value: int

    @cached_property
    def witnesses(self) -> tuple[GroundPoint, ...]:
        n = self.system.n
        if self.kind == "lower_bound":
            left, right = range(2 * self.m), range(2 * self.m, 4 * self.m)
            return tuple(GroundPoint.indicator(n, A + B)
                         for A in itertools.combinations(left, self.m + 1)
                         for B in itertools.combinations(right, self.m - 1))
        return tuple(GroundPoint.indicator(n, c)
                     for c in itertools.combinations(range(n), self.m))

    @property
    def size(self) -> int:
        if self.kind == "lower_bound":
            return math.comb(2 * self.m, self.m + 1) * math.comb(2 * self.m, self.m - 1)
        return math.comb(2 * self.m, self.m)

    def witness(self, k: int) -> GroundPoint:
        return self.witnesses[k]

    def augmented(self, k: int) -> GeneratorSystem:
        return GeneratorSystem(self.system.n, self.system.generators + (self.witness(k),))

    def objective(self) -> ObjectiveTable:
        return spike_objective(self.weights.max_value() + 1, self.witness_value)

    def instance(self, k: Optional[int] = None) -> Instance:
        system = self.system if k is None else self.augmented(k)
        suffix = "" if k is None else f",y={k}"
        return Instance(system, self.weights, self.objective(),
                        name=f"{self.kind}(m={self.m}{suffix})")


def _lower_bound_layer(m: int, i: int) -> list[GroundPoint]:
    n = 4 * m
    left, right = range(2 * m), range(2 * m, 4 * m)
    return [GroundPoint.indicator(n, A + B)
            for A in itertools.combinations(left, m + i)
            for B in itertools.combinations(right, m - i)]


def make_lower_bound_family(m: int) -> AdversarialFamily:
    """n = 4m, w = 2 on the first half and 3 on the second, S generated by T0 and T2."""
    if m < 2:
        raise ValueError("lower-bound family requires m >= 2")
    n = 4 * m
    w = WeightVector([2] * (2 * m) + [3] * (2 * m), (2, 3))
    system = GeneratorSystem(n, _lower_bound_layer(m, 0) + _lower_bound_layer(m, 2))
    return AdversarialFamily("lower_bound", m, system, w, 5 * m - 1)


def make_membership_family(m: int) -> AdversarialFamily:
    """n = 2m, unit weights, S = points of support size at most m - 1."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n = 2 * m
    gens = [GroundPoint.indicator(n, c) for c in itertools.combinations(range(n), m - 1)]
    return AdversarialFamily("membership", m, GeneratorSystem(n, gens),
                             WeightVector([1] * n, (1,)), m)


# -- random instances ----------------------------------------------------------

def random_weights(rng: np.random.Generator, a, n: int) -> WeightVector:
    a = as_tuple(a)
    return WeightVector(rng.choice(a.entries, size=n).tolist(), a)


def random_system(rng: np.random.Generator, n: int, n_generators: int,
                  density: float = 0.6) -> GeneratorSystem:
    gens = [GroundPoint((rng.random(n) < density).astype(int).tolist())
            for _ in range(n_generators)]
    return GeneratorSystem(n, gens)


def random_table(rng: np.random.Generator, size: int, spread: Optional[int] = None) -> ObjectiveTable:
    spread = spread if spread is not None else max(size, 2)
    return ObjectiveTable(rng.integers(0, spread, size=size).tolist())


def convex_table(size: int, target: float, scale: float = 1.0) -> ObjectiveTable:
    return ObjectiveTable(scale * (z - target) ** 2 for z in range(size))


def random_instance(rng: np.random.Generator, a, n: int,
                    n_generators: Optional[int] = None,
                    density: Optional[float] = None) -> Instance:
    a = as_tuple(a)
    k = n_generators if n_generators is not None else int(rng.integers(1, 5))
    d = density if density is not None else float(rng.uniform(0.3, 0.9))
    w = random_weights(rng, a, n)
    system = random_system(rng, n, k, d)
    return Instance(system, w, random_table(rng, w.max_value() + 1), name=f"random{a}")
