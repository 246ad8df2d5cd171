"""Numerical-semigroup arithmetic: gap sets, Frobenius numbers, restricted
monoids, saturation, and the r(a) / g(a) quality bounds.

Sets of integers over ``[0, B]`` are handled internally as Python ``int``
bitsets (bit ``v`` set iff ``v`` is in the set) and exposed as frozensets.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Optional, Sequence


def gcd_tuple(entries: Iterable[int]) -> int:
    entries = list(entries)
    if not entries:
        raise ValueError("empty tuple")
    return reduce(math.gcd, entries)


@dataclass(frozen=True)
class PrimitiveTuple:
    """Distinct positive integers with gcd 1. The empty tuple is allowed."""

    entries: tuple[int, ...]

    def __init__(self, entries: Iterable[int]):
        entries = tuple(int(e) for e in entries)
        if any(e <= 0 for e in entries):
            raise ValueError(f"tuple entries must be positive: {entries}")
        if len(set(entries)) != len(entries):
            raise ValueError(f"tuple entries must be distinct: {entries}")
        if entries and gcd_tuple(entries) != 1:
            raise ValueError("tuple not primitive")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    @property
    def p(self) -> int:
        return len(self.entries)

    @property
    def max(self) -> int:
        return max(self.entries, default=0)

    def is_divisible(self) -> bool:
        """True iff each entry divides the next (in the given order)."""
        return all(b % a == 0 for a, b in zip(self.entries, self.entries[1:]))

    def dot(self, lam: Sequence[int]) -> int:
        _check_length(self, lam)
        return sum(l * a for l, a in zip(lam, self.entries))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


def as_tuple(a) -> PrimitiveTuple:
    return a if isinstance(a, PrimitiveTuple) else PrimitiveTuple(a)


def _check_length(a: PrimitiveTuple, lam: Sequence[int]) -> None:
    if len(lam) != len(a):
        raise ValueError(
            f"multi-index length {len(lam)} does not match tuple length {len(a)}")
    if any(l < 0 for l in lam):
        raise ValueError(f"multi-index entries must be nonnegative: {tuple(lam)}")


def schur_bound(a) -> Optional[int]:
    """(min(a) - 1)(max(a) - 1), an upper bound on F(a) + 1.

    None unless p >= 2 and all a_i >= 2.
    """
    a = as_tuple(a)
    if a.p < 2 or min(a) < 2:
        return None
    return (min(a) - 1) * (a.max - 1)


def pairwise_bound(a) -> Optional[int]:
    """min (a_i - 1)(a_j - 1) over coprime pairs, an upper bound on F(a) + 1.

    Pairs sharing a factor are skipped: for (2, 4, 5) the pair (2, 4) would
    give 3 although F = 3.
    """
    a = as_tuple(a)
    if a.p < 2 or min(a) < 2:
        return None
    vals = [(x - 1) * (y - 1) for x, y in itertools.combinations(a, 2) if math.gcd(x, y) == 1]
    return min(vals, default=None)


def default_bound(a) -> int:
    """Smallest safe DP range: max(a) or the best valid Frobenius bound."""
    a = as_tuple(a)
    bounds = [b for b in (schur_bound(a), pairwise_bound(a)) if b is not None]
    return max(min(bounds, default=0), a.max)


def _bits_to_set(bits: int, lo: int = 0) -> frozenset[int]:
    out = []
    v = 0
    while bits:
        if bits & 1 and v >= lo:
            out.append(v)
        bits >>= 1
        v += 1
    return frozenset(out)


def _reachable_bits(entries: Sequence[int], bound: int) -> int:
    """Unbounded combinations of ``entries`` within ``[0, bound]`` as a bitset."""
    mask = (1 << (bound + 1)) - 1
    reach = 1
    for e in sorted(set(entries)):
        # doubling: after step k, all multiples up to 2^k - 1 of e are folded in
        shift = e
        while shift <= bound:
            new = (reach | (reach << shift)) & mask
            reach = new
            shift <<= 1
    return reach


@dataclass(frozen=True)
class GapData:
    tuple: PrimitiveTuple
    bound: int
    reachable: frozenset[int]
    gaps: frozenset[int]
    frobenius: int

    @property
    def genus(self) -> int:
        return len(self.gaps)


def gap_data(a, bound: Optional[int] = None) -> GapData:
    """Monoid membership on ``[0, bound]`` plus the complete gap set of ``a``.

    ``gaps`` and ``frobenius`` are always exact: they are computed over the
    Schur range even when ``bound`` is smaller.
    """
    a = as_tuple(a)
    full = default_bound(a)
    if bound is None:
        bound = full
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    reach = _reachable_bits(a.entries, max(bound, full))
    if a.p == 0:
        # empty tuple: M = {0}, but F := 0 and G := {} by convention
        gaps: frozenset[int] = frozenset()
    else:
        gaps = _bits_to_set(~reach & ((1 << (full + 1)) - 1))
    reachable = _bits_to_set(reach & ((1 << (bound + 1)) - 1))
    return GapData(a, bound, reachable, gaps, max(gaps, default=0))


def _normalized(entries: Sequence[int]) -> tuple[int, ...]:
    entries = tuple(sorted(set(entries)))
    if not entries:
        return ()
    g = gcd_tuple(entries)
    return tuple(e // g for e in entries)


@lru_cache(maxsize=None)
def _gaps_cached(entries: tuple[int, ...]) -> frozenset[int]:
    return gap_data(PrimitiveTuple(entries)).gaps


def frobenius(a) -> int:
    entries = a.entries if isinstance(a, PrimitiveTuple) else _normalized(a)
    return max(_gaps_cached(tuple(sorted(entries))), default=0)


def gap_set(a) -> frozenset[int]:
    entries = a.entries if isinstance(a, PrimitiveTuple) else _normalized(a)
    return _gaps_cached(tuple(sorted(entries)))


def restricted_bits(a, lam: Sequence[int]) -> int:
    """M(a, lam) as a bitset over ``[0, lam.a]`` (bounded-multiplicity DP)."""
    a = as_tuple(a)
    _check_length(a, lam)
    reach = 1
    for e, l in zip(a.entries, lam):
        acc = reach
        shifted = reach
        for _ in range(l):
            shifted <<= e
            acc |= shifted
        reach = acc
    return reach


def restricted_monoid(a, lam: Sequence[int]) -> frozenset[int]:
    return _bits_to_set(restricted_bits(a, lam))


def saturation_target(a, lam: Sequence[int]) -> frozenset[int]:
    """{0..lam.a} minus G(a) and its reflection lam.a - G(a)."""
    a = as_tuple(a)
    top = a.dot(lam)
    gaps = gap_set(a) if a.p else frozenset()
    excluded = set(gaps) | {top - g for g in gaps}
    return frozenset(v for v in range(top + 1) if v not in excluded)


def saturation_defect(a, lam: Sequence[int]) -> frozenset[int]:
    """Values the saturation target has but M(a, lam) misses."""
    m = restricted_monoid(a, lam)
    target = saturation_target(a, lam)
    extra = m - target
    assert not extra, f"containment violated for {a}, {tuple(lam)}: {sorted(extra)}"
    return target - m


def is_saturated(a, lam: Sequence[int]) -> bool:
    return not saturation_defect(a, lam)


def subtuple_for_block(a, lam: Sequence[int], mu: Sequence[int]
                       ) -> tuple[tuple[int, ...], PrimitiveTuple]:
    """Indices ``I = {i : mu_i == lam_i}`` (0-based) and ``(a_i / gcd : i in I)``.

    Dividing distinct entries by a common factor keeps them distinct, so the
    result is always a valid primitive tuple (empty when ``I`` is empty).
    """
    a = as_tuple(a)
    _check_length(a, lam)
    _check_length(a, mu)
    if any(m > l for m, l in zip(mu, lam)):
        raise ValueError(f"mu {tuple(mu)} is not <= lam {tuple(lam)}")
    idx = tuple(i for i, (m, l) in enumerate(zip(mu, lam)) if m == l)
    sub = [a[i] for i in idx]
    if not sub:
        return idx, PrimitiveTuple(())
    g = gcd_tuple(sub)
    return idx, PrimitiveTuple(e // g for e in sub)


def default_lambda(a) -> tuple[int, ...]:
    a = as_tuple(a)
    return (a.max,) * a.p


def _block_sum(a: PrimitiveTuple, lam: Sequence[int], weight) -> int:
    # The summand depends on mu only through I = {i : mu_i = lam_i}; the
    # number of mu <= lam with a given I is prod_{i not in I} lam_i.
    total = 0
    for k in range(a.p + 1):
        for idx in itertools.combinations(range(a.p), k):
            count = math.prod(lam[i] for i in range(a.p) if i not in idx)
            if not count:
                continue
            sub = _normalized([a[i] for i in idx])
            total += count * weight(sub)
    return total


def r_bound(a, lam: Optional[Sequence[int]] = None) -> int:
    """Sum over mu <= lam of F(a^lam_mu); lam defaults to (max(a),)*p."""
    a = as_tuple(a)
    lam = tuple(lam) if lam is not None else default_lambda(a)
    _check_length(a, lam)
    return _block_sum(a, lam, lambda sub: max(_gaps_cached(sub), default=0))


def g_bound(a, lam: Optional[Sequence[int]] = None) -> int:
    """Sum over mu <= lam of |G(a^lam_mu)|; lam defaults to (max(a),)*p."""
    a = as_tuple(a)
    lam = tuple(lam) if lam is not None else default_lambda(a)
    _check_length(a, lam)
    return _block_sum(a, lam, lambda sub: len(_gaps_cached(sub)))


def multi_indices(lam: Sequence[int]):
    """All mu <= lam in lexicographic order."""
    return itertools.product(*(range(l + 1) for l in lam))


def primitive_tuples(max_entry: int, max_len: int):
    """Sorted primitive tuples with entries in ``[1, max_entry]``, 1 <= p <= max_len."""
    for p in range(1, max_len + 1):
        for combo in itertools.combinations(range(1, max_entry + 1), p):
            if gcd_tuple(combo) == 1:
                yield PrimitiveTuple(combo)
