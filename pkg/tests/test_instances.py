import math
import threading

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import all_points, point
from wisopt.instances import (ComparisonOracle, ExplicitSystem, GeneratorSystem, GroundPoint,
                              MembershipOracle, ObjectiveTable, OracleStats,
                              WeightVector, compare, example_3_1_objective, image, linear_oracle,
                              make_example_3_1, make_lower_bound_family, make_membership_family,
                              random_instance)


def test_ground_point_basics():
    x = point("1101")
    assert x.support() == (0, 1, 3)
    assert x.without(1) == point("1001")
    assert point("1001") <= x and not x <= point("1001")
    assert str(x) == "1101"
    assert len(list(x.subsets())) == 8
    with pytest.raises(ValueError):
        GroundPoint((0, 2))


def test_weight_vector_classes():
    w = WeightVector([2, 3, 3, 2], (2, 3))
    assert w.classes == ((0, 3), (1, 2))
    with pytest.raises(ValueError, match="weight not in tuple"):
        WeightVector([2, 4], (2, 3))


@given(st.lists(st.sampled_from([2, 3, 5]), min_size=1, max_size=12), st.data())
def test_lambda_consistency(weights, data):
    w = WeightVector(weights, (2, 3, 5))
    x = GroundPoint(data.draw(st.lists(st.integers(0, 1), min_size=len(weights),
                                       max_size=len(weights))))
    assert w.value(x) == sum(l * a for l, a in zip(w.lam(x), (2, 3, 5)))


def test_explicit_closed_on_load():
    s = ExplicitSystem(3, [point("110")])
    assert s.points() == {point("000"), point("100"), point("010"), point("110")}
    with pytest.raises(ValueError):
        ExplicitSystem(3, [point("110")], strict=True)


def test_generators_drop_dominated():
    s = GeneratorSystem(3, [point("110"), point("100"), point("001")])
    assert s.generators == (point("001"), point("110"))


# -- linear oracle --------------------------------------------------------------------

def test_oracle_example_3_1_returns_z():
    for m in (1, 2, 3):
        inst = make_example_3_1(m)
        x = linear_oracle(inst.system, list(inst.weights.weights))
        assert x == GroundPoint.indicator(4 * m, range(2 * m, 4 * m))
        assert inst.weights.value(x) == 4 * m


def test_oracle_zero_vector():
    inst = make_example_3_1(2)
    assert linear_oracle(inst.system, [0] * 8) == GroundPoint.zero(8)
    assert ExplicitSystem(3, [point("101")]).linear_max([0, 0, 0]) == point("000")


@pytest.mark.parametrize("cls", [ExplicitSystem, GeneratorSystem])
def test_oracle_small_closure(cls):
    s = cls(3, [point("110")])
    assert s.linear_max([2, -1, 5]) == point("100")


def test_oracle_length_mismatch():
    with pytest.raises(ValueError):
        GeneratorSystem(3, [point("110")]).linear_max([1, 2])


def random_systems(seed, count, max_n=12):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        gens = [GroundPoint((rng.random(n) < rng.uniform(0.2, 0.9)).astype(int).tolist())
                for _ in range(int(rng.integers(1, 5)))]
        yield n, gens


def test_oracle_soundness_against_enumeration():
    rng = np.random.default_rng(7)
    for n, gens in random_systems(1, 25):
        gsys, esys = GeneratorSystem(n, gens), ExplicitSystem(n, gens)
        pts = all_points(esys)
        assert set(pts) == gsys.points()
        for _ in range(200):
            v = rng.integers(-10, 11, size=n).tolist()
            best = max(x.dot(v) for x in pts)
            xg, xe = gsys.linear_max(v), esys.linear_max(v)
            assert xg.dot(v) == xe.dot(v) == best
            assert gsys.contains(xg) and esys.contains(xe)
            # both pick the lexicographically smallest maximizer
            assert xg == xe == min((x for x in pts if x.dot(v) == best), key=lambda x: x.bits)


def test_image_generators_equals_explicit():
    rng = np.random.default_rng(3)
    for n, gens in random_systems(2, 40):
        w = WeightVector(rng.choice([2, 3, 5], size=n).tolist(), (2, 3, 5))
        g, e = GeneratorSystem(n, gens), ExplicitSystem(n, gens)
        assert g.image(w) == e.image(w) == {w.value(x) for x in e.points()}


def test_downward_closure_of_constructed_systems():
    systems = [make_example_3_1(2).system, make_lower_bound_family(2).system,
               make_membership_family(3).system]
    for s in systems:
        for x in s.points():
            for j in x.support():
                assert s.contains(x.without(j))


def test_membership_oracle_counts():
    s = GeneratorSystem(3, [point("110")])
    stats = OracleStats()
    mem = MembershipOracle(s, stats)
    assert mem(point("100")) and not mem(point("001"))
    assert stats.membership_queries == 2


# -- objective / comparisons -------------------------------------------------------------

def test_compare_example_3_1():
    f = example_3_1_objective(3)
    assert compare(f, 5, 6) == -1
    assert f.value(5) == 5 and f.value(6) == 6
    assert compare(f, 4, 4) == 0
    assert compare(f, 2, 4) == 0  # different arguments, equal values


def test_compare_counts_and_range():
    stats = OracleStats()
    cmp = ComparisonOracle(ObjectiveTable([3, 1, 2]), stats)
    assert cmp.compare(0, 1) == 1 and cmp.leq(1, 2)
    assert stats.comparison_queries == 2
    with pytest.raises(IndexError, match="objective table too short"):
        cmp.compare(0, 3)


def test_stats_threadsafe():
    stats = OracleStats()

    def work():
        for _ in range(2000):
            stats.bump("linear_queries")

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert stats.linear_queries == 16000


# -- named families --------------------------------------------------------------------

def test_example_3_1_family():
    inst = make_example_3_1(1)
    assert inst.weights.weights == (1, 1, 2, 2)
    assert inst.system.contains(GroundPoint.zero(4))
    m = 2
    inst = make_example_3_1(m)
    expected = set(range(2 * m + 1)) | {2 * i for i in range(2 * m + 1)}
    assert image(inst.system, inst.weights) == expected
    assert inst.system.to_explicit().image(inst.weights) == expected


def test_lower_bound_family_m2():
    fam = make_lower_bound_family(2)
    assert fam.size == math.comb(4, 3) * math.comb(4, 1) == 16 == len(fam.witnesses)
    assert fam.system.image(fam.weights) == set(range(11)) - {1, 9}
    for k in range(fam.size):
        aug = fam.augmented(k)
        assert aug.image(fam.weights) == set(range(11)) - {1}
        assert fam.weights.value(fam.witness(k)) == 9
        assert not fam.system.contains(fam.witness(k))
    for g in fam.system.generators:
        if sum(g.bits[:4]) == 2:  # T0 members
            assert fam.weights.value(g) == 10


def test_lower_bound_family_requires_m2():
    with pytest.raises(ValueError):
        make_lower_bound_family(1)


def test_lower_bound_t0_weights_any_m():
    for m in (2, 3, 4):
        fam = make_lower_bound_family(m)
        t0 = [g for g in fam.system.generators if sum(g.bits[:2 * m]) == m]
        assert len(t0) == math.comb(2 * m, m) ** 2
        assert all(fam.weights.value(g) == 5 * m for g in t0)


def test_membership_family():
    fam = make_membership_family(2)
    assert fam.system.image(fam.weights) == {0, 1}
    assert fam.augmented(0).image(fam.weights) == {0, 1, 2}
    assert make_membership_family(1).system.points() == {GroundPoint.zero(2)}
    assert make_membership_family(3).size == 20 == len(make_membership_family(3).witnesses)


def test_random_instance_table_covers_weights(rng):
    for _ in range(20):
        inst = random_instance(rng, (2, 3), 10)
        assert len(inst.objective) == inst.weights.max_value() + 1
