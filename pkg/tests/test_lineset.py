import random

import pytest

from coarselab.lineset import (
    INF,
    BlocksSet,
    ExtendedDistance,
    FiniteSet,
    GeometricSet,
    LineSetError,
    PeriodicSet,
    arithmetic,
    diameter,
    evens,
    hausdorff_at_scale,
    hausdorff_distance,
    intersection,
    is_finite,
    is_subset,
    lineset_from_json,
    member,
    naturals,
    normality_split,
    odds,
    point_distance,
    sparsify_split,
    union,
    verify_gap_certificate,
    window,
)

from oracles import brute_hausdorff, random_periodic


class TestMembership:
    def test_periodic_even(self):
        assert member(evens(), 4)

    def test_geometric_non_power(self):
        assert not member(GeometricSet(1, 2, 1), 12)

    def test_explicit_removal(self):
        s = PeriodicSet(progressions=((1, 3),), removals=(7,))
        assert not member(s, 7)
        assert member(s, 10)

    def test_removal_outside_body_rejected(self):
        with pytest.raises(ValueError):
            PeriodicSet(progressions=((0, 2),), removals=(3,))


class TestWindow:
    def test_evens(self):
        assert window(evens(), 5) == [0, 2, 4]

    def test_geometric(self):
        assert window(GeometricSet(1, 2, 1), 20) == [2, 4, 8, 16]

    def test_naturals(self):
        assert window(naturals(), 3) == [0, 1, 2, 3]


class TestIsFinite:
    def test_finite_list(self):
        assert is_finite(FiniteSet((1, 5, 9)))

    def test_evens(self):
        assert not is_finite(evens())

    def test_periodic_without_progressions(self):
        assert is_finite(PeriodicSet(finite_part=(3,)))


class TestHausdorffExact:
    def test_self_distance_zero(self):
        s = PeriodicSet((4,), ((1, 3),))
        assert hausdorff_distance(s, s).value == 0

    def test_evens_odds(self):
        assert hausdorff_distance(evens(), odds()).value == 1

    def test_finite_vs_infinite(self):
        assert hausdorff_distance(FiniteSet((0,)), evens()) is INF or hausdorff_distance(
            FiniteSet((0,)), evens()
        ).is_infinite

    def test_empty_rejected(self):
        with pytest.raises(LineSetError):
            hausdorff_distance(FiniteSet(()), evens())

    def test_non_exact_tier_rejected(self):
        with pytest.raises(LineSetError):
            hausdorff_distance(GeometricSet(), evens())

    def test_both_finite(self):
        assert hausdorff_distance(FiniteSet((0, 10)), FiniteSet((3,))).value == 7

    def test_agrees_with_brute_force_on_500_pairs(self):
        rng = random.Random(20260809)
        checked = 0
        while checked < 500:
            a, b = random_periodic(rng), random_periodic(rng)
            if a.is_empty() or b.is_empty():
                continue
            assert hausdorff_distance(a, b).value == brute_hausdorff(a, b), (a, b)
            checked += 1

    def test_pseudo_metric_on_200_triples(self):
        rng = random.Random(77)
        checked = 0
        while checked < 200:
            xs = [random_periodic(rng) for _ in range(3)]
            if any(x.is_empty() for x in xs):
                continue
            dab = hausdorff_distance(xs[0], xs[1]).value
            dbc = hausdorff_distance(xs[1], xs[2]).value
            dac = hausdorff_distance(xs[0], xs[2]).value
            assert dab == hausdorff_distance(xs[1], xs[0]).value
            assert hausdorff_distance(xs[0], xs[0]).value == 0
            assert dac <= dab + dbc
            checked += 1

    def test_infinite_periodic_pairs_always_finite(self):
        rng = random.Random(31415)
        checked = 0
        while checked < 200:
            a, b = random_periodic(rng), random_periodic(rng)
            if a.is_finite() or b.is_finite() or a.is_empty() or b.is_empty():
                continue
            assert not hausdorff_distance(a, b).is_infinite
            checked += 1


class TestHausdorffAtScale:
    def test_geometric_pair_refuted(self):
        a, b = GeometricSet(1, 2, 1), GeometricSet(1, 4, 1)
        v = hausdorff_at_scale(a, b, 10, 10**6)
        assert v.is_no
        x = v.witness["point"]
        near = b if v.witness["side"] == 0 else a
        assert point_distance(near, x) > 10

    def test_exact_tier_delegates(self):
        assert hausdorff_at_scale(evens(), odds(), 1, 100).is_yes

    def test_exact_tier_no_carries_witness(self):
        v = hausdorff_at_scale(evens(), arithmetic(0, 10), 2, 100)
        assert v.is_no
        x, side = v.witness["point"], v.witness["side"]
        far_from = arithmetic(0, 10) if side == 0 else evens()
        assert point_distance(far_from, x) > 2

    def test_blocks_gap_midpoints(self):
        blocks = BlocksSet("doubling-blocks", (1,))
        v = hausdorff_at_scale(naturals(), blocks, 5, 10**4)
        assert v.is_no
        assert point_distance(blocks, v.witness["point"]) > 5

    def test_unknown_on_exhaustion(self):
        a = GeometricSet(1, 2, 1)
        v = hausdorff_at_scale(a, a, 3, 1000)
        assert v.is_unknown
        assert v.witness["budget"] == 1000


class TestGapCertificates:
    def test_evens_gap_one(self):
        v = verify_gap_certificate(evens(), 1, 10)
        assert v.is_yes and v.witness["pair"] == (0, 2)

    def test_evens_gap_two_exact_no(self):
        v = verify_gap_certificate(evens(), 2, 10)
        assert v.is_no and v.witness["max_gap"] == 2

    def test_geometric_gap(self):
        v = verify_gap_certificate(GeometricSet(1, 2, 1), 100, 1000)
        assert v.is_yes and v.witness["pair"] == (128, 256)

    def test_finite_rejected(self):
        with pytest.raises(LineSetError):
            verify_gap_certificate(FiniteSet((1, 2)), 1, 10)


class TestSparsifySplit:
    def test_window_values(self):
        left, right = sparsify_split(naturals())
        # simulated from the index rule: side 0 takes 1-based indices
        # [16^j, 2*16^j), side 1 takes [4*16^j, 8*16^j)
        assert window(left, 40) == [0] + list(range(15, 31))
        assert window(right, 62) == [3, 4, 5, 6]

    def test_both_infinite(self):
        left, right = sparsify_split(naturals())
        assert not is_finite(left) and not is_finite(right)
        assert len(window(left, 10**5)) > 1000

    def test_mutual_refutation_up_to_64(self):
        left, right = sparsify_split(naturals())
        for k in (1, 4, 16, 64):
            assert hausdorff_at_scale(left, right, k, 10**6).is_no

    def test_subsets_of_base(self):
        base = evens()
        left, right = sparsify_split(base)
        for x in window(left, 500) + window(right, 500):
            assert member(base, x)

    def test_finite_rejected(self):
        with pytest.raises(LineSetError):
            sparsify_split(FiniteSet((1, 2, 3)))


class TestNormalitySplit:
    def test_pointwise_rule(self):
        a, b = GeometricSet(1, 2, 1), FiniteSet((0,))
        x1, x2, v = normality_split(a, b, 200)
        # side nearer b is the small neighborhood of 0; side nearer a is cofinite
        assert window(x1, 30) == [0, 1]
        assert window(x2, 12) == list(range(1, 13))
        assert v.is_yes

    def test_coverage(self):
        a, b = evens(), odds()
        x1, x2, _ = normality_split(a, b, 300)
        covered = set(window(x1, 300)) | set(window(x2, 300))
        assert covered == set(range(301))

    def test_sparsified_halves(self):
        left, right = sparsify_split(naturals())
        _, _, v = normality_split(left, right, 10**5)
        assert v.is_yes
        for row in v.witness["scales"]:
            assert row["last_near_a"] <= 100 and row["last_near_b"] <= 100


class TestAlgebra:
    def test_union_covers_naturals(self):
        assert window(union(evens(), odds()), 6) == list(range(7))

    def test_union_respects_removals(self):
        a = PeriodicSet(progressions=((0, 2),), removals=(4,))
        b = PeriodicSet(progressions=((0, 4),))
        u = union(a, b)  # 4 returns via b
        assert member(u, 4)

    def test_intersection_crt(self):
        got = intersection(arithmetic(1, 3), arithmetic(2, 4))
        assert window(got, 40) == [10, 22, 34]

    def test_intersection_empty(self):
        got = intersection(arithmetic(0, 2), arithmetic(1, 2))
        assert got.is_empty()

    def test_subset(self):
        assert is_subset(evens(), naturals())
        assert not is_subset(naturals(), evens())
        assert is_subset(arithmetic(0, 4), evens())

    def test_diameter(self):
        assert diameter(FiniteSet((3, 9))).value == 6
        assert diameter(evens()).is_infinite


class TestPairedDivergence:
    def test_index_projections_fail_every_scale(self):
        # paired sets with diverging pointwise distances at equal indices
        a = GeometricSet(1, 4, 1)
        b = BlocksSet("geometric-offset", (1, 4, 1, 2))
        for k in (1, 8, 64):
            assert hausdorff_at_scale(a, b, k, 10**6).is_no


class TestSerialization:
    def test_roundtrip(self):
        sets = [
            FiniteSet((1, 5)),
            PeriodicSet((9,), ((0, 2), (1, 7)), (4,)),
            GeometricSet(3, 2, 2),
            BlocksSet("sparsify-half", (0,), (naturals(),)),
        ]
        for s in sets:
            back = lineset_from_json(s.to_json())
            assert back == s

    def test_extended_distance_json(self):
        assert ExtendedDistance.finite(4).to_json() == 4
        assert INF.to_json() == "inf"
