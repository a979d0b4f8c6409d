import numpy as np
import pytest

import naive
from syndetic.certificate import serialize, verify_fg
from syndetic.generators import periodic_set, random_sparse_set, striped_set
from syndetic.pipeline import (
    AffineMap2D,
    APPair,
    ColorTriple,
    ConstructionError,
    PartitionError,
    PhiSearchError,
    ScalePreconditionError,
    affine_image,
    color_classes,
    fg_construct,
    find_nontrivial_ap,
    partition_extract,
    pigeonhole_extract,
    progression_pairs,
    verified_triple,
)
from syndetic.vdw import BudgetExhaustedError
from syndetic.windows import (
    WindowSet1D,
    WindowSet2D,
    is_ps_at_scale,
    ps_scale_1d,
    ps_scale_2d,
    shifted_union_1d,
)


def members_of(s):
    return set(s.members().tolist())


class TestProgressionPairs:
    def test_full_window_keeps_every_feasible_pair(self):
        s = WindowSet1D.full(0, 40)
        box = (0, 30, -3, 4)
        got = progression_pairs(s, 1, 5, box)
        want, excluded = naive.progression_pairs(members_of(s), 0, 40, 1, 5, box)
        assert set(map(tuple, got.pairs.points().tolist())) == want
        assert got.boundary_excluded == excluded
        # with a full union, membership and feasibility coincide
        area = (box[1] - box[0]) * (box[3] - box[2])
        assert got.pairs.count + got.boundary_excluded == area

    def test_empty_set_gives_empty_pairs(self):
        s = WindowSet1D.empty(0, 40)
        got = progression_pairs(s, 2, 4, (0, 20, -2, 3))
        assert got.pairs.count == 0

    def test_striped_matches_naive(self):
        s = striped_set((0, 90), 5, 2)
        box = (0, 50, -4, 5)
        got = progression_pairs(s, 2, 8, box)
        want, excluded = naive.progression_pairs(members_of(s), 0, 90, 2, 8, box)
        assert set(map(tuple, got.pairs.points().tolist())) == want
        assert got.boundary_excluded == excluded

    def test_unreachable_box_rejected(self):
        s = WindowSet1D.full(0, 10)
        with pytest.raises(ConstructionError, match="outside the feasible"):
            progression_pairs(s, 1, 3, (500, 520, 1, 5))


class TestVerifiedTriple:
    def test_single_shift_periodic(self):
        s = WindowSet1D.full(0, 60)
        assert verified_triple(s, 10, 1, radius=1, span=2, steps=2) == ColorTriple(
            offset=0, stride=1, shift=1
        )

    def test_zero_step_takes_least_witnessing_shift(self):
        # 11 is absent, 12 present: the constant progression at 10 needs shift 2
        s = WindowSet1D.from_members(0, 30, [4, 6, 8, 10, 12, 14, 16])
        triple = verified_triple(s, 10, 0, radius=2, span=2, steps=1)
        assert triple == ColorTriple(offset=0, stride=1, shift=2)

    def test_matches_naive_scan_on_striped(self):
        s = striped_set((0, 90), 4, 2)
        pairs = progression_pairs(s, 2, 8, (0, 40, -3, 4)).pairs
        for a, d in map(tuple, pairs.points().tolist()[::7]):
            got = verified_triple(s, a, d, radius=2, span=8, steps=2)
            want = naive.verified_triple(members_of(s), 0, 90, a, d, 2, 8, 2)
            assert (got.offset, got.stride, got.shift) == want

    def test_rejects_pair_outside_pair_set(self):
        s = WindowSet1D.from_members(0, 20, [3])
        with pytest.raises(ValueError, match="not a progression pair"):
            verified_triple(s, 0, 1, radius=1, span=3, steps=1)


class TestColorClasses:
    def test_empty_pairs_give_empty_map(self):
        s = WindowSet1D.full(0, 20)
        assert color_classes(
            s, WindowSet2D.empty(0, 5, -1, 2), radius=1, span=2, steps=2
        ) == {}

    def test_classes_partition_the_pairs(self):
        s = striped_set((0, 120), 5, 2)
        pairs = progression_pairs(s, 2, 8, (0, 60, -3, 4)).pairs
        classes = color_classes(s, pairs, radius=2, span=8, steps=2)
        assert sum(c.count for c in classes.values()) == pairs.count
        union = np.zeros_like(pairs.mask)
        for cls in classes.values():
            assert cls.box == pairs.box
            assert not (union & cls.mask).any()
            union |= cls.mask
        assert np.array_equal(union, pairs.mask)

    def test_agrees_with_per_pair_recomputation(self):
        s = random_sparse_set((0, 150), 0.8, 31)
        pairs = progression_pairs(s, 2, 8, (10, 40, -2, 3)).pairs
        classes = color_classes(s, pairs, radius=2, span=8, steps=2)
        for triple, cls in classes.items():
            for a, d in map(tuple, cls.points().tolist()):
                assert verified_triple(s, a, d, radius=2, span=8, steps=2) == triple


class TestPigeonholeExtract:
    def test_single_class(self):
        cls = WindowSet2D.from_points(0, 4, 0, 4, [(1, 1), (1, 2)])
        triple = ColorTriple(0, 1, 1)
        got = pigeonhole_extract({triple: cls}, 2)
        assert got[0] == triple and got[1] == cls

    def test_empty_class_loses(self):
        full = WindowSet2D.full(0, 3, 0, 3)
        got = pigeonhole_extract(
            {
                ColorTriple(0, 1, 1): WindowSet2D.empty(0, 3, 0, 3),
                ColorTriple(1, 1, 1): full,
            },
            1,
        )
        assert got[0] == ColorTriple(1, 1, 1)

    def test_tie_breaks_to_least_triple(self):
        a = WindowSet2D.from_points(0, 3, 0, 3, [(0, 0)])
        got = pigeonhole_extract(
            {ColorTriple(2, 1, 1): a, ColorTriple(0, 1, 1): a, ColorTriple(0, 1, 2): a},
            1,
        )
        assert got[0] == ColorTriple(0, 1, 1)

    def test_no_classes_rejected(self):
        with pytest.raises(ValueError):
            pigeonhole_extract({}, 1)

    def test_score_matches_brute_force_max(self):
        s = striped_set((0, 120), 6, 2)
        pairs = progression_pairs(s, 2, 8, (0, 60, -3, 4)).pairs
        classes = color_classes(s, pairs, radius=2, span=8, steps=2)
        _, chosen, score = pigeonhole_extract(classes, 3)
        brute = {
            t: naive.ps_scale_2d(set(map(tuple, c.points().tolist())), c.box, 3)
            for t, c in classes.items()
        }
        assert score == max(brute.values())
        assert brute[[t for t, c in classes.items() if c == chosen][0]] == score

    def test_worker_count_does_not_change_result(self):
        s = striped_set((0, 120), 6, 2)
        pairs = progression_pairs(s, 2, 8, (0, 60, -3, 4)).pairs
        classes = color_classes(s, pairs, radius=2, span=8, steps=2)
        assert pigeonhole_extract(classes, 3, workers=1) == pigeonhole_extract(
            classes, 3, workers=4
        )


class TestAffineImage:
    def test_identity_on_members(self):
        m = WindowSet2D.from_points(0, 5, 0, 5, [(1, 2), (3, 4)])
        got = affine_image(m, AffineMap2D(0, 0, 1))
        assert got.points().tolist() == m.points().tolist()
        # the box always shrinks to the hull of the images
        assert got.box == (1, 4, 2, 5)

    def test_identity_exact_when_members_touch_the_box(self):
        m = WindowSet2D.from_points(0, 5, 0, 5, [(0, 0), (4, 4)])
        assert affine_image(m, AffineMap2D(0, 0, 1)) == m

    def test_single_point(self):
        m = WindowSet2D.from_points(0, 3, 0, 3, [(1, 2)])
        got = affine_image(m, AffineMap2D(shear=3, shift=4, scale=5))
        assert [tuple(p) for p in got.points().tolist()] == [(11, 10)]

    def test_injective_on_random_sets(self):
        rng = np.random.default_rng(77)
        for _ in range(25):
            mask = rng.random((7, 7)) < 0.5
            m = WindowSet2D(-3, 4, -3, 4, mask)
            amap = AffineMap2D(
                shear=int(rng.integers(-5, 6)),
                shift=int(rng.integers(-5, 6)),
                scale=int(rng.choice([-5, -3, -1, 1, 2, 4])),
            )
            assert affine_image(m, amap).count == m.count

    def test_zero_scale_rejected(self):
        with pytest.raises(ValueError):
            AffineMap2D(1, 1, 0)

    def test_empty_set_keeps_transformed_hull(self):
        m = WindowSet2D.empty(0, 3, 0, 3)
        got = affine_image(m, AffineMap2D(1, 0, 2))
        assert got.is_empty()
        assert got.box == (0, 5, 0, 5)

    def test_unit_scale_orderings_match_brute_force(self):
        # scale values are only ever asserted after recomputation; check the
        # implementation agrees with the naive path on both sides of a pair
        rng = np.random.default_rng(123)
        for _ in range(10):
            m1 = WindowSet2D(0, 6, 0, 6, rng.random((6, 6)) < 0.6)
            m2 = WindowSet2D(0, 6, 0, 6, rng.random((6, 6)) < 0.6)
            amap = AffineMap2D(
                shear=int(rng.integers(-2, 3)),
                shift=int(rng.integers(-3, 4)),
                scale=int(rng.choice([-1, 1])),
            )
            got = [ps_scale_2d(affine_image(m, amap), 2) for m in (m1, m2)]
            want = [
                naive.ps_scale_2d(
                    set(map(tuple, affine_image(m, amap).points().tolist())),
                    affine_image(m, amap).box,
                    2,
                )
                for m in (m1, m2)
            ]
            assert got == want


class TestFgConstruct:
    def test_full_window_tiny_case(self):
        s = WindowSet1D.full(0, 50)
        cert = fg_construct(s, 1, 1)
        pts = cert.ap_pairs.points()
        assert pts.shape[0] > 0
        for a, d in map(tuple, pts.tolist()):
            assert s.contains(a) and s.contains(a + d)

    def test_striped_certificate_verifies(self):
        s = striped_set((0, 300), 5, 2)
        cert = fg_construct(s, 2, 2)
        assert verify_fg(cert, s).passed

    def test_reported_output_scale_is_recomputable(self):
        s = striped_set((0, 200), 4, 2)
        cert = fg_construct(s, 2, 2)
        assert ps_scale_2d(cert.ap_pairs, cert.radius_2d) == cert.length_out

    def test_membership_guarantee_holds_pointwise(self):
        s = periodic_set((0, 400), 5, [0, 2, 3])
        cert = fg_construct(s, 2, 2)
        pts = cert.ap_pairs.points()
        for a, d in map(tuple, pts.tolist()):
            for i in range(cert.steps + 1):
                assert s.contains(a + i * d)

    def test_deterministic_certificates(self):
        s = striped_set((0, 250), 5, 2)
        assert serialize(fg_construct(s, 2, 2)) == serialize(fg_construct(s, 2, 2))

    def test_worker_count_does_not_change_certificate(self):
        s = striped_set((0, 250), 5, 2)
        assert fg_construct(s, 2, 2, workers=1) == fg_construct(s, 2, 2, workers=3)

    def test_not_piecewise_syndetic_rejected(self):
        s = WindowSet1D.empty(0, 100)
        with pytest.raises(ScalePreconditionError):
            fg_construct(s, 2, 2)

    def test_min_length_enforced(self):
        s = WindowSet1D.from_members(0, 100, [50])
        with pytest.raises(ScalePreconditionError) as err:
            fg_construct(s, 1, 1, min_length=10)
        assert err.value.required == 10

    def test_budget_exhaustion_surfaces(self):
        s = striped_set((0, 200), 5, 2)
        with pytest.raises(BudgetExhaustedError):
            fg_construct(s, 2, 2, budget=3)

    def test_explicit_box_respected(self):
        s = striped_set((0, 300), 5, 2)
        cert = fg_construct(s, 2, 2, box=(10, 60, -2, 3))
        assert cert.pair_box == (10, 60, -2, 3)
        assert verify_fg(cert, s).passed


class TestFindNontrivialAP:
    def test_multiples_of_three(self):
        s = periodic_set((0, 100), 3, [0])
        assert find_nontrivial_ap(s, 3, 1) == APPair(start=0, step=3)

    def test_full_window_least_pair(self):
        s = WindowSet1D.full(5, 25)
        assert find_nontrivial_ap(s, 1, 1) == APPair(start=5, step=1)

    def test_returned_pair_always_verifies(self):
        for seed in range(8):
            s = random_sparse_set((0, 300), 0.9, seed)
            if ps_scale_1d(s, 2) < 9:
                continue
            pair = find_nontrivial_ap(s, 2, 2)
            assert pair.step != 0
            for i in range(3):
                assert s.contains(pair.start + i * pair.step)

    def test_scale_precondition_names_required_length(self):
        s = periodic_set((0, 100), 3, [0])
        with pytest.raises(ScalePreconditionError) as err:
            find_nontrivial_ap(s, 1, 1)
        assert err.value.required == 2
        assert "2" in str(err.value)


class TestPartitionExtract:
    def test_single_cell_wins_with_own_scale(self):
        s = striped_set((0, 150), 5, 2)
        got = partition_extract(s, [s], 2)
        assert got.index == 0
        assert got.scale.length == ps_scale_1d(s, got.scale.radius)
        assert is_ps_at_scale(s, got.scale) is not None

    def test_even_odd_split_of_striped_set(self):
        s = striped_set((0, 200), 6, 2)
        members = s.members().tolist()
        evens = WindowSet1D.from_members(0, 200, [m for m in members if m % 2 == 0])
        odds = WindowSet1D.from_members(0, 200, [m for m in members if m % 2 == 1])
        got = partition_extract(s, [evens, odds], 2, gap_budget=4)
        cells = [evens, odds]
        brute = [
            naive.ps_scale_1d(set(c.members().tolist()), 0, 200, 8) for c in cells
        ]
        assert got.scores == tuple(brute)
        assert got.index == max(range(2), key=lambda i: (brute[i], -i))
        assert is_ps_at_scale(cells[got.index], got.scale) is not None

    def test_scores_match_independent_recomputation(self):
        s = periodic_set((0, 240), 4, [0, 1, 2])
        members = s.members().tolist()
        cells = [
            WindowSet1D.from_members(0, 240, [m for m in members if m % 3 == r])
            for r in range(3)
        ]
        got = partition_extract(s, cells, 2, gap_budget=3)
        brute = tuple(
            naive.ps_scale_1d(set(c.members().tolist()), 0, 240, 6) for c in cells
        )
        assert got.scores == brute

    def test_witness_reverifies_on_named_cell(self):
        s = striped_set((0, 180), 4, 2)
        members = s.members().tolist()
        cells = [
            WindowSet1D.from_members(0, 180, [m for m in members if m % 4 == r])
            for r in range(4)
        ]
        got = partition_extract(s, cells, 2)
        assert is_ps_at_scale(cells[got.index], got.scale) is not None

    def test_rejects_overlapping_cells(self):
        s = WindowSet1D.from_members(0, 10, [1, 2, 3])
        a = WindowSet1D.from_members(0, 10, [1, 2])
        b = WindowSet1D.from_members(0, 10, [2, 3])
        with pytest.raises(PartitionError):
            partition_extract(s, [a, b], 1)

    def test_rejects_incomplete_cover(self):
        s = WindowSet1D.from_members(0, 10, [1, 2, 3])
        a = WindowSet1D.from_members(0, 10, [1])
        with pytest.raises(PartitionError):
            partition_extract(s, [a], 1)

    def test_rejects_foreign_points(self):
        s = WindowSet1D.from_members(0, 10, [1, 2])
        a = WindowSet1D.from_members(0, 10, [1, 2, 5])
        with pytest.raises(PartitionError):
            partition_extract(s, [a], 1)
