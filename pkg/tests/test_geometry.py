"""Boxes, delta covers, box-difference splitting, and the net property."""

import math

import numpy as np
import pytest

from negdep_qmc import (
    BoxDiff,
    CornerBox0,
    CornerBox1,
    ElementaryInterval,
    Interval,
    RngStream,
    ValidationError,
    build_delta_cover,
    clip_convex_to_box,
    contains,
    contains_points,
    cover_cardinality_bound,
    describe_box,
    is_net,
    net_points,
    polygon_area,
    sample,
    split_box_difference,
    validate_delta_cover,
    volume,
    MonteCarlo,
)


# ---------------------------------------------------------------------------
# Boxes


def test_volume_of_each_box_kind():
    assert volume(CornerBox0((0.5, 0.4))) == pytest.approx(0.2)
    assert volume(CornerBox1((0.5, 0.4))) == pytest.approx(0.3)
    assert volume(Interval((0.1, 0.2), (0.6, 0.7))) == pytest.approx(0.25)
    diff = BoxDiff(CornerBox0((0.8, 0.8)), CornerBox0((0.4, 0.4)))
    assert volume(diff) == pytest.approx(0.64 - 0.16)


def test_membership_half_open_semantics():
    box = CornerBox0((0.5, 0.5))
    assert contains(box, (0.0, 0.0))
    assert not contains(box, (0.5, 0.25))
    up = CornerBox1((0.5, 0.5))
    assert contains(up, (0.5, 0.5))
    assert contains(up, (0.999, 0.5))
    assert not contains(up, (0.4999, 0.9))
    iv = Interval((0.2,), (0.8,))
    assert contains(iv, (0.2,)) and not contains(iv, (0.8,))


def test_membership_frequency_matches_volume():
    # Binomial check: fraction of uniform points inside each region tracks
    # its Lebesgue measure within 5 sigma.
    rng = RngStream(101)
    pts = sample(MonteCarlo(), 20_000, 3, rng).data
    regions = [
        CornerBox0((0.3, 0.7, 0.5)),
        CornerBox1((0.2, 0.5, 0.1)),
        Interval((0.1, 0.0, 0.4), (0.9, 0.6, 1.0)),
        BoxDiff(CornerBox0((0.9, 0.9, 0.9)), CornerBox0((0.5, 0.5, 0.5))),
    ]
    for region in regions:
        frac = float(np.mean(contains_points(region, pts)))
        v = volume(region)
        sigma = math.sqrt(v * (1 - v) / 20_000)
        assert abs(frac - v) < 5 * sigma, describe_box(region)


def test_box_validation_errors():
    with pytest.raises(ValidationError):
        CornerBox0((1.2, 0.5))
    with pytest.raises(ValidationError):
        Interval((0.5,), (0.4,))
    with pytest.raises(ValidationError):
        BoxDiff(CornerBox0((0.4,)), CornerBox0((0.6,)))
    with pytest.raises(ValidationError):
        contains_points(CornerBox0((0.5, 0.5)), np.zeros((4, 3)))


def test_describe_box_labels():
    assert describe_box(CornerBox0((0.25, 0.5))) == "[0,(0.25,0.5))"
    assert describe_box(CornerBox1((0.75,))) == "[(0.75),1)"


# ---------------------------------------------------------------------------
# Delta covers


def test_one_dimensional_cover_is_minimal_grid():
    for delta, m in [(1.0, 1), (0.5, 2), (0.3, 4), (0.25, 4), (0.1, 10), (0.07, 15)]:
        cover = build_delta_cover(1, delta)
        assert cover.cardinality() == m == math.ceil(1 / delta)
        nodes = np.sort(cover.all_points()[:, 0])
        assert np.allclose(nodes, np.arange(1, m + 1) / m)


def test_cover_brackets_random_boxes():
    rng = np.random.default_rng(7)
    for d in (1, 2, 3):
        for delta in (0.5, 0.2):
            cover = build_delta_cover(d, delta)
            check = validate_delta_cover(cover, 500, rng)
            assert check.ok, check.message
            assert check.max_gap <= delta + 1e-12


def test_cover_sandwich_brackets_exact_discrepancy():
    from negdep_qmc import PointSet, star_discrepancy_cover, star_discrepancy_exact

    rng = RngStream(11)
    for k in range(20):
        n = 4 + k
        d = 1 + (k % 2)
        ps = sample(MonteCarlo(), n, d, rng.split(k))
        delta = 0.2
        lower, upper = star_discrepancy_cover(ps, delta)
        exact = star_discrepancy_exact(ps).value
        assert lower <= exact + 1e-12
        assert exact <= lower + delta + 1e-12
        assert upper == pytest.approx(lower + delta)


def test_cover_cardinality_bound_dominates_construction_in_1d():
    for delta in (1.0, 0.5, 0.25, 0.1):
        assert build_delta_cover(1, delta).cardinality() <= cover_cardinality_bound(1, delta)


def test_cover_cardinality_bound_is_exact_rational():
    # Large d must not overflow floating point.
    big = cover_cardinality_bound(40, 0.01)
    assert isinstance(big, int) and big > 10**40


def test_cover_rejects_bad_delta():
    for delta in (0.0, -0.1, 1.5):
        with pytest.raises(ValidationError):
            build_delta_cover(2, delta)


# ---------------------------------------------------------------------------
# Box-difference splitting


def test_split_box_difference_volumes_add_up():
    diff = BoxDiff(CornerBox0((0.9, 0.8, 0.7)), CornerBox0((0.5, 0.4, 0.3)))
    for d_left in (1, 2):
        p1, p2 = split_box_difference(diff, d_left)
        assert volume(p1) + volume(p2) == pytest.approx(volume(diff))


def test_split_box_difference_pieces_are_disjoint_and_exhaustive():
    diff = BoxDiff(CornerBox0((0.9, 0.8)), CornerBox0((0.5, 0.4)))
    p1, p2 = split_box_difference(diff, 1)
    rng = RngStream(3)
    pts = sample(MonteCarlo(), 5000, 2, rng).data
    in_diff = contains_points(diff, pts)
    in1 = contains_points(p1, pts)
    in2 = contains_points(p2, pts)
    assert not np.any(in1 & in2)
    assert np.array_equal(in_diff, in1 | in2)


# ---------------------------------------------------------------------------
# Nets and elementary intervals


def test_elementary_interval_validation():
    with pytest.raises(ValidationError):
        ElementaryInterval(1, np.array([1]), np.array([0]))
    with pytest.raises(ValidationError):
        ElementaryInterval(2, np.array([1]), np.array([2]))  # k must be < b^j


def test_raw_net_has_net_property():
    for b, m, s in [(2, 3, 1), (2, 4, 2), (3, 2, 2), (5, 2, 3)]:
        assert is_net(net_points(b, m, s), b, m, s)


def test_shifted_points_lose_net_property():
    ps = net_points(2, 4, 2)
    broken = np.clip(ps.data + 0.37, 0.0, 0.999999)
    assert not is_net(broken, 2, 4, 2)


def test_uniform_points_are_a_trivial_net_only_at_t_equals_m():
    rng = RngStream(5)
    ps = sample(MonteCarlo(), 8, 2, rng)
    # t = m makes every elementary interval constraint vacuous.
    assert is_net(ps, 2, 3, 2, t=3)


# ---------------------------------------------------------------------------
# Polygon helpers


def test_polygon_area_and_clipping():
    square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    assert polygon_area(square) == pytest.approx(1.0)
    clipped = clip_convex_to_box(square, (0.25, 0.25), (0.75, 0.75))
    assert polygon_area(clipped) == pytest.approx(0.25)
    # Triangle fully outside the clip window vanishes.
    tri = [(2.0, 2.0), (3.0, 2.0), (2.5, 3.0)]
    assert polygon_area(clip_convex_to_box(tri, (0.0, 0.0), (1.0, 1.0))) == 0.0
