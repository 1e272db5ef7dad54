"""Exact star discrepancy, cover brackets, weighted variant, and budgets."""

import numpy as np
import pytest

from negdep_qmc import (
    BudgetExceededError,
    CornerBox0,
    ExplicitWeights,
    MonteCarlo,
    PointSet,
    ProductWeights,
    RngStream,
    ValidationError,
    local_discrepancy,
    net_points,
    sample,
    star_discrepancy_cover,
    star_discrepancy_exact,
    weight_of,
    weighted_star_discrepancy,
)


def centered_grid(n: int) -> PointSet:
    return PointSet(((np.arange(n) + 0.5) / n).reshape(-1, 1))


# ---------------------------------------------------------------------------
# Exact values on solvable configurations


def test_centered_one_dimensional_grid():
    for n in (1, 2, 4, 8, 16, 32):
        res = star_discrepancy_exact(centered_grid(n))
        assert res.value == pytest.approx(1 / (2 * n), abs=1e-15)


def test_single_point_discrepancy():
    # One point at x: D* = max(x, 1 - x) in 1-d (open deficiency vs closed excess).
    for x in (0.1, 0.3, 0.5, 0.9):
        res = star_discrepancy_exact(PointSet(np.array([[x]])))
        assert res.value == pytest.approx(max(x, 1 - x), abs=1e-15)


def test_anchored_grid_in_two_dimensions():
    # The n x n lattice {(i/n, j/n)} (0-based) has a point at the origin;
    # closed boxes shrunk to it give excess 1/n^2... the exact value for
    # the left-anchored lattice is known to be 2/n - 1/n^2.
    n = 4
    xs = np.arange(n) / n
    pts = np.array([(a, b) for a in xs for b in xs])
    res = star_discrepancy_exact(PointSet(pts))
    assert res.value == pytest.approx(2 / n - 1 / n**2, abs=1e-12)


def test_witness_box_attains_reported_value():
    rng = RngStream(17)
    for k in range(10):
        ps = sample(MonteCarlo(), 12, 2, rng.split(k))
        res = star_discrepancy_exact(ps)
        assert res.kind == "exact"
        assert res.witness is not None and res.witness_side in ("open", "closed")
        pts = ps.data
        y = np.asarray(res.witness)
        vol = float(np.prod(y))
        if res.witness_side == "open":
            frac = float(np.mean(np.all(pts < y, axis=1)))
        else:
            frac = float(np.mean(np.all(pts <= y, axis=1)))
        assert abs(frac - vol) == pytest.approx(res.value, abs=1e-12)


def test_permutation_and_row_order_invariance():
    rng = RngStream(23)
    ps = sample(MonteCarlo(), 10, 3, rng)
    base = star_discrepancy_exact(ps).value
    shuffled = PointSet(ps.data[::-1].copy())
    assert star_discrepancy_exact(shuffled).value == pytest.approx(base, abs=1e-15)
    swapped = PointSet(ps.data[:, [2, 0, 1]].copy())
    assert star_discrepancy_exact(swapped).value == pytest.approx(base, abs=1e-15)


def test_local_discrepancy_definition():
    ps = centered_grid(4)
    box = CornerBox0((0.5,))
    # two of four points in [0, 0.5): |2/4 - 0.5| = 0
    assert local_discrepancy(ps, box) == pytest.approx(0.0, abs=1e-15)
    box = CornerBox0((0.3,))
    assert local_discrepancy(ps, box) == pytest.approx(abs(0.25 - 0.3), abs=1e-15)


def test_exact_dominates_every_local_discrepancy():
    rng = RngStream(31)
    ps = sample(MonteCarlo(), 9, 2, rng)
    dstar = star_discrepancy_exact(ps).value
    probe = RngStream(32).gen.random((200, 2))
    for y in probe:
        assert local_discrepancy(ps, CornerBox0(tuple(y))) <= dstar + 1e-12


def test_net_low_discrepancy_beats_random():
    net = net_points(2, 6, 2)  # 64 points
    rng = RngStream(41)
    rand = sample(MonteCarlo(), 64, 2, rng)
    assert star_discrepancy_exact(net).value < star_discrepancy_exact(rand).value


# ---------------------------------------------------------------------------
# Cover bracket


def test_cover_bracket_contains_exact_value():
    rng = RngStream(47)
    for k, delta in enumerate([0.3, 0.15, 0.1]):
        ps = sample(MonteCarlo(), 10 + 3 * k, 2, rng.split(k))
        lower, upper = star_discrepancy_cover(ps, delta)
        exact = star_discrepancy_exact(ps).value
        assert lower <= exact + 1e-12 <= upper + 1e-12
        assert upper == pytest.approx(lower + delta)


def test_cover_lower_bound_improves_with_delta():
    ps = sample(MonteCarlo(), 20, 2, RngStream(53))
    exact = star_discrepancy_exact(ps).value
    gaps = []
    for delta in (0.4, 0.2, 0.1):
        lower, _ = star_discrepancy_cover(ps, delta)
        gaps.append(exact - lower)
    assert all(g >= -1e-12 for g in gaps)
    assert gaps[-1] <= gaps[0] + 1e-12


# ---------------------------------------------------------------------------
# Weighted variant


def test_weighted_reduces_to_plain_on_full_weight():
    ps = sample(MonteCarlo(), 8, 2, RngStream(59))
    # gamma = (1, 1): the full-set projection term equals plain D*, and
    # projections cannot exceed... the max includes them, so compare >=.
    w = ProductWeights((1.0, 1.0))
    plain = star_discrepancy_exact(ps).value
    weighted = weighted_star_discrepancy(ps, w)
    assert weighted >= plain - 1e-15


def test_weighted_equals_max_over_projections():
    ps = sample(MonteCarlo(), 8, 2, RngStream(61))
    w = ProductWeights((0.5, 2.0))
    d0 = star_discrepancy_exact(PointSet(ps.data[:, [0]].copy())).value
    d1 = star_discrepancy_exact(PointSet(ps.data[:, [1]].copy())).value
    d01 = star_discrepancy_exact(ps).value
    expected = max(0.5 * d0, 2.0 * d1, 1.0 * d01)
    assert weighted_star_discrepancy(ps, w) == pytest.approx(expected, abs=1e-15)


def test_explicit_weights_drive_subset_selection():
    ps = sample(MonteCarlo(), 8, 2, RngStream(67))
    table = {frozenset({0}): 3.0, frozenset({1}): 0.0, frozenset({0, 1}): 0.0}
    d0 = star_discrepancy_exact(PointSet(ps.data[:, [0]].copy())).value
    assert weighted_star_discrepancy(ps, ExplicitWeights(table)) == pytest.approx(3.0 * d0)


def test_explicit_weights_must_cover_all_subsets():
    ps = sample(MonteCarlo(), 8, 2, RngStream(71))
    with pytest.raises(ValidationError):
        weighted_star_discrepancy(ps, ExplicitWeights({frozenset({0}): 1.0}))


def test_weight_of_product_and_explicit():
    w = ProductWeights((0.5, 2.0, 1.0))
    assert weight_of(w, ()) == 1.0
    assert weight_of(w, (0, 1)) == pytest.approx(1.0)
    assert weight_of(w, (2,)) == pytest.approx(1.0)
    e = ExplicitWeights({frozenset({0}): 0.25})
    assert weight_of(e, (0,)) == 0.25
    with pytest.raises(ValidationError):
        weight_of(e, (1,))


def test_negative_weights_rejected():
    with pytest.raises(ValidationError):
        ProductWeights((-0.5, 1.0))
    with pytest.raises(ValidationError):
        ExplicitWeights({frozenset({0}): -1.0})


# ---------------------------------------------------------------------------
# Budgets


def test_exact_budget_guard_raises():
    ps = sample(MonteCarlo(), 40, 3, RngStream(73))
    with pytest.raises(BudgetExceededError):
        star_discrepancy_exact(ps, budget=1000)


def test_cover_budget_guard_raises():
    ps = sample(MonteCarlo(), 50, 2, RngStream(79))
    with pytest.raises(BudgetExceededError):
        star_discrepancy_cover(ps, 0.01, budget=10_000)
