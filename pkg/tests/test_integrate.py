"""Test integrands, quasivolumes, variance studies, and the symmetric-function
simplex maximum check."""

import math

import numpy as np
import pytest

from negdep_qmc import (
    CornerIndicator,
    Interval,
    LatinHypercube,
    MonteCarlo,
    NegProduct,
    ProductCoords,
    RngStream,
    SumCoords,
    UserFunction,
    ValidationError,
    describe_function,
    elementary_symmetric,
    is_quasimonotone_scan,
    quasivolume,
    rqmc_estimate,
    sample_batch,
    simplex_max_check,
    variance_study,
)


# ---------------------------------------------------------------------------
# Integrands


def test_declared_integrals_match_quadrature():
    rng = RngStream(3)
    pts = rng.gen.random((200_000, 3))
    for f in (ProductCoords(), SumCoords(), CornerIndicator((0.3, 0.5, 0.2)), NegProduct()):
        mc = float(np.mean(f.evaluate(pts)))
        assert mc == pytest.approx(f.integral(3), abs=0.01), describe_function(f)


def test_describe_function_labels():
    assert describe_function(ProductCoords()) == "product_coords"
    assert describe_function(SumCoords()) == "sum_coords"
    assert describe_function(CornerIndicator((0.3, 0.3))) == "corner_indicator(0.3,0.3)"
    assert describe_function(NegProduct()) == "neg_product"
    assert describe_function(UserFunction(lambda x: x[..., 0], label="slice")) == "slice"


def test_rqmc_estimate_is_unbiased():
    # Average of independent equal-weight estimates converges to the integral.
    rng = RngStream(5)
    reps, n, d = 3000, 8, 2
    f = ProductCoords()
    batch = sample_batch(LatinHypercube(), n, d, reps, rng)
    values = batch.prod(axis=2).mean(axis=1)
    se = values.std(ddof=1) / math.sqrt(reps)
    assert abs(values.mean() - f.integral(d)) < 5 * se


# ---------------------------------------------------------------------------
# Quasivolumes


def test_quasivolume_is_signed_increment_in_1d():
    f = ProductCoords()
    iv = Interval((0.2,), (0.7,))
    assert quasivolume(f, iv) == pytest.approx(0.5)


def test_quasivolume_of_product_function_factorizes():
    f = ProductCoords()
    iv = Interval((0.1, 0.3), (0.5, 0.9))
    assert quasivolume(f, iv) == pytest.approx((0.5 - 0.1) * (0.9 - 0.3))


def test_quasivolume_additivity_under_interval_split():
    f = UserFunction(lambda x: np.sin(3 * x[..., 0]) * x[..., 1] ** 2, label="wavy")
    left = Interval((0.0, 0.0), (0.4, 1.0))
    right = Interval((0.4, 0.0), (1.0, 1.0))
    whole = Interval((0.0, 0.0), (1.0, 1.0))
    assert quasivolume(f, left) + quasivolume(f, right) == pytest.approx(
        quasivolume(f, whole), abs=1e-12
    )


def test_sum_coords_quasivolumes_vanish_beyond_1d():
    f = SumCoords()
    rng = RngStream(7)
    for _ in range(20):
        a = rng.gen.random(2) * 0.5
        b = a + rng.gen.random(2) * 0.4
        assert quasivolume(f, Interval(tuple(a), tuple(b))) == pytest.approx(0.0, abs=1e-12)


def test_quasimonotone_scan_accepts_product_rejects_negated():
    ok = is_quasimonotone_scan(ProductCoords(), 2, 200, RngStream(9))
    assert ok.passes and ok.min_value >= -1e-12
    bad = is_quasimonotone_scan(NegProduct(), 2, 200, RngStream(10))
    assert not bad.passes
    assert bad.counterexample is not None
    assert quasivolume(NegProduct(), bad.counterexample) < 0


# ---------------------------------------------------------------------------
# Variance studies


def test_variance_study_reports_reduction_for_latin_hypercube():
    study = variance_study(LatinHypercube(), ProductCoords(), 32, 2, 600, RngStream(13))
    assert study.scheme == "lhs" and study.function == "product_coords"
    assert study.var_scheme < study.var_mc
    assert study.ratio == pytest.approx(study.var_scheme / study.var_mc)
    assert study.ratio < 1.0 and study.ratio_stderr > 0.0


def test_variance_study_monte_carlo_against_itself_is_near_one():
    study = variance_study(MonteCarlo(), SumCoords(), 16, 2, 800, RngStream(17))
    assert abs(study.ratio - 1.0) < 6 * study.ratio_stderr + 0.2


def test_variance_study_rejects_tiny_replication_counts():
    with pytest.raises(ValidationError):
        variance_study(LatinHypercube(), ProductCoords(), 8, 2, 10, RngStream(0))


def test_variance_study_rejects_false_quasimonotone_claim():
    lying = UserFunction(lambda x: -np.prod(x, axis=-1), quasimonotone=True, label="liar")
    with pytest.raises(ValidationError):
        variance_study(LatinHypercube(), lying, 8, 2, 100, RngStream(19))


# ---------------------------------------------------------------------------
# Elementary symmetric functions and the simplex maximum


def test_elementary_symmetric_known_values():
    assert elementary_symmetric([1.0, 2.0, 3.0], 0) == 1.0
    assert elementary_symmetric([1.0, 2.0, 3.0], 1) == 6.0
    assert elementary_symmetric([1.0, 2.0, 3.0], 2) == 11.0
    assert elementary_symmetric([1.0, 2.0, 3.0], 3) == 6.0
    with pytest.raises(ValidationError):
        elementary_symmetric([1.0], 2)


def test_elementary_symmetric_matches_brute_force():
    from itertools import combinations

    rng = RngStream(23)
    x = rng.gen.random(6)
    for t in range(7):
        brute = sum(math.prod(c) for c in combinations(x, t)) if t else 1.0
        assert elementary_symmetric(x, t) == pytest.approx(brute, rel=1e-12)


def test_simplex_max_attained_at_centroid():
    for n_vars, t, xi in [(3, 2, 1.0), (5, 3, 0.7), (8, 4, 2.0)]:
        res = simplex_max_check(n_vars, t, xi, 20_000, RngStream(n_vars * 10 + t))
        assert res.passes
        centroid = math.comb(n_vars, t) * (xi / n_vars) ** t
        assert res.centroid_value == pytest.approx(centroid)
        assert res.max_observed <= centroid * (1 + 1e-12)


def test_simplex_max_check_validates_inputs():
    with pytest.raises(ValidationError):
        simplex_max_check(4, 0, 1.0, 100, RngStream(0))
    with pytest.raises(ValidationError):
        simplex_max_check(9, 2, 1.0, 100, RngStream(0))
    with pytest.raises(ValidationError):
        simplex_max_check(4, 2, -1.0, 100, RngStream(0))
