"""Test integrands, quasivolume scans, variance-reduction studies, and the
elementary-symmetric maximization check.

The quasivolume of f over a half-open interval A = [a, b) is the alternating
sum of f over the 2^d corners, signed so that in one dimension it equals
f(b) - f(a); f is quasimonotone when every such quasivolume is nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .errors import ValidationError
from .geometry import Interval
from .samplers import MonteCarlo, RngStream, SchemeSpec, describe_scheme, sample_batch

__all__ = [
    "ProductCoords",
    "SumCoords",
    "CornerIndicator",
    "NegProduct",
    "UserFunction",
    "TestFunction",
    "describe_function",
    "rqmc_estimate",
    "quasivolume",
    "is_quasimonotone_scan",
    "QuasimonotoneScan",
    "variance_study",
    "VarianceStudy",
    "simplex_max_check",
    "SimplexMaxResult",
    "elementary_symmetric",
]


@dataclass(frozen=True)
class ProductCoords:
    """f(x) = prod_i x_i; integral 2^-d; quasimonotone and monotone."""

    quasimonotone = True
    monotone = True

    def evaluate(self, pts):
        return np.prod(pts, axis=-1)

    def integral(self, d):
        return 0.5**d


@dataclass(frozen=True)
class SumCoords:
    """f(x) = sum_i x_i; integral d/2; quasivolumes vanish for d >= 2."""

    quasimonotone = True
    monotone = True

    def evaluate(self, pts):
        return np.sum(pts, axis=-1)

    def integral(self, d):
        return d / 2


@dataclass(frozen=True)
class CornerIndicator:
    """f(x) = 1 if x >= a componentwise; integral prod(1 - a_i)."""

    a: np.ndarray
    quasimonotone = True
    monotone = True

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.a, dtype=float))
        if np.any(arr < 0) or np.any(arr > 1):
            raise ValidationError("corner must lie in [0,1]^d")
        arr.setflags(write=False)
        object.__setattr__(self, "a", arr)

    def evaluate(self, pts):
        return np.all(np.asarray(pts, dtype=float) >= self.a, axis=-1).astype(float)

    def integral(self, d):
        if d != self.a.size:
            raise ValidationError("dimension mismatch")
        return float(np.prod(1.0 - self.a))


@dataclass(frozen=True)
class NegProduct:
    """f(x) = -prod_i x_i; monotone decreasing, not quasimonotone for d >= 1."""

    quasimonotone = False
    monotone = True

    def evaluate(self, pts):
        return -np.prod(pts, axis=-1)

    def integral(self, d):
        return -(0.5**d)


@dataclass(frozen=True)
class UserFunction:
    """User-supplied integrand; fn must accept an (..., d) array vectorized.

    Declared shape flags are validated by a quasivolume scan before any
    variance study relies on them.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    quasimonotone: Optional[bool] = None
    monotone: Optional[bool] = None
    label: str = "user"

    def evaluate(self, pts):
        return np.asarray(self.fn(np.asarray(pts, dtype=float)), dtype=float)

    def integral(self, d):
        return None


TestFunction = Union[ProductCoords, SumCoords, CornerIndicator, NegProduct, UserFunction]


def describe_function(f) -> str:
    if isinstance(f, ProductCoords):
        return "product_coords"
    if isinstance(f, SumCoords):
        return "sum_coords"
    if isinstance(f, CornerIndicator):
        return "corner_indicator(" + ",".join(f"{x:g}" for x in f.a) + ")"
    if isinstance(f, NegProduct):
        return "neg_product"
    if isinstance(f, UserFunction):
        return f.label
    return type(f).__name__


def rqmc_estimate(spec: SchemeSpec, f, n: int, d: int, rng: RngStream) -> float:
    """Equal-weight estimate (1/n) sum f(p_j) from one draw of the scheme."""
    pts = sample_batch(spec, n, d, 1, rng)[0]
    return float(np.mean(f.evaluate(pts)))


# ---------------------------------------------------------------------------
# Quasivolumes


def quasivolume(f, interval: Interval) -> float:
    """Alternating corner sum of f over [a, b); equals f(b)-f(a) in 1-d.

    Corners with coordinates at b_i = 1 are evaluated, so f must accept the
    closed cube.
    """
    d = interval.d
    if d > 20:
        raise ValidationError("quasivolume corner sum limited to d <= 20")
    masks = (np.arange(2**d)[:, None] >> np.arange(d)) & 1  # 1 -> use a_j
    corners = np.where(masks == 1, interval.a, interval.b)
    signs = np.where(masks.sum(axis=1) % 2 == 0, 1.0, -1.0)
    return float(signs @ f.evaluate(corners))


@dataclass(frozen=True)
class QuasimonotoneScan:
    passes: bool
    min_value: float
    counterexample: Optional[Interval]
    checked: int


def is_quasimonotone_scan(
    f, d: int, trials: int, rng: RngStream, tol: float = 1e-12
) -> QuasimonotoneScan:
    """Scan random and dyadic intervals for a negative quasivolume.

    Returns the worst value seen and a violating interval if one was found
    (quasivolume < -tol).
    """
    g = rng.gen
    worst = math.inf
    witness = None
    checked = 0

    def consider(interval):
        nonlocal worst, witness, checked
        val = quasivolume(f, interval)
        checked += 1
        if val < worst:
            worst = val
            if val < -tol:
                witness = interval

    lo = g.random((trials, d))
    hi = g.random((trials, d))
    a, b = np.minimum(lo, hi), np.maximum(lo, hi)
    for i in range(trials):
        consider(Interval(a[i], b[i]))
    levels = np.linspace(0.0, 1.0, 5 if d <= 3 else 3)
    pairs = [(x, y) for x in levels for y in levels if x < y]
    idx = [0] * d
    while True:
        consider(
            Interval(
                [pairs[i][0] for i in idx],
                [pairs[i][1] for i in idx],
            )
        )
        for pos in range(d):
            idx[pos] += 1
            if idx[pos] < len(pairs):
                break
            idx[pos] = 0
        else:
            break
    return QuasimonotoneScan(witness is None, worst, witness, checked)


# ---------------------------------------------------------------------------
# Variance study


@dataclass(frozen=True)
class VarianceStudy:
    scheme: str
    function: str
    n: int
    d: int
    replications: int
    var_scheme: float
    var_mc: float
    ratio: float
    ratio_stderr: float


def _estimator_values(spec, f, n, d, reps, rng: RngStream) -> np.ndarray:
    vals = np.empty(reps)
    chunk = max(1, int(4_000_000 // max(1, n * d)))
    pos = 0
    child = 0
    while pos < reps:
        size = min(chunk, reps - pos)
        batch = sample_batch(spec, n, d, size, rng.split(child))
        vals[pos : pos + size] = f.evaluate(batch).mean(axis=1)
        pos += size
        child += 1
    return vals


def _var_of_sample_variance(x: np.ndarray) -> float:
    # large-sample: Var(s^2) ~ (m4 - s^4)/R
    r = x.size
    centered = x - x.mean()
    m4 = float(np.mean(centered**4))
    s2 = float(np.var(x, ddof=1))
    return max(0.0, (m4 - s2**2) / r)


def variance_study(
    spec: SchemeSpec, f, n: int, d: int, reps: int, rng: RngStream
) -> VarianceStudy:
    """Compare the scheme's estimator variance against Monte Carlo.

    Runs `reps` independent replications of each; the ratio's standard error
    comes from the delta method on two independent sample variances. Declared
    quasimonotonicity of f is validated by a quick scan first.
    """
    if reps < 30:
        raise ValidationError("variance study needs at least 30 replications")
    if getattr(f, "quasimonotone", None):
        scan = is_quasimonotone_scan(f, d, trials=64, rng=rng.split(2))
        if not scan.passes:
            raise ValidationError(
                "function declared quasimonotone but the scan found "
                f"quasivolume {scan.min_value:g} < 0"
            )
    est_a = _estimator_values(spec, f, n, d, reps, rng.split(0))
    est_m = _estimator_values(MonteCarlo(), f, n, d, reps, rng.split(1))
    var_a = float(np.var(est_a, ddof=1))
    var_m = float(np.var(est_m, ddof=1))
    if var_m == 0.0:
        raise ValidationError("Monte Carlo variance is zero; ratio undefined")
    ratio = var_a / var_m
    spread = _var_of_sample_variance(est_a) / var_m**2 + (
        var_a**2 / var_m**4
    ) * _var_of_sample_variance(est_m)
    return VarianceStudy(
        scheme=describe_scheme(spec),
        function=describe_function(f),
        n=n,
        d=d,
        replications=reps,
        var_scheme=var_a,
        var_mc=var_m,
        ratio=ratio,
        ratio_stderr=math.sqrt(spread),
    )


# ---------------------------------------------------------------------------
# Elementary symmetric polynomials and the simplex maximum


def elementary_symmetric(x, t: int) -> float:
    """e_t(x) by the stable one-pass recurrence; e_0 = 1."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if not (0 <= t <= x.size):
        raise ValidationError("need 0 <= t <= len(x)")
    e = np.zeros(t + 1)
    e[0] = 1.0
    for xi in x:
        for j in range(min(t, x.size), 0, -1):
            e[j] += xi * e[j - 1]
    return float(e[t])


def _esp_batch(x: np.ndarray, t: int) -> np.ndarray:
    """e_t per row of an (M, n) array."""
    m, n = x.shape
    e = np.zeros((m, t + 1))
    e[:, 0] = 1.0
    for i in range(n):
        for j in range(min(t, i + 1), 0, -1):
            e[:, j] += x[:, i] * e[:, j - 1]
    return e[:, t]


@dataclass(frozen=True)
class SimplexMaxResult:
    passes: bool
    n_vars: int
    t: int
    xi: float
    centroid_value: float
    max_observed: float
    trials: int


def simplex_max_check(
    n_vars: int, t: int, xi: float, trials: int, rng: RngStream, rtol: float = 1e-12
) -> SimplexMaxResult:
    """Check that e_t on the scaled simplex {x >= 0, sum x = xi} is maximized
    at the centroid, by random simplex sampling (normalized exponentials)."""
    if not (1 <= t <= n_vars):
        raise ValidationError("need 1 <= t <= n_vars")
    if n_vars > 8:
        raise ValidationError("n_vars limited to 8 at desk scale")
    if xi <= 0:
        raise ValidationError("xi must be positive")
    g = rng.gen
    e = g.exponential(1.0, size=(trials, n_vars))
    x = xi * e / e.sum(axis=1, keepdims=True)
    vals = _esp_batch(x, t)
    centroid = math.comb(n_vars, t) * (xi / n_vars) ** t
    max_obs = float(vals.max())
    return SimplexMaxResult(
        passes=max_obs <= centroid * (1.0 + rtol),
        n_vars=n_vars,
        t=t,
        xi=float(xi),
        centroid_value=centroid,
        max_observed=max_obs,
        trials=trials,
    )
