"""Certification of negative-dependence properties of sampling schemes.

Empirical testers estimate joint event probabilities over many independent
replications and compare them against product reference values with a Wilson
confidence interval, returning a three-valued verdict: "violated" only when
lhs - ci > rhs, "holds" only when lhs + ci <= rhs, else "inconclusive".
Schemes with closed-form two-point laws (the min-copula pair, the four-slot
pair, and the swap pair) are dispatched to exact oracles with a zero-width
interval. Exact anchored-box oracles for stratified-permutation sampling,
generalized stratified sampling, and small rank-1 lattices live here too.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy.stats import norm

from .errors import ValidationError
from .geometry import (
    CornerBox0,
    CornerBox1,
    Interval,
    contains_points,
    describe_box,
    volume,
)
from .integrate import elementary_symmetric
from .samplers import (
    _FOURSLOT_TABLE,
    FourSlot,
    MinCopula,
    RngStream,
    SchemeSpec,
    StrataSpec,
    SwapScheme,
    describe_scheme,
    is_prime,
    sample_batch,
    strata_count,
    stratum_corner_overlap,
)

__all__ = [
    "DependenceReport",
    "FactorizationCheck",
    "CiNqdResult",
    "REPORT_CSV_COLUMNS",
    "FACTOR_CSV_COLUMNS",
    "wilson_interval",
    "check_upper_nd",
    "check_lower_nd",
    "check_pairwise_nd",
    "check_conditional_nqd",
    "check_ci_nqd",
    "lhs_anchored_prob_exact",
    "gss_anchored_prob_exact",
    "mixed_anchored_prob_exact",
    "rsj_small_prob",
    "corner_cells",
    "min_copula_cdf",
    "min_copula_rect_prob",
    "analytic_pair_prob",
    "falling_factorial",
    "DEFAULT_CONFIDENCE",
]

DEFAULT_CONFIDENCE = 0.99
_MIN_CONDITION_HITS = 100
_CHUNK_SCALARS = 4_000_000


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class DependenceReport:
    """Outcome of one dependence test.

    verdict is "violated" only if lhs - ci_halfwidth > rhs and "holds" only
    if lhs + ci_halfwidth <= rhs; anything else is "inconclusive". For exact
    oracles ci_halfwidth is 0 and replications is 0.
    """

    notion: str
    scheme: str
    n: int
    d: int
    event: str
    lhs: float
    rhs: float
    ci_halfwidth: float
    verdict: str
    replications: int
    gamma: float = 1.0
    confidence: float = DEFAULT_CONFIDENCE
    method: str = "empirical"

    def to_json_dict(self) -> dict:
        return {
            "notion": self.notion,
            "scheme": self.scheme,
            "n": self.n,
            "d": self.d,
            "event": self.event,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ci_halfwidth": self.ci_halfwidth,
            "verdict": self.verdict,
            "replications": self.replications,
            "gamma": self.gamma,
            "confidence": self.confidence,
            "method": self.method,
        }

    def to_csv_row(self) -> list:
        return [
            self.notion,
            self.scheme,
            self.n,
            self.d,
            self.event,
            self.lhs,
            self.rhs,
            self.ci_halfwidth,
            self.verdict,
            self.replications,
            self.gamma,
            self.confidence,
            self.method,
        ]


REPORT_CSV_COLUMNS = (
    "notion",
    "scheme",
    "n",
    "d",
    "event",
    "lhs",
    "rhs",
    "ci_halfwidth",
    "verdict",
    "replications",
    "gamma",
    "confidence",
    "method",
)


@dataclass(frozen=True)
class FactorizationCheck:
    """One cross-coordinate product-factorization probe (a necessary condition
    for independence of per-coordinate point pairs, not a proof of it)."""

    coord_i: int
    coord_j: int
    q: float
    r: float
    s: float
    t2: float
    joint: float
    product: float
    deviation: float
    halfwidth: float
    consistent: bool

    def to_csv_row(self) -> list:
        return [
            self.coord_i,
            self.coord_j,
            self.q,
            self.r,
            self.s,
            self.t2,
            self.joint,
            self.product,
            self.deviation,
            self.halfwidth,
            self.consistent,
        ]


FACTOR_CSV_COLUMNS = (
    "coord_i",
    "coord_j",
    "q",
    "r",
    "s",
    "t2",
    "joint",
    "product",
    "deviation",
    "halfwidth",
    "consistent",
)


@dataclass(frozen=True)
class CiNqdResult:
    """Composite result of the coordinatewise-independent NQD test: the
    per-coordinate quadrant report plus factorization probes. `partial` is
    always true because finite probes cannot certify full independence."""

    primary: DependenceReport
    factorization: tuple
    partial: bool = True


# ---------------------------------------------------------------------------
# Wilson intervals and verdicts


def wilson_interval(successes: int, trials: int, confidence: float = DEFAULT_CONFIDENCE):
    """Wilson score interval for a binomial proportion; returns (lo, hi)."""
    if trials < 1:
        raise ValidationError("wilson interval needs at least one trial")
    if not (0.0 < confidence < 1.0):
        raise ValidationError("confidence must lie in (0, 1)")
    z = float(norm.ppf(0.5 * (1.0 + confidence)))
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    # the score bounds are exactly 0 (resp. 1) at the sample extremes; pin
    # them so rounding residue cannot push an endpoint past a zero oracle
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return lo, hi


def _halfwidth(successes: int, trials: int, confidence: float) -> float:
    # symmetric conservative halfwidth: the larger one-sided Wilson excursion
    lo, hi = wilson_interval(successes, trials, confidence)
    phat = successes / trials
    return max(phat - lo, hi - phat)


def _verdict(lhs: float, ci: float, rhs: float) -> str:
    if lhs - ci > rhs:
        return "violated"
    if lhs + ci <= rhs:
        return "holds"
    return "inconclusive"


# ---------------------------------------------------------------------------
# Replicated event counting


def _count_events(spec, n, d, reps, rng: RngStream, event_fn, n_events, threads=1):
    """Sum event indicator counts over `reps` scheme draws, in chunks.

    event_fn maps a (chunk, n, d) batch to a tuple of boolean (chunk,) arrays.
    Chunk boundaries and per-chunk streams depend only on the chunk index, so
    totals are identical for any thread count.
    """
    if reps < 1:
        raise ValidationError("need at least one replication")
    chunk = max(1, _CHUNK_SCALARS // max(1, n * d))
    tasks = []
    pos = 0
    while pos < reps:
        size = min(chunk, reps - pos)
        tasks.append((len(tasks), size))
        pos += size

    def run(task):
        idx, size = task
        batch = sample_batch(spec, n, d, size, rng.split(idx))
        events = event_fn(batch)
        return [int(np.sum(e)) for e in events]

    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, tasks))
    else:
        parts = [run(t) for t in tasks]
    totals = [0] * n_events
    for part in parts:
        for i, v in enumerate(part):
            totals[i] += v
    return totals


# ---------------------------------------------------------------------------
# Exact two-point laws (min-copula, four-slot, swap)


def min_copula_cdf(x: float, y: float) -> float:
    """Joint CDF of the dependent uniform pair: min(x, y, (x^2 + y^2)/2)."""
    return min(x, y, 0.5 * (x * x + y * y))


def min_copula_rect_prob(u, which: str) -> float:
    """Orthant probabilities of the min-copula pair at anchor u = (u1, u2).

    "lower" is P(p1 < u1, p2 < u2) = F(u1, u2); "upper" is
    P(p1 >= u1, p2 >= u2) = 1 - F(u1, 1) - F(1, u2) + F(u1, u2).
    """
    u1, u2 = float(u[0]), float(u[1])
    if not (0.0 <= u1 <= 1.0 and 0.0 <= u2 <= 1.0):
        raise ValidationError("anchor must lie in [0,1]^2")
    if which == "lower":
        return min_copula_cdf(u1, u2)
    if which == "upper":
        return 1.0 - min_copula_cdf(u1, 1.0) - min_copula_cdf(1.0, u2) + min_copula_cdf(u1, u2)
    raise ValidationError('which must be "lower" or "upper"')


def _overlap(a, b) -> float:
    return max(0.0, min(a[1], b[1]) - max(a[0], b[0]))


def _rect_axes(box, d: int):
    """Per-axis (lo, hi) ranges for plain rectangular boxes, else None."""
    if box is None:
        return [(0.0, 1.0)] * d
    if getattr(box, "d", None) != d:
        return None
    if isinstance(box, CornerBox0):
        return [(0.0, float(u)) for u in box.upper]
    if isinstance(box, CornerBox1):
        return [(float(lo), 1.0) for lo in box.lower]
    if isinstance(box, Interval):
        return [(float(a), float(b)) for a, b in zip(box.a, box.b)]
    return None


_SLOT_X = [(0.0, 0.5), (0.5, 1.0), (0.0, 0.5), (0.5, 1.0)]
_SLOT_Y = [(0.0, 0.5), (0.0, 0.5), (0.5, 1.0), (0.5, 1.0)]


def _fourslot_weights(rect) -> np.ndarray:
    # P(point in rect | slot i) = area(rect intersect slot_i) / (1/4)
    return np.array(
        [4.0 * _overlap(rect[0], _SLOT_X[i]) * _overlap(rect[1], _SLOT_Y[i]) for i in range(4)]
    )


def _fourslot_pair(rect1, rect2) -> float:
    w1 = _fourslot_weights(rect1)
    w2 = _fourslot_weights(rect2)
    return float(sum(p * w1[i] * w2[j] for (i, j), p in _FOURSLOT_TABLE.items()))


def _swap_pair(rect1, rect2) -> float:
    # p1 = (X, Y), p2 = (Y, X): X must fall in rect1_x intersect rect2_y, Y in rect1_y intersect rect2_x
    return _overlap(rect1[0], rect2[1]) * _overlap(rect1[1], rect2[0])


def _mincopula_pair(rect1, rect2) -> float:
    a1, b1 = rect1[0]
    a2, b2 = rect2[0]
    return (
        min_copula_cdf(b1, b2)
        - min_copula_cdf(a1, b2)
        - min_copula_cdf(b1, a2)
        + min_copula_cdf(a1, a2)
    )


def _analytic_dim(spec) -> Optional[int]:
    if isinstance(spec, MinCopula):
        return 1
    if isinstance(spec, (FourSlot, SwapScheme)):
        return 2
    return None


def analytic_pair_prob(spec, box1, box2) -> float:
    """Exact P(p1 in box1, p2 in box2) for the analytic two-point schemes.

    box arguments may be CornerBox0, CornerBox1, or Interval of the scheme's
    dimension (1 for the min-copula pair, 2 for four-slot and swap); None
    means the full cube.
    """
    d = _analytic_dim(spec)
    if d is None:
        raise ValidationError(f"{describe_scheme(spec)} has no closed-form two-point law here")
    r1 = _rect_axes(box1, d)
    r2 = _rect_axes(box2, d)
    if r1 is None or r2 is None:
        raise ValidationError("analytic pair probabilities need rectangular boxes")
    if isinstance(spec, MinCopula):
        return _mincopula_pair(r1, r2)
    if isinstance(spec, FourSlot):
        return _fourslot_pair(r1, r2)
    return _swap_pair(r1, r2)


def _analytic_joint_in(spec, box, t: int, complement: bool) -> float:
    """Exact P(first t points all in box) or all outside it, for n = 2 pairs."""
    d = _analytic_dim(spec)
    vol = volume(box)
    if t == 1:
        return (1.0 - vol) if complement else vol
    both = analytic_pair_prob(spec, box, box)
    if complement:
        # inclusion-exclusion with uniform marginals
        return 1.0 - 2.0 * vol + both
    return both


def _is_analytic(spec) -> bool:
    return _analytic_dim(spec) is not None


def _check_analytic_shape(spec, n: int, d: int) -> None:
    ad = _analytic_dim(spec)
    if n != 2 or d != ad:
        raise ValidationError(
            f"{describe_scheme(spec)} is a two-point scheme in dimension {ad}; got n={n}, d={d}"
        )


# ---------------------------------------------------------------------------
# Joint orthant testers


def _report(notion, spec, n, d, event, lhs, rhs, ci, reps, gamma, conf, method):
    return DependenceReport(
        notion=notion,
        scheme=describe_scheme(spec),
        n=n,
        d=d,
        event=event,
        lhs=float(lhs),
        rhs=float(rhs),
        ci_halfwidth=float(ci),
        verdict=_verdict(lhs, ci, rhs),
        replications=reps,
        gamma=gamma,
        confidence=conf,
        method=method,
    )


def _test_joint_nd(spec, n, d, box, t, reps, rng, gamma, confidence, threads, complement):
    if not (1 <= t <= n):
        raise ValidationError("need 1 <= t <= n")
    if box.d != d:
        raise ValidationError("box dimension must equal d")
    if gamma <= 0:
        raise ValidationError("gamma must be positive")
    vol = volume(box)
    notion = "lower_nd" if complement else "upper_nd"
    marginal = (1.0 - vol) if complement else vol
    rhs = gamma * marginal**t
    side = "outside" if complement else "in"
    event = f"points 1..{t} all {side} {describe_box(box)}"
    if _is_analytic(spec) and _rect_axes(box, d) is not None:
        _check_analytic_shape(spec, n, d)
        lhs = _analytic_joint_in(spec, box, t, complement)
        return _report(notion, spec, n, d, event, lhs, rhs, 0.0, 0, gamma, confidence, "exact")

    def events(batch):
        inside = contains_points(box, batch[:, :t, :])
        hit = ~inside if complement else inside
        return (np.all(hit, axis=1),)

    (count,) = _count_events(spec, n, d, reps, rng, events, 1, threads)
    lhs = count / reps
    ci = _halfwidth(count, reps, confidence)
    return _report(notion, spec, n, d, event, lhs, rhs, ci, reps, gamma, confidence, "empirical")


def check_upper_nd(
    spec: SchemeSpec,
    n: int,
    d: int,
    box,
    t: int,
    reps: int,
    rng: RngStream,
    gamma: float = 1.0,
    confidence: float = DEFAULT_CONFIDENCE,
    threads: int = 1,
) -> DependenceReport:
    """Test P(points 1..t all in box) <= gamma * vol(box)^t.

    Exchangeability of the schemes makes the first t rows representative of
    any t rows. Analytic two-point schemes are evaluated exactly.
    """
    return _test_joint_nd(spec, n, d, box, t, reps, rng, gamma, confidence, threads, False)


def check_lower_nd(
    spec: SchemeSpec,
    n: int,
    d: int,
    box,
    t: int,
    reps: int,
    rng: RngStream,
    gamma: float = 1.0,
    confidence: float = DEFAULT_CONFIDENCE,
    threads: int = 1,
) -> DependenceReport:
    """Test P(points 1..t all outside box) <= gamma * (1 - vol(box))^t."""
    return _test_joint_nd(spec, n, d, box, t, reps, rng, gamma, confidence, threads, True)


def check_pairwise_nd(
    spec: SchemeSpec,
    n: int,
    d: int,
    q_box: CornerBox1,
    r_box: CornerBox1,
    reps: int,
    rng: RngStream,
    confidence: float = DEFAULT_CONFIDENCE,
    threads: int = 1,
):
    """Test the two-point inequality P(p1 in Q, p2 in R) <= vol(Q) vol(R).

    Q and R are boxes anchored at the upper corner. Returns a pair of
    reports: the given upper-corner boxes, and the complementary test on the
    origin-anchored boxes [0, Q.lower) and [0, R.lower), which is reported
    alongside. n must be at least 2; points 1 and 2 are used.
    """
    if n < 2:
        raise ValidationError("pairwise tests need n >= 2")
    if not isinstance(q_box, CornerBox1) or not isinstance(r_box, CornerBox1):
        raise ValidationError("pairwise boxes must be anchored at the upper corner")
    if q_box.d != d or r_box.d != d:
        raise ValidationError("box dimension must equal d")
    q0 = CornerBox0(q_box.lower)
    r0 = CornerBox0(r_box.lower)
    rhs1 = volume(q_box) * volume(r_box)
    rhs0 = volume(q0) * volume(r0)
    ev1 = f"p1 in {describe_box(q_box)}, p2 in {describe_box(r_box)}"
    ev0 = f"p1 in {describe_box(q0)}, p2 in {describe_box(r0)}"
    if _is_analytic(spec):
        _check_analytic_shape(spec, n, d)
        lhs1 = analytic_pair_prob(spec, q_box, r_box)
        lhs0 = analytic_pair_prob(spec, q0, r0)
        return (
            _report("pairwise_nd", spec, n, d, ev1, lhs1, rhs1, 0.0, 0, 1.0, confidence, "exact"),
            _report("pairwise_nd", spec, n, d, ev0, lhs0, rhs0, 0.0, 0, 1.0, confidence, "exact"),
        )

    def events(batch):
        p1, p2 = batch[:, 0, :], batch[:, 1, :]
        e1 = contains_points(q_box, p1) & contains_points(r_box, p2)
        e0 = contains_points(q0, p1) & contains_points(r0, p2)
        return (e1, e0)

    c1, c0 = _count_events(spec, n, d, reps, rng, events, 2, threads)
    rep1 = _report(
        "pairwise_nd", spec, n, d, ev1, c1 / reps, rhs1,
        _halfwidth(c1, reps, confidence), reps, 1.0, confidence, "empirical",
    )
    rep0 = _report(
        "pairwise_nd", spec, n, d, ev0, c0 / reps, rhs0,
        _halfwidth(c0, reps, confidence), reps, 1.0, confidence, "empirical",
    )
    return rep1, rep0


# ---------------------------------------------------------------------------
# Conditional and coordinatewise NQD


def _conditional_rects(d, i, a_box, b_box, alpha, beta):
    """Rectangles (per point) for conditioning, joint, and marginal events."""
    axes_a = _rect_axes(a_box, i - 1) if i > 1 else []
    axes_b = _rect_axes(b_box, i - 1) if i > 1 else []
    if axes_a is None or axes_b is None:
        raise ValidationError("conditioning sets must be rectangular boxes")
    full = [(0.0, 1.0)] * (d - i)
    cond1 = axes_a + [(0.0, 1.0)] + full
    cond2 = axes_b + [(0.0, 1.0)] + full
    thr1 = axes_a + [(alpha, 1.0)] + full
    thr2 = axes_b + [(beta, 1.0)] + full
    return cond1, cond2, thr1, thr2


def check_conditional_nqd(
    spec: SchemeSpec,
    n: int,
    d: int,
    i: int,
    a_box,
    b_box,
    alpha: float,
    beta: float,
    reps: int,
    rng: RngStream,
    confidence: float = DEFAULT_CONFIDENCE,
    threads: int = 1,
    min_hits: int = _MIN_CONDITION_HITS,
) -> DependenceReport:
    """Conditional quadrant test on coordinate i (1-based).

    Conditioning on p1's first i-1 coordinates in a_box and p2's in b_box,
    tests P(p1_i >= alpha, p2_i >= beta | cond) <= P(p1_i >= alpha | cond)
    * P(p2_i >= beta | cond). i = 1 runs the unconditional per-coordinate
    test (a_box and b_box must be None). Empirical runs with fewer than
    `min_hits` conditioning hits return "inconclusive". The reported interval
    is a conservative first-order halfwidth on lhs - rhs: the joint's Wilson
    halfwidth plus each marginal estimate times the other's halfwidth.
    """
    if n < 2:
        raise ValidationError("conditional tests need n >= 2")
    if not (1 <= i <= d):
        raise ValidationError("coordinate index i must satisfy 1 <= i <= d")
    if i == 1 and (a_box is not None or b_box is not None):
        raise ValidationError("i = 1 is unconditional; conditioning boxes must be None")
    if i > 1:
        for name, box in (("a_box", a_box), ("b_box", b_box)):
            if box is not None and box.d != i - 1:
                raise ValidationError(f"{name} must live in dimension i-1 = {i - 1}")
    if not (0.0 <= alpha < 1.0 and 0.0 <= beta < 1.0):
        raise ValidationError("thresholds must lie in [0, 1)")
    cond_desc = "unconditioned" if i == 1 else (
        f"p1[1:{i - 1}] in {describe_box(a_box) if a_box is not None else 'full'}, "
        f"p2[1:{i - 1}] in {describe_box(b_box) if b_box is not None else 'full'}"
    )
    event = f"coord {i}: p1 >= {alpha:g} and p2 >= {beta:g} | {cond_desc}"

    if _is_analytic(spec):
        _check_analytic_shape(spec, n, d)
        c1, c2, t1, t2 = _conditional_rects(d, i, a_box, b_box, alpha, beta)
        pair = {
            MinCopula: _mincopula_pair,
            FourSlot: _fourslot_pair,
            SwapScheme: _swap_pair,
        }[type(spec)]
        cond = pair(c1, c2)
        if cond <= 0.0:
            raise ValidationError("conditioning event has probability zero")
        lhs = pair(t1, t2) / cond
        rhs = (pair(t1, c2) / cond) * (pair(c1, t2) / cond)
        return _report(
            "conditional_nqd", spec, n, d, event, lhs, rhs, 0.0, 0, 1.0, confidence, "exact"
        )

    def events(batch):
        p1, p2 = batch[:, 0, :], batch[:, 1, :]
        if i == 1:
            cond = np.ones(batch.shape[0], dtype=bool)
        else:
            in_a = (
                contains_points(a_box, p1[:, : i - 1])
                if a_box is not None
                else np.ones(batch.shape[0], dtype=bool)
            )
            in_b = (
                contains_points(b_box, p2[:, : i - 1])
                if b_box is not None
                else np.ones(batch.shape[0], dtype=bool)
            )
            cond = in_a & in_b
        h1 = p1[:, i - 1] >= alpha
        h2 = p2[:, i - 1] >= beta
        return (cond, cond & h1 & h2, cond & h1, cond & h2)

    hits, joint, m1, m2 = _count_events(spec, n, d, reps, rng, events, 4, threads)
    if hits < max(1, min_hits):
        return DependenceReport(
            notion="conditional_nqd",
            scheme=describe_scheme(spec),
            n=n,
            d=d,
            event=event + f" [only {hits} conditioning hits]",
            lhs=0.0,
            rhs=0.0,
            ci_halfwidth=1.0,
            verdict="inconclusive",
            replications=reps,
            gamma=1.0,
            confidence=confidence,
            method="empirical",
        )
    lhs = joint / hits
    p1hat = m1 / hits
    p2hat = m2 / hits
    rhs = p1hat * p2hat
    ci = (
        _halfwidth(joint, hits, confidence)
        + p1hat * _halfwidth(m2, hits, confidence)
        + p2hat * _halfwidth(m1, hits, confidence)
    )
    return _report(
        "conditional_nqd", spec, n, d, event + f" [{hits} hits]",
        lhs, rhs, ci, reps, 1.0, confidence, "empirical",
    )


def check_ci_nqd(
    spec: SchemeSpec,
    n: int,
    d: int,
    i: int,
    q: float,
    r: float,
    reps: int,
    rng: RngStream,
    confidence: float = DEFAULT_CONFIDENCE,
    threads: int = 1,
    factor_grid: Sequence[float] = (0.25, 0.5, 0.75),
) -> CiNqdResult:
    """Per-coordinate quadrant test plus cross-coordinate factorization probes.

    Primary inequality: P(p1_i >= q, p2_i >= r) <= (1-q)(1-r), the reference
    being exact by uniform marginals. For every other coordinate j and each
    level g in factor_grid, the probe compares P(p1_i >= q, p2_i >= r,
    p1_j >= g, p2_j >= g) against the product of the two per-coordinate pair
    probabilities, with a conservative first-order halfwidth. Probes are a
    necessary condition for cross-coordinate independence only, so the result
    is flagged partial.
    """
    if n < 2:
        raise ValidationError("pair tests need n >= 2")
    if not (1 <= i <= d):
        raise ValidationError("coordinate index i must satisfy 1 <= i <= d")
    if not (0.0 <= q < 1.0 and 0.0 <= r < 1.0):
        raise ValidationError("thresholds must lie in [0, 1)")
    rhs = (1.0 - q) * (1.0 - r)
    event = f"coord {i}: p1 >= {q:g} and p2 >= {r:g}"
    others = [j for j in range(1, d + 1) if j != i]
    probes = [(j, float(g)) for j in others for g in factor_grid]

    if _is_analytic(spec):
        _check_analytic_shape(spec, n, d)

        def rect(thresholds):
            # thresholds: dict coord (1-based) -> lower threshold
            return [(thresholds.get(k, 0.0), 1.0) for k in range(1, d + 1)]

        pair = {
            MinCopula: _mincopula_pair,
            FourSlot: _fourslot_pair,
            SwapScheme: _swap_pair,
        }[type(spec)]
        lhs = pair(rect({i: q}), rect({i: r}))
        primary = _report(
            "ci_nqd", spec, n, d, event, lhs, rhs, 0.0, 0, 1.0, confidence, "exact"
        )
        checks = []
        for j, g in probes:
            joint = pair(rect({i: q, j: g}), rect({i: r, j: g}))
            pj = pair(rect({j: g}), rect({j: g}))
            dev = joint - lhs * pj
            checks.append(
                FactorizationCheck(i, j, q, r, g, g, joint, lhs * pj, dev, 0.0, abs(dev) <= 1e-15)
            )
        return CiNqdResult(primary, tuple(checks))

    def events(batch):
        p1, p2 = batch[:, 0, :], batch[:, 1, :]
        base = (p1[:, i - 1] >= q) & (p2[:, i - 1] >= r)
        out = [base]
        for j, g in probes:
            pairj = (p1[:, j - 1] >= g) & (p2[:, j - 1] >= g)
            out.append(base & pairj)
            out.append(pairj)
        return tuple(out)

    counts = _count_events(spec, n, d, reps, rng, events, 1 + 2 * len(probes), threads)
    base_count = counts[0]
    lhs = base_count / reps
    primary = _report(
        "ci_nqd", spec, n, d, event, lhs, rhs,
        _halfwidth(base_count, reps, confidence), reps, 1.0, confidence, "empirical",
    )
    checks = []
    hw_i = _halfwidth(base_count, reps, confidence)
    for k, (j, g) in enumerate(probes):
        joint_c = counts[1 + 2 * k]
        pj_c = counts[2 + 2 * k]
        joint = joint_c / reps
        pj = pj_c / reps
        product = lhs * pj
        dev = joint - product
        hw = (
            _halfwidth(joint_c, reps, confidence)
            + lhs * _halfwidth(pj_c, reps, confidence)
            + pj * hw_i
        )
        checks.append(
            FactorizationCheck(i, j, q, r, g, g, joint, product, dev, hw, abs(dev) <= hw)
        )
    return CiNqdResult(primary, tuple(checks))


# ---------------------------------------------------------------------------
# Exact anchored-box oracles


def falling_factorial(a: int, t: int) -> int:
    """(a)_t = a (a-1) ... (a-t+1); equals 0 when t > a, and 1 when t = 0."""
    if a < 0 or t < 0:
        raise ValidationError("falling factorial needs nonnegative integers")
    return math.perm(a, t)


def lhs_anchored_prob_exact(n: int, q, t: int) -> float:
    """Exact P(points 1..t of an n-point Latin hypercube all in [0, q)).

    Per axis write q_i * n = k_i + theta_i with integer k_i and theta_i in
    [0, 1); the axis factor is ((k_i)_t + t * theta_i * (k_i)_(t-1)) / (n)_t
    and the axes multiply because coordinates are stratified independently.
    """
    q = np.atleast_1d(np.asarray(q, dtype=float))
    if np.any(q < 0.0) or np.any(q > 1.0):
        raise ValidationError("anchor coordinates must lie in [0, 1]")
    if not (1 <= t <= n):
        raise ValidationError("need 1 <= t <= n")
    denom = falling_factorial(n, t)
    prob = 1.0
    for qi in q:
        x = qi * n
        k = min(int(math.floor(x)), n)
        theta = x - k
        prob *= (falling_factorial(k, t) + t * theta * falling_factorial(k, t - 1)) / denom
    return float(prob)


def gss_anchored_prob_exact(beta: int, strata: StrataSpec, box: CornerBox0, n: int, t: int) -> float:
    """Exact P(points 1..t of generalized stratified sampling all in box).

    The ordered strata of the first t points are uniform over ordered
    t-tuples of distinct strata, so the probability is
    t!/(beta)_t * e_t(beta * overlap_j) with overlap_j the Lebesgue measure
    of box within stratum j.
    """
    if beta != strata_count(strata):
        raise ValidationError("beta must equal the number of strata")
    if not (1 <= t <= n <= beta):
        raise ValidationError("need 1 <= t <= n <= beta")
    if not isinstance(box, CornerBox0):
        raise ValidationError("oracle supports origin-anchored boxes only")
    overlaps = stratum_corner_overlap(strata, box.upper, box.d)
    vals = beta * overlaps
    return math.factorial(t) / falling_factorial(beta, t) * elementary_symmetric(vals, t)


def mixed_anchored_prob_exact(n: int, q_left, q_right, t: int) -> float:
    """Exact anchored-box probability for a concatenation of two independent
    n-point Latin hypercube factors: the factor probabilities multiply."""
    return lhs_anchored_prob_exact(n, q_left, t) * lhs_anchored_prob_exact(n, q_right, t)


def corner_cells(n: int, counts) -> np.ndarray:
    """Boolean (n, n) mask marking the k1 x k2 block of grid cells at the origin."""
    k1, k2 = int(counts[0]), int(counts[1])
    if not (0 <= k1 <= n and 0 <= k2 <= n):
        raise ValidationError("cell counts must lie in [0, n]")
    mask = np.zeros((n, n), dtype=bool)
    mask[:k1, :k2] = True
    return mask


def _cells_mask(n: int, qcells) -> np.ndarray:
    arr = np.asarray(qcells)
    if arr.dtype == bool and arr.shape == (n, n):
        return arr
    mask = np.zeros((n, n), dtype=bool)
    for cell in qcells:
        x, y = int(cell[0]), int(cell[1])
        if not (0 <= x < n and 0 <= y < n):
            raise ValidationError("cell index out of range")
        mask[x, y] = True
    return mask


def _np_falling(arr: np.ndarray, t: int) -> np.ndarray:
    out = np.ones(arr.shape, dtype=float)
    for k in range(t):
        out *= arr - k
    return out


def rsj_small_prob(n: int, qcells, t: int) -> float:
    """Exact P(points 1..t of the jittered random rank-1 lattice all in Q).

    Q is a union of cells of the n x n grid; the jitter never crosses cell
    boundaries and the row order is exchangeable, so conditioning on the
    generator and shift gives (K)_t / (n)_t with K the number of lattice
    cells inside Q. Enumerates all (n-1)^2 generators and n^2 shifts; n must
    be prime and at most 31.
    """
    if not is_prime(n):
        raise ValidationError("n must be prime")
    if n > 31:
        raise ValidationError("exact lattice enumeration is capped at n = 31")
    if not (1 <= t <= n):
        raise ValidationError("need 1 <= t <= n")
    mask = _cells_mask(n, qcells).astype(np.int64)
    denom = float(falling_factorial(n, t))
    gens = range(1, n) if n > 2 else [1]
    total = 0.0
    for a in gens:
        for b in gens:
            hits = np.zeros((n, n), dtype=np.int64)
            for j in range(n):
                hits += np.roll(mask, shift=(-(j * a) % n, -(j * b) % n), axis=(0, 1))
            total += float(np.sum(_np_falling(hits, t))) / denom
    n_gen = len(list(gens))
    return total / (n_gen * n_gen * n * n)
