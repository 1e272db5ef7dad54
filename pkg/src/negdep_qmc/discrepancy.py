"""Local, star, covered, and weighted star discrepancy.

The exact star discrepancy enumerates the critical grid spanned by the point
coordinates plus 1 along each axis. At each grid node x two candidates are
evaluated: the deficiency of the half-open box [0, x) (volume of the closed
box minus the strictly-dominated point fraction) and the excess of the closed
box [0, x] (weakly-dominated fraction minus its volume, the right-limit over
shrinking half-open boxes). The maximum over nodes and sides is exact.

Counting uses a padded d-dimensional cumulative histogram, so the cost is
O(number of grid nodes) after an O(N log N) sort per axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Mapping, Optional

import numpy as np

from .errors import BudgetExceededError, ValidationError
from .geometry import build_delta_cover, contains_points, volume
from .samplers import PointSet

__all__ = [
    "ProductWeights",
    "ExplicitWeights",
    "Weights",
    "DiscrepancyResult",
    "local_discrepancy",
    "star_discrepancy_exact",
    "star_discrepancy_cover",
    "weighted_star_discrepancy",
    "weight_of",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**8
_NODE_CAP = 2**25  # grid cells held in memory at once


@dataclass(frozen=True)
class ProductWeights:
    """Coordinate weights gamma_j >= 0; a subset u gets prod_{j in u} gamma_j."""

    gamma: np.ndarray

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.gamma, dtype=float))
        if arr.ndim != 1 or np.any(arr < 0):
            raise ValidationError("product weights must be a vector of nonnegative reals")
        arr.setflags(write=False)
        object.__setattr__(self, "gamma", arr)


@dataclass(frozen=True)
class ExplicitWeights:
    """Explicit weight per coordinate subset (0-based indices)."""

    table: Mapping[frozenset, float]

    def __post_init__(self):
        tbl = {frozenset(int(i) for i in k): float(v) for k, v in dict(self.table).items()}
        if any(v < 0 for v in tbl.values()):
            raise ValidationError("subset weights must be nonnegative")
        object.__setattr__(self, "table", tbl)


Weights = ProductWeights | ExplicitWeights


def weight_of(weights: Weights, subset) -> float:
    u = tuple(sorted(int(i) for i in subset))
    if isinstance(weights, ProductWeights):
        if u and max(u) >= weights.gamma.size:
            raise ValidationError("subset index exceeds weight vector length")
        return float(np.prod(weights.gamma[list(u)])) if u else 1.0
    if isinstance(weights, ExplicitWeights):
        key = frozenset(u)
        if key not in weights.table:
            raise ValidationError(f"no weight declared for subset {sorted(key)}")
        return weights.table[key]
    raise ValidationError(f"unknown weights type: {type(weights).__name__}")


@dataclass(frozen=True)
class DiscrepancyResult:
    value: float
    kind: str  # "exact" | "cover_lower" | "cover_upper"
    witness: Optional[np.ndarray] = None
    # "open": [0, witness) undercounts; "closed": [0, witness] overcounts
    witness_side: Optional[str] = None


def local_discrepancy(ps: PointSet, box) -> float:
    """|fraction of points in the region - its volume| for any box-like region."""
    inside = contains_points(box, ps.data)
    return abs(float(inside.mean()) - volume(box))


def _axis_candidates(pts: np.ndarray) -> list[np.ndarray]:
    return [np.unique(np.concatenate([pts[:, a], [1.0]])) for a in range(pts.shape[1])]


def star_discrepancy_exact(ps: PointSet, budget: int = DEFAULT_BUDGET) -> DiscrepancyResult:
    """Exact star discrepancy by critical-grid enumeration.

    Work is N * prod(axis candidate counts) box-point tests, at most
    N*(N+1)^d; a BudgetExceededError is raised above `budget`.
    """
    pts = ps.data
    n, d = pts.shape
    if d < 1:
        raise ValidationError("point set must have dimension >= 1")
    cands = _axis_candidates(pts)
    sizes = [c.size for c in cands]
    nodes = int(np.prod([np.float64(s) for s in sizes]))
    padded = int(np.prod([np.float64(s + 1) for s in sizes]))
    if n * nodes > budget or padded > _NODE_CAP:
        raise BudgetExceededError(
            f"exact star discrepancy needs {n * nodes} box-point tests "
            f"({padded} grid cells); budget is {budget}"
        )
    hist = np.zeros([s + 1 for s in sizes], dtype=np.int32)
    idx = tuple(np.searchsorted(cands[a], pts[:, a]) + 1 for a in range(d))
    np.add.at(hist, idx, 1)
    for a in range(d):
        np.cumsum(hist, axis=a, out=hist)
    # hist[i_1, ..., i_d] = #points with coordinate index < i_a on every axis
    vols_rest = reduce(np.multiply, np.ix_(*cands[1:]), np.float64(1.0))
    inner_strict = (slice(0, -1),) * (d - 1)
    inner_closed = (slice(1, None),) * (d - 1)
    best = -1.0
    best_node = None
    best_side = None
    for i0, x0 in enumerate(cands[0]):
        strict = np.asarray(hist[i0][inner_strict], dtype=float)
        closed = np.asarray(hist[i0 + 1][inner_closed], dtype=float)
        vols = x0 * vols_rest
        defic = vols - strict / n
        exces = closed / n - vols
        for arr, side in ((defic, "open"), (exces, "closed")):
            flat = int(np.argmax(arr))
            val = float(np.ravel(arr)[flat])
            if val > best:
                best = val
                rest_idx = np.unravel_index(flat, np.shape(arr)) if d > 1 else ()
                best_node = (i0,) + tuple(rest_idx)
                best_side = side
    witness = np.array([cands[a][best_node[a]] for a in range(d)])
    return DiscrepancyResult(best, "exact", witness, best_side)


def star_discrepancy_cover(
    ps: PointSet, delta: float, budget: int = DEFAULT_BUDGET
) -> tuple[float, float]:
    """Bracket the star discrepancy through a delta-cover.

    Returns (lower, lower + delta): the max local discrepancy over the cover
    grid is a lower bound and underestimates by at most delta.
    """
    cover = build_delta_cover(ps.d, delta)
    grid = cover.all_points()
    if ps.n * len(grid) > budget:
        raise BudgetExceededError(
            f"cover evaluation needs {ps.n * len(grid)} box-point tests; budget is {budget}"
        )
    lower = 0.0
    pts = ps.data
    step = max(1, int(2_000_000 // max(1, ps.n)))
    for s in range(0, len(grid), step):
        chunk = grid[s : s + step]
        counts = np.sum(np.all(pts[None, :, :] < chunk[:, None, :], axis=2), axis=1)
        local = np.abs(counts / ps.n - np.prod(chunk, axis=1))
        lower = max(lower, float(local.max()))
    return lower, lower + float(delta)


def weighted_star_discrepancy(
    ps: PointSet, weights: Weights, budget: int = DEFAULT_BUDGET
) -> float:
    """max over nonempty coordinate subsets u of gamma_u * D*(projection onto u)."""
    d = ps.d
    if isinstance(weights, ProductWeights) and weights.gamma.size != d:
        raise ValidationError("product weight vector length must equal dimension")
    best = 0.0
    for size in range(1, d + 1):
        for u in combinations(range(d), size):
            gamma = weight_of(weights, u)
            if gamma == 0.0:
                continue
            proj = PointSet(ps.data[:, list(u)])
            best = max(best, gamma * star_discrepancy_exact(proj, budget).value)
    return best
