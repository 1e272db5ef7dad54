"""Axis-parallel regions of the half-open unit cube [0,1)^d.

Box types (anchored corner boxes, intervals, box differences, base-b elementary
intervals), volume and membership, delta-covers with bracketing-number bounds,
the two-piece split of a box difference, and an exact (t,m,s)-net checker.

Membership is half-open throughout: lower edges closed, upper edges open.
Comparisons are exact floating point; no epsilons except where documented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian

import numpy as np

from .errors import ValidationError

__all__ = [
    "CornerBox0",
    "CornerBox1",
    "Interval",
    "BoxDiff",
    "ElementaryInterval",
    "ProductRegion",
    "DeltaCover",
    "CoverValidation",
    "volume",
    "contains",
    "contains_points",
    "describe_box",
    "build_delta_cover",
    "validate_delta_cover",
    "cover_cardinality_bound",
    "split_box_difference",
    "is_net",
    "clip_convex_to_box",
    "polygon_area",
]


def _unit_vector(x, name, closed_top=True):
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if arr.ndim != 1 or arr.size == 0:
        raise ValidationError(f"{name} must be a nonempty 1-d coordinate vector")
    top_ok = np.all(arr <= 1.0) if closed_top else np.all(arr < 1.0)
    if not (np.all(arr >= 0.0) and top_ok):
        hi = "]" if closed_top else ")"
        raise ValidationError(f"{name} coordinates must lie in [0,1{hi}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class CornerBox0:
    """Half-open box [0, upper) anchored at the origin."""

    upper: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "upper", _unit_vector(self.upper, "upper"))

    @property
    def d(self) -> int:
        return self.upper.size


@dataclass(frozen=True)
class CornerBox1:
    """Half-open box [lower, 1) anchored at the upper corner."""

    lower: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lower", _unit_vector(self.lower, "lower"))

    @property
    def d(self) -> int:
        return self.lower.size


@dataclass(frozen=True)
class Interval:
    """Half-open axis-parallel box [a, b)."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = _unit_vector(self.a, "a")
        b = _unit_vector(self.b, "b")
        if a.size != b.size:
            raise ValidationError("interval endpoints must have equal dimension")
        if not np.all(a <= b):
            raise ValidationError("interval requires a <= b componentwise")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def d(self) -> int:
        return self.a.size


@dataclass(frozen=True)
class BoxDiff:
    """Set difference outer \\ inner of two nested origin-anchored boxes."""

    outer: CornerBox0
    inner: CornerBox0

    def __post_init__(self):
        if self.outer.d != self.inner.d:
            raise ValidationError("box difference requires equal dimensions")
        if not np.all(self.inner.upper <= self.outer.upper):
            raise ValidationError("box difference requires inner <= outer componentwise")

    @property
    def d(self) -> int:
        return self.outer.d


@dataclass(frozen=True)
class ElementaryInterval:
    """Base-b elementary interval: product of [k_l/b^j_l, (k_l+1)/b^j_l)."""

    base: int
    j: np.ndarray
    k: np.ndarray

    def __post_init__(self):
        if self.base < 2:
            raise ValidationError("base must be >= 2")
        j = np.atleast_1d(np.asarray(self.j, dtype=int))
        k = np.atleast_1d(np.asarray(self.k, dtype=int))
        if j.size != k.size or j.ndim != 1:
            raise ValidationError("j and k must be integer vectors of equal length")
        if np.any(j < 0):
            raise ValidationError("digit depths j must be nonnegative")
        if np.any(k < 0) or np.any(k >= self.base ** j.astype(object)):
            raise ValidationError("cell indices k must satisfy 0 <= k < b^j")
        j.setflags(write=False)
        k.setflags(write=False)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "k", k)

    @property
    def d(self) -> int:
        return self.j.size


@dataclass(frozen=True)
class ProductRegion:
    """Cartesian product of two box-like factors on complementary coordinate blocks."""

    left: object
    right: object

    @property
    def d(self) -> int:
        return self.left.d + self.right.d


def volume(box) -> float:
    """Lebesgue measure of a box-like region."""
    if isinstance(box, CornerBox0):
        return float(np.prod(box.upper))
    if isinstance(box, CornerBox1):
        return float(np.prod(1.0 - box.lower))
    if isinstance(box, Interval):
        return float(np.prod(box.b - box.a))
    if isinstance(box, BoxDiff):
        return volume(box.outer) - volume(box.inner)
    if isinstance(box, ElementaryInterval):
        return float(box.base) ** (-int(box.j.sum()))
    if isinstance(box, ProductRegion):
        return volume(box.left) * volume(box.right)
    raise ValidationError(f"unsupported region type: {type(box).__name__}")


def contains_points(box, pts) -> np.ndarray:
    """Vectorized membership: pts has shape (..., d), result has shape (...)."""
    pts = np.asarray(pts, dtype=float)
    if pts.shape[-1] != box.d:
        raise ValidationError(
            f"point dimension {pts.shape[-1]} does not match region dimension {box.d}"
        )
    if isinstance(box, CornerBox0):
        return np.all(pts < box.upper, axis=-1)
    if isinstance(box, CornerBox1):
        return np.all(pts >= box.lower, axis=-1)
    if isinstance(box, Interval):
        return np.all(pts >= box.a, axis=-1) & np.all(pts < box.b, axis=-1)
    if isinstance(box, BoxDiff):
        return contains_points(box.outer, pts) & ~contains_points(box.inner, pts)
    if isinstance(box, ElementaryInterval):
        scale = box.base ** box.j.astype(float)
        lo = box.k / scale
        hi = (box.k + 1) / scale
        return np.all(pts >= lo, axis=-1) & np.all(pts < hi, axis=-1)
    if isinstance(box, ProductRegion):
        dl = box.left.d
        return contains_points(box.left, pts[..., :dl]) & contains_points(
            box.right, pts[..., dl:]
        )
    raise ValidationError(f"unsupported region type: {type(box).__name__}")


def contains(box, p) -> bool:
    """Scalar membership test for a single point."""
    p = np.atleast_1d(np.asarray(p, dtype=float))
    return bool(contains_points(box, p))


def describe_box(box) -> str:
    """Short human-readable label used in reports."""

    def fmt(v):
        return "(" + ",".join(f"{x:g}" for x in np.atleast_1d(v)) + ")"

    if isinstance(box, CornerBox0):
        return f"[0,{fmt(box.upper)})"
    if isinstance(box, CornerBox1):
        return f"[{fmt(box.lower)},1)"
    if isinstance(box, Interval):
        return f"[{fmt(box.a)},{fmt(box.b)})"
    if isinstance(box, BoxDiff):
        return f"{describe_box(box.outer)}\\{describe_box(box.inner)}"
    if isinstance(box, ElementaryInterval):
        return f"elem(b={box.base},j={fmt(box.j)},k={fmt(box.k)})"
    if isinstance(box, ProductRegion):
        return f"{describe_box(box.left)}x{describe_box(box.right)}"
    return repr(box)


# ---------------------------------------------------------------------------
# Delta-covers


@dataclass(frozen=True)
class DeltaCover:
    """Finite grid bracketing every anchored box to volume resolution delta.

    Stored points live in [0,1)^d; grid nodes with any coordinate equal to 1
    are kept apart in `upper_witnesses` so that all regular points remain in
    the half-open cube.
    """

    delta: float
    d: int
    resolution: int
    points: np.ndarray
    upper_witnesses: np.ndarray

    def cardinality(self) -> int:
        return len(self.points) + len(self.upper_witnesses)

    def all_points(self) -> np.ndarray:
        """Points and upper witnesses stacked, for sup-style evaluation."""
        return np.vstack([self.points, self.upper_witnesses])


@dataclass(frozen=True)
class CoverValidation:
    ok: bool
    max_gap: float
    checked: int
    message: str = ""


def build_delta_cover(d: int, delta: float) -> DeltaCover:
    """Construct a delta-cover of anchored boxes in dimension d.

    d = 1 uses the exact minimal grid {1/m, ..., 1} with m = ceil(1/delta).
    d > 1 uses the product grid with per-axis resolution m = ceil(d/delta),
    whose floor/ceil brackets have volume gap at most d/m <= delta.
    """
    if d < 1:
        raise ValidationError("dimension must be >= 1")
    if not (0.0 < delta <= 1.0):
        raise ValidationError("delta must lie in (0, 1]")
    m = math.ceil(1.0 / delta) if d == 1 else math.ceil(d / delta)
    vals = np.arange(1, m + 1, dtype=float) / m
    if d == 1:
        grid = vals[:, None]
    else:
        mesh = np.meshgrid(*([vals] * d), indexing="ij")
        grid = np.stack(mesh, axis=-1).reshape(-1, d)
    interior = np.all(grid < 1.0, axis=1)
    return DeltaCover(
        delta=float(delta),
        d=d,
        resolution=m,
        points=grid[interior],
        upper_witnesses=grid[~interior],
    )


def validate_delta_cover(cover: DeltaCover, n_samples: int, rng) -> CoverValidation:
    """Spot-check the bracketing property on random targets.

    For each y drawn uniformly from [0,1)^d, exhibits grid nodes x <= y <= z
    (x may be the origin) and checks the anchored-volume gap is at most delta.
    """
    m = cover.resolution
    y = rng.random((n_samples, cover.d))
    lo_idx = np.floor(y * m)
    hi = (lo_idx + 1) / m
    lo = lo_idx / m
    if not (np.all(lo <= y) and np.all(y < hi) and np.all(hi <= 1.0)):
        return CoverValidation(False, math.inf, n_samples, "bracketing witnesses invalid")
    vol_hi = np.prod(hi, axis=1)
    vol_lo = np.where(np.any(lo_idx == 0, axis=1), 0.0, np.prod(lo, axis=1))
    gaps = vol_hi - vol_lo
    max_gap = float(gaps.max())
    ok = max_gap <= cover.delta + 1e-12
    msg = "" if ok else f"volume gap {max_gap} exceeds delta={cover.delta}"
    return CoverValidation(ok, max_gap, n_samples, msg)


def cover_cardinality_bound(d: int, delta: float) -> int:
    """Upper bound on the minimal delta-cover cardinality.

    d = 1: exactly ceil(1/delta). d > 1: ceil(2^d (d^d/d!) (1/delta + 1)^d),
    evaluated in exact rational arithmetic so large d cannot overflow.
    """
    if d < 1:
        raise ValidationError("dimension must be >= 1")
    if not (0.0 < delta <= 1.0):
        raise ValidationError("delta must lie in (0, 1]")
    if d == 1:
        return math.ceil(1.0 / delta)
    if d > 10_000:
        raise ValidationError("d too large for exact bound evaluation")
    q = Fraction(1, 1) / Fraction(delta) + 1
    val = Fraction(2**d * d**d, math.factorial(d)) * q**d
    return math.ceil(val)


# ---------------------------------------------------------------------------
# Box-difference split


def split_box_difference(diff: BoxDiff, d_left: int) -> tuple[ProductRegion, ProductRegion]:
    """Split outer\\inner into two disjoint product pieces along a coordinate cut.

    Piece 1 is (outer'\\inner') x outer'' and piece 2 is inner' x (outer''\\inner''),
    where ' and '' denote the first d_left and remaining coordinates. Volumes
    add up to the volume of the difference.
    """
    d = diff.d
    if not (1 <= d_left < d):
        raise ValidationError("cut position must satisfy 1 <= d_left < d")
    b1, a1 = diff.outer.upper[:d_left], diff.inner.upper[:d_left]
    b2, a2 = diff.outer.upper[d_left:], diff.inner.upper[d_left:]
    piece1 = ProductRegion(BoxDiff(CornerBox0(b1), CornerBox0(a1)), CornerBox0(b2))
    piece2 = ProductRegion(CornerBox0(a1), BoxDiff(CornerBox0(b2), CornerBox0(a2)))
    return piece1, piece2


# ---------------------------------------------------------------------------
# Net checking


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def is_net(points, b: int, m: int, s: int, t: int = 0, snap: float = 1e-9) -> bool:
    """Check the (t,m,s)-net property in base b exactly.

    Every elementary interval of volume b^(t-m) must contain exactly b^t of
    the b^m points. `points` is an (N, s) array or anything with a `.data`
    attribute holding one. Digit extraction adds `snap` before flooring so
    that raw net coordinates sitting exactly on cell boundaries (not binary-
    representable for odd b) are classified consistently; desk-scale safe.
    """
    pts = np.asarray(getattr(points, "data", points), dtype=float)
    if b < 2:
        raise ValidationError("base must be >= 2")
    if m < 1 or s < 1:
        raise ValidationError("m and s must be >= 1")
    if not (0 <= t <= m):
        raise ValidationError("strength t must satisfy 0 <= t <= m")
    n = b**m
    if pts.ndim != 2 or pts.shape != (n, s):
        raise ValidationError(f"expected a point set of shape ({n}, {s})")
    q = m - t
    target = b**t
    for j in _compositions(q, s):
        dims = [b**jl for jl in j]
        cells = [
            np.floor(pts[:, l] * dims[l] + snap).astype(np.int64) for l in range(s)
        ]
        ids = np.ravel_multi_index(cells, dims)
        counts = np.bincount(ids, minlength=b**q)
        if not np.all(counts == target):
            return False
    return True


# ---------------------------------------------------------------------------
# Convex polygon clipping (used by 2-d lattice-cell strata)


def polygon_area(poly) -> float:
    """Unsigned shoelace area of a polygon given as an (k, 2) vertex array."""
    poly = np.asarray(poly, dtype=float)
    if len(poly) < 3:
        return 0.0
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def clip_convex_to_box(poly, lo, hi) -> np.ndarray:
    """Clip a convex polygon to the axis box [lo, hi] (Sutherland-Hodgman)."""
    verts = [tuple(map(float, v)) for v in np.asarray(poly, dtype=float)]
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    # half-planes: x >= lo0, x <= hi0, y >= lo1, y <= hi1
    planes = [
        (lambda p, c=lo[0]: p[0] - c),
        (lambda p, c=hi[0]: c - p[0]),
        (lambda p, c=lo[1]: p[1] - c),
        (lambda p, c=hi[1]: c - p[1]),
    ]
    for inside in planes:
        if not verts:
            break
        nxt = []
        for i, cur in enumerate(verts):
            prv = verts[i - 1]
            cur_in = inside(cur) >= 0.0
            prv_in = inside(prv) >= 0.0
            if cur_in != prv_in:
                a, bvals = inside(prv), inside(cur)
                frac = a / (a - bvals)
                nxt.append(
                    (
                        prv[0] + frac * (cur[0] - prv[0]),
                        prv[1] + frac * (cur[1] - prv[1]),
                    )
                )
            if cur_in:
                nxt.append(cur)
        verts = nxt
    return np.asarray(verts, dtype=float).reshape(-1, 2)
