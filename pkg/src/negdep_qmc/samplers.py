"""Randomized point-set constructions on [0,1)^d.

Every samplable scheme here produces N points with uniform marginals whose
rows are exchangeable, either by construction or through a final row shuffle.
`sample_batch` draws many independent replications at once as an (R, N, d)
array; `sample` is the single-draw wrapper returning a PointSet.

All randomness flows through RngStream, a splittable deterministic stream:
the same seed and call sequence reproduce the same output bit for bit, and
`split(i)` yields statistically independent child streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ValidationError
from .geometry import clip_convex_to_box, polygon_area

__all__ = [
    "PointSet",
    "RngStream",
    "MonteCarlo",
    "SimpleStratified",
    "GeneralizedStratified",
    "RsjLattice",
    "LatinHypercube",
    "ScrambledNet",
    "Mixed",
    "MinCopula",
    "FourSlot",
    "SwapScheme",
    "SchemeSpec",
    "Stripes",
    "LatticeCells",
    "StrataSpec",
    "sample",
    "sample_batch",
    "net_points",
    "concat",
    "save_pointset",
    "load_pointset",
    "describe_scheme",
    "strata_count",
    "stratum_index",
    "stratum_corner_overlap",
    "is_prime",
]


# ---------------------------------------------------------------------------
# RNG plumbing


class RngStream:
    """Splittable deterministic random stream on top of numpy's SeedSequence.

    `split(i)` derives an independent child stream addressed by the integer
    path (i, ...); identical seeds and paths always reproduce identical draws.
    """

    def __init__(self, seed: int, _path: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.path = tuple(int(p) for p in _path)
        self._seq = np.random.SeedSequence(self.seed, spawn_key=self.path)
        self.gen = np.random.default_rng(self._seq)

    def split(self, child_index: int) -> "RngStream":
        return RngStream(self.seed, self.path + (int(child_index),))

    def __repr__(self):
        return f"RngStream(seed={self.seed}, path={self.path})"


# ---------------------------------------------------------------------------
# Point sets


@dataclass(frozen=True)
class PointSet:
    """An (n, d) array of points in the half-open unit cube."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise ValidationError("point set must be a 2-d array with at least one row")
        if arr.shape[1] > 0 and not (np.all(arr >= 0.0) and np.all(arr < 1.0)):
            raise ValidationError("point coordinates must lie in [0,1)")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def d(self) -> int:
        return self.data.shape[1]


def save_pointset(ps: PointSet, path) -> None:
    """Write the text format: header "d n", then n rows of d reals (17 sig digits)."""
    with open(path, "w") as fh:
        fh.write(f"{ps.d} {ps.n}\n")
        for row in ps.data:
            fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def load_pointset(path) -> PointSet:
    """Read the text format written by save_pointset; round-trips exactly."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValidationError("point-set file must start with a 'd n' header")
        try:
            d, n = int(header[0]), int(header[1])
        except ValueError as exc:
            raise ValidationError("point-set header must contain two integers") from exc
        rows = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            vals = line.split()
            if len(vals) != d:
                raise ValidationError(f"expected {d} coordinates per row, got {len(vals)}")
            rows.append([float(v) for v in vals])
    if len(rows) != n:
        raise ValidationError(f"expected {n} rows, got {len(rows)}")
    return PointSet(np.asarray(rows, dtype=float).reshape(n, d))


def concat(left: PointSet, right: PointSet) -> PointSet:
    """Row-wise concatenation of coordinates: row i becomes (x_i, y_i)."""
    if left.n != right.n:
        raise ValidationError("point sets must have the same number of rows")
    if right.d == 0:
        return left
    if left.d == 0:
        return right
    return PointSet(np.hstack([left.data, right.data]))


# ---------------------------------------------------------------------------
# Scheme and strata specifications


@dataclass(frozen=True)
class MonteCarlo:
    """Independent uniform points."""


@dataclass(frozen=True)
class SimpleStratified:
    """One uniform point per stratum [(j-1)/N, j/N), order randomized; d = 1."""


@dataclass(frozen=True)
class Stripes:
    """Partition of [0,1)^d into `count` vertical stripes along coordinate 1."""

    count: int


@dataclass(frozen=True)
class LatticeCells:
    """Partition of [0,1)^2 into the n fundamental-parallelepiped cells of a
    rank-1 lattice with generator (g1/n, g2/n), n prime."""

    g: tuple[int, int]
    n: int


StrataSpec = Union[Stripes, LatticeCells]


@dataclass(frozen=True)
class GeneralizedStratified:
    """Points placed in a uniformly chosen N-subset of beta equal-measure strata."""

    beta: int
    strata: StrataSpec


@dataclass(frozen=True)
class RsjLattice:
    """Rank-1 lattice with random generator, random digital shift, and jitter.

    N must be prime. N = 2 is accepted: the generator group degenerates to a
    single element, which keeps the construction valid but trivial.
    """


@dataclass(frozen=True)
class LatinHypercube:
    """Coordinatewise independent stratified permutations."""


@dataclass(frozen=True)
class ScrambledNet:
    """Base-b digital net (b prime, s <= b), nested uniform scrambling to depth
    m plus uniform jitter below b^-m, rows shuffled."""

    b: int
    m: int
    s: int


@dataclass(frozen=True)
class Mixed:
    """Independent concatenation: left scheme on the first d_left coordinates,
    right scheme on the remaining d_right."""

    left: "SchemeSpec"
    d_left: int
    right: "SchemeSpec"
    d_right: int


@dataclass(frozen=True)
class MinCopula:
    """Two-point analytic scheme on [0,1) with joint CDF min(x, y, (x^2+y^2)/2).

    Probability-only: it has closed-form orthant probabilities but no sampler.
    """


@dataclass(frozen=True)
class FourSlot:
    """Two-point analytic scheme on [0,1)^2: quadrant slots with a fixed joint
    slot table, uniform within slots."""


@dataclass(frozen=True)
class SwapScheme:
    """Two-point analytic scheme on [0,1)^2: p1 = (X, Y), p2 = (Y, X)."""


SchemeSpec = Union[
    MonteCarlo,
    SimpleStratified,
    GeneralizedStratified,
    RsjLattice,
    LatinHypercube,
    ScrambledNet,
    Mixed,
    MinCopula,
    FourSlot,
    SwapScheme,
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def describe_scheme(spec) -> str:
    if isinstance(spec, MonteCarlo):
        return "mc"
    if isinstance(spec, SimpleStratified):
        return "sss"
    if isinstance(spec, GeneralizedStratified):
        if isinstance(spec.strata, Stripes):
            return f"gss(beta={spec.beta},stripes)"
        return f"gss(beta={spec.beta},cells(g={spec.strata.g},n={spec.strata.n}))"
    if isinstance(spec, RsjLattice):
        return "rsj"
    if isinstance(spec, LatinHypercube):
        return "lhs"
    if isinstance(spec, ScrambledNet):
        return f"net(b={spec.b},m={spec.m},s={spec.s})"
    if isinstance(spec, Mixed):
        return (
            f"mixed({describe_scheme(spec.left)}|{spec.d_left}"
            f"+{describe_scheme(spec.right)}|{spec.d_right})"
        )
    if isinstance(spec, MinCopula):
        return "mincopula"
    if isinstance(spec, FourSlot):
        return "fourslot"
    if isinstance(spec, SwapScheme):
        return "swap"
    raise ValidationError(f"unknown scheme: {type(spec).__name__}")


# ---------------------------------------------------------------------------
# Strata operations


def strata_count(strata: StrataSpec) -> int:
    if isinstance(strata, Stripes):
        return strata.count
    if isinstance(strata, LatticeCells):
        return strata.n
    raise ValidationError(f"unknown strata type: {type(strata).__name__}")


def _validate_strata(strata: StrataSpec, d: int) -> None:
    if isinstance(strata, Stripes):
        if strata.count < 1:
            raise ValidationError("stripe count must be >= 1")
        return
    if isinstance(strata, LatticeCells):
        if d != 2:
            raise ValidationError("lattice-cell strata are 2-d only")
        n = strata.n
        if not is_prime(n):
            raise ValidationError("lattice-cell count n must be prime")
        g1, g2 = strata.g
        if not (1 <= g1 < n and 1 <= g2 < n):
            raise ValidationError("lattice generator entries must lie in [1, n-1]")
        return
    raise ValidationError(f"unknown strata type: {type(strata).__name__}")


def _lattice_basis(strata: LatticeCells) -> tuple[np.ndarray, np.ndarray]:
    """Lagrange-reduced integer basis of n * (lattice + Z^2); det = +-n."""
    n = strata.n
    g1, g2 = strata.g
    c = (g2 * pow(g1, -1, n)) % n
    v1 = np.array([1, c], dtype=np.int64)
    v2 = np.array([0, n], dtype=np.int64)
    while True:
        if v1 @ v1 > v2 @ v2:
            v1, v2 = v2, v1
        mu = round(int(v1 @ v2) / int(v1 @ v1))
        if mu == 0:
            break
        v2 = v2 - mu * v1
    return v1, v2


def _lattice_cell_corners(strata: LatticeCells, k: int) -> np.ndarray:
    """Vertices of cell k's parallelepiped in R^2 (before reduction mod 1)."""
    n = strata.n
    v1, v2 = _lattice_basis(strata)
    y = np.array([(k * strata.g[0]) % n, (k * strata.g[1]) % n], dtype=float) / n
    b1, b2 = v1 / n, v2 / n
    return np.array([y, y + b1, y + b1 + b2, y + b2])


def stratum_index(strata: StrataSpec, pts) -> np.ndarray:
    """Index of the stratum containing each point; pts has shape (..., d)."""
    pts = np.asarray(pts, dtype=float)
    if isinstance(strata, Stripes):
        idx = np.floor(pts[..., 0] * strata.count).astype(np.int64)
        return np.minimum(idx, strata.count - 1)
    if isinstance(strata, LatticeCells):
        n = strata.n
        v1, v2 = _lattice_basis(strata)
        det = int(v1[0] * v2[1] - v2[0] * v1[1])
        x1, x2 = pts[..., 0], pts[..., 1]
        u = (v2[1] * (n * x1) - v2[0] * (n * x2)) / det
        w = (-v1[1] * (n * x1) + v1[0] * (n * x2)) / det
        i, j = np.floor(u).astype(np.int64), np.floor(w).astype(np.int64)
        a1 = (i * v1[0] + j * v2[0]) % n
        g1inv = pow(strata.g[0], -1, n)
        return (a1 * g1inv) % n
    raise ValidationError(f"unknown strata type: {type(strata).__name__}")


def stratum_corner_overlap(strata: StrataSpec, upper, d: int) -> np.ndarray:
    """Vector of Lebesgue measures of [0, upper) intersected with each stratum."""
    upper = np.atleast_1d(np.asarray(upper, dtype=float))
    if upper.size != d:
        raise ValidationError("corner box dimension mismatch")
    if isinstance(strata, Stripes):
        beta = strata.count
        edges = np.arange(beta + 1) / beta
        first = np.clip(np.minimum(upper[0], edges[1:]) - edges[:-1], 0.0, None)
        rest = float(np.prod(upper[1:])) if d > 1 else 1.0
        return first * rest
    if isinstance(strata, LatticeCells):
        n = strata.n
        out = np.zeros(n)
        for k in range(n):
            corners = _lattice_cell_corners(strata, k)
            xmin, ymin = corners.min(axis=0)
            xmax, ymax = corners.max(axis=0)
            total = 0.0
            for sx in range(math.floor(xmin), math.ceil(xmax) + 1):
                for sy in range(math.floor(ymin), math.ceil(ymax) + 1):
                    lo = np.array([sx, sy], dtype=float)
                    hi = lo + upper
                    clipped = clip_convex_to_box(corners, lo, hi)
                    total += polygon_area(clipped)
            out[k] = total
        return out
    raise ValidationError(f"unknown strata type: {type(strata).__name__}")


# ---------------------------------------------------------------------------
# Batch samplers


def _row_perms(g: np.random.Generator, reps: int, n: int) -> np.ndarray:
    """(reps, n) array of independent uniform permutations of 0..n-1."""
    return np.argsort(g.random((reps, n)), axis=1)


def _batch_mc(n, d, reps, g):
    return g.random((reps, n, d))


def _batch_sss(n, reps, g):
    perm = _row_perms(g, reps, n)
    u = g.random((reps, n))
    # (pi(j) - U_j)/n with U_j = 1 - u in (0,1] collapses to (perm + u)/n
    return ((perm + u) / n)[:, :, None]


def _batch_lhs(n, d, reps, g):
    perm = np.argsort(g.random((reps, d, n)), axis=2)
    u = g.random((reps, d, n))
    return np.swapaxes((perm + u) / n, 1, 2)


def _batch_rsj(n, d, reps, g):
    gvec = g.integers(1, n, size=(reps, 1, d)) if n > 2 else np.ones((reps, 1, d), dtype=np.int64)
    shift = g.integers(0, n, size=(reps, 1, d))
    perm = _row_perms(g, reps, n)[:, :, None]
    jitter = g.random((reps, n, d))
    cell = (perm * gvec + shift) % n
    return (cell + jitter) / n


def _batch_gss(spec: GeneralizedStratified, n, d, reps, g):
    beta = spec.beta
    chosen = np.argsort(g.random((reps, beta)), axis=1)[:, :n]
    if isinstance(spec.strata, Stripes):
        u1 = g.random((reps, n))
        first = (chosen + u1) / beta
        if d == 1:
            return first[:, :, None]
        rest = g.random((reps, n, d - 1))
        return np.concatenate([first[:, :, None], rest], axis=2)
    # lattice cells, d = 2
    strata = spec.strata
    v1, v2 = _lattice_basis(strata)
    b1, b2 = v1 / strata.n, v2 / strata.n
    y = np.stack(
        [(chosen * strata.g[0]) % strata.n, (chosen * strata.g[1]) % strata.n], axis=-1
    ) / strata.n
    u = g.random((reps, n, 1))
    w = g.random((reps, n, 1))
    pts = np.mod(y + u * b1 + w * b2, 1.0)
    pts[pts >= 1.0] = 0.0  # fp guard: mod of a tiny negative can round to 1.0
    return pts


def _pascal_matrix_powers(b: int, m: int, s: int) -> list[np.ndarray]:
    pascal = np.zeros((m, m), dtype=np.int64)
    for r in range(m):
        for c in range(r, m):
            pascal[r, c] = math.comb(c, r) % b
    mats = []
    cur = np.eye(m, dtype=np.int64)
    for _ in range(s):
        mats.append(cur.copy())
        cur = (cur @ pascal) % b
    return mats


def _net_base_digits(b: int, m: int, s: int) -> np.ndarray:
    """Digits of the deterministic base net: shape (n, s, m), digit r has weight b^-(r+1)."""
    n = b**m
    i = np.arange(n)
    a = np.stack([(i // b**c) % b for c in range(m)], axis=1)  # LSB first
    mats = _pascal_matrix_powers(b, m, s)
    digs = np.empty((n, s, m), dtype=np.int64)
    for l in range(s):
        digs[:, l, :] = (a @ mats[l].T) % b
    return digs


def net_points(b: int, m: int, s: int) -> PointSet:
    """The deterministic digital net underlying ScrambledNet, unscrambled and
    unjittered: b^m points in [0,1)^s with coordinates on the b^-m grid."""
    _validate(ScrambledNet(b, m, s), b**m, s)
    digits = _net_base_digits(b, m, s)
    weights = b ** -(np.arange(m, dtype=float) + 1)
    return PointSet(digits @ weights)


def _batch_scrambled_net(spec: ScrambledNet, reps, g):
    b, m, s = spec.b, spec.m, spec.s
    n = b**m
    base = _net_base_digits(b, m, s)
    weights = b ** -(np.arange(m, dtype=float) + 1)
    out = np.empty((reps, n, s))
    rows = np.arange(reps)[:, None]
    for l in range(s):
        digits = np.broadcast_to(base[:, l, :], (reps, n, m)).copy()
        prefix = np.zeros(n, dtype=np.int64)
        for r in range(m):
            for pid in np.unique(prefix):
                members = np.nonzero(prefix == pid)[0]
                perms = np.argsort(g.random((reps, b)), axis=1)
                digits[:, members, r] = perms[rows, base[members, l, r][None, :]]
            prefix = prefix * b + base[:, l, r]
        out[:, :, l] = digits @ weights + g.random((reps, n)) * b ** (-m)
    rp = _row_perms(g, reps, n)
    return np.take_along_axis(out, rp[:, :, None], axis=1)


_FOURSLOT_LOWER = np.array([[0.0, 0.0], [0.5, 0.0], [0.0, 0.5], [0.5, 0.5]])

# joint slot probabilities, symmetric, rows/columns sum to 1/4; unlisted pairs are 0
_FOURSLOT_TABLE = {
    (0, 0): 1 / 16, (1, 1): 1 / 16, (2, 2): 1 / 16, (3, 3): 1 / 16,
    (0, 2): 1 / 32, (2, 0): 1 / 32, (1, 3): 1 / 32, (3, 1): 1 / 32,
    (0, 3): 5 / 32, (3, 0): 5 / 32, (1, 2): 5 / 32, (2, 1): 5 / 32,
}


def _batch_fourslot(reps, g):
    pairs = sorted(_FOURSLOT_TABLE)
    probs = np.array([_FOURSLOT_TABLE[p] for p in pairs])
    pick = g.choice(len(pairs), size=reps, p=probs)
    slot = np.array(pairs)[pick]  # (reps, 2)
    u = g.random((reps, 2, 2)) * 0.5
    return _FOURSLOT_LOWER[slot] + u


def _batch_swap(reps, g):
    x = g.random(reps)
    y = g.random(reps)
    out = np.empty((reps, 2, 2))
    out[:, 0, 0] = x
    out[:, 0, 1] = y
    out[:, 1, 0] = y
    out[:, 1, 1] = x
    return out


def _validate(spec, n: int, d: int) -> None:
    if n < 1 or d < 1:
        raise ValidationError("need n >= 1 and d >= 1")
    if isinstance(spec, (MonteCarlo, LatinHypercube)):
        return
    if isinstance(spec, SimpleStratified):
        if d != 1:
            raise ValidationError("simple stratified sampling is 1-d only")
        return
    if isinstance(spec, GeneralizedStratified):
        _validate_strata(spec.strata, d)
        if spec.beta != strata_count(spec.strata):
            raise ValidationError("beta must equal the number of strata")
        if spec.beta < n:
            raise ValidationError("need beta >= n strata")
        return
    if isinstance(spec, RsjLattice):
        if not is_prime(n):
            raise ValidationError("rank-1 lattice point count must be prime")
        return
    if isinstance(spec, ScrambledNet):
        if not is_prime(spec.b):
            raise ValidationError("net base must be prime")
        if not (1 <= spec.s <= spec.b):
            raise ValidationError("net dimension s must satisfy 1 <= s <= b")
        if spec.m < 1:
            raise ValidationError("net digit depth m must be >= 1")
        if n != spec.b**spec.m:
            raise ValidationError(f"net point count must be b^m = {spec.b ** spec.m}")
        if d != spec.s:
            raise ValidationError("net dimension mismatch: d must equal s")
        return
    if isinstance(spec, Mixed):
        if spec.d_left < 1 or spec.d_right < 1:
            raise ValidationError("mixed factors must have dimension >= 1")
        if d != spec.d_left + spec.d_right:
            raise ValidationError("mixed dimension must equal d_left + d_right")
        _validate(spec.left, n, spec.d_left)
        _validate(spec.right, n, spec.d_right)
        return
    if isinstance(spec, MinCopula):
        raise ValidationError(
            "the min-copula scheme has no sampler; use its probability oracle"
        )
    if isinstance(spec, (FourSlot, SwapScheme)):
        if n != 2 or d != 2:
            raise ValidationError("analytic two-point schemes require n = 2, d = 2")
        return
    raise ValidationError(f"unknown scheme: {type(spec).__name__}")


def sample_batch(spec: SchemeSpec, n: int, d: int, reps: int, rng: RngStream) -> np.ndarray:
    """Draw `reps` independent replications of the scheme: shape (reps, n, d)."""
    if reps < 1:
        raise ValidationError("need reps >= 1")
    _validate(spec, n, d)
    g = rng.gen
    if isinstance(spec, MonteCarlo):
        return _batch_mc(n, d, reps, g)
    if isinstance(spec, SimpleStratified):
        return _batch_sss(n, reps, g)
    if isinstance(spec, LatinHypercube):
        return _batch_lhs(n, d, reps, g)
    if isinstance(spec, RsjLattice):
        return _batch_rsj(n, d, reps, g)
    if isinstance(spec, GeneralizedStratified):
        return _batch_gss(spec, n, d, reps, g)
    if isinstance(spec, ScrambledNet):
        return _batch_scrambled_net(spec, reps, g)
    if isinstance(spec, Mixed):
        left = sample_batch(spec.left, n, spec.d_left, reps, rng.split(0))
        right = sample_batch(spec.right, n, spec.d_right, reps, rng.split(1))
        return np.concatenate([left, right], axis=2)
    if isinstance(spec, FourSlot):
        return _batch_fourslot(reps, g)
    if isinstance(spec, SwapScheme):
        return _batch_swap(reps, g)
    raise ValidationError(f"unknown scheme: {type(spec).__name__}")


def sample(spec: SchemeSpec, n: int, d: int, rng: RngStream) -> PointSet:
    """Draw one replication of the scheme."""
    return PointSet(sample_batch(spec, n, d, 1, rng)[0])
