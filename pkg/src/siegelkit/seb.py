"""Approximate smallest enclosing balls by the Badoiu-Clarkson iteration.

Each step finds the farthest point from the current center and moves the
center a fraction ``t_l = 1/(l+1)`` of the way along the geodesic towards
it. Three geometries are supported:

* ``spd``: SPD matrices with the affine-invariant metric.
* ``poincare_disk``: Siegel disk with the Kobayashi distance. The cloud is
  translated by ``Phi`` every step so the center stays at the origin, where
  geodesics are straight and the cut has a closed form.
* ``klein_disk``: Siegel disk with the Hilbert distance. Geodesics are
  straight everywhere, so no recentering and no matrix square roots.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .counters import counting
from .errors import ContractViolation
from .matrix_core import operator_norm
from .siegel_klein import (
    _bisect,
    _bounds_from_bracket,
    cut_from_bracket,
    dist_klein_bounds,
    klein_point,
)
from .siegel_poincare_disk import (
    _phi,
    _phi_inv,
    disk_point,
    dist_kobayashi,
    origin_alpha,
)
from .siegel_upper import _spd, spd_dist, spd_geodesic_cut

SPD = "spd"
POINCARE_DISK = "poincare_disk"
KLEIN_DISK = "klein_disk"
SEB_MODELS = (SPD, POINCARE_DISK, KLEIN_DISK)

_EPS_FLOOR = 1e-13
_RADIUS_EPS = 1e-12


@dataclass(frozen=True)
class PointCloud:
    model: str
    points: tuple

    def __post_init__(self):
        if self.model not in SEB_MODELS:
            raise ContractViolation(f"unknown model {self.model!r}")
        if len(self.points) == 0:
            raise ContractViolation("empty point cloud")
        check = _spd if self.model == SPD else disk_point
        pts = tuple(np.asarray(check(p)) for p in self.points)
        dims = {p.shape for p in pts}
        if len(dims) != 1:
            raise ContractViolation(f"mixed point shapes {sorted(dims)}")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    @property
    def dim(self):
        return self.points[0].shape[0]


@dataclass(frozen=True)
class SebConfig:
    """``iterations`` is L; ``eps`` is the Klein bracket width used in the loop.

    ``init`` picks the starting center: ``"first"`` (the first point),
    ``"origin"`` or an explicit matrix. ``None`` uses each variant's default.
    """

    iterations: int = 1000
    schedule: str = "harmonic"
    eps: float = 1e-8
    early_stop: float = 1e-12
    init: object = None
    trace: bool = False

    def __post_init__(self):
        if int(self.iterations) != self.iterations or self.iterations < 1:
            raise ContractViolation("iterations must be a positive integer")
        if self.schedule != "harmonic":
            raise ContractViolation(f"unknown step schedule {self.schedule!r}")
        if self.eps <= 0:
            raise ContractViolation("eps must be positive")

    def step(self, l):
        return 1.0 / (l + 1)


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    farthest: int
    radius: float
    counters: dict


@dataclass
class EnclosingBall:
    model: str
    center: np.ndarray
    radius: float
    iterations_run: int
    trace: list = field(default_factory=list)
    counters: dict = field(default_factory=dict)
    loop_counters: dict = field(default_factory=dict)


def _argmax_lowest(values):
    # np.argmax returns the first maximal index
    return int(np.argmax(np.asarray(values)))


def _klein_farthest(center, points, eps):
    """Certified farthest point: tighten brackets until the winner separates.

    Returns ``(index, bounds, brackets)``; ties left at the eps floor go to
    the lowest index.
    """
    n = len(points)
    lo = np.zeros(n)
    hi = np.zeros(n)
    brs = [None] * n

    def evaluate(i, e):
        if np.array_equal(points[i], center):
            lo[i] = hi[i] = 0.0
            brs[i] = None
            return
        br = _bisect(center, points[i] - center, e, 1e-12)
        b = _bounds_from_bracket(br)
        lo[i], hi[i], brs[i] = b.lower, b.upper, br

    for i in range(n):
        evaluate(i, eps)
    e = eps
    while True:
        best = _argmax_lowest(0.5 * (lo + hi))
        rivals = [j for j in range(n) if j != best and hi[j] >= lo[best]]
        if not rivals or e <= _EPS_FLOOR:
            break
        e = max(e * 1e-2, _EPS_FLOOR)
        for j in [best] + rivals:
            evaluate(j, e)
    return best, 0.5 * (lo[best] + hi[best]), brs[best]


def farthest_point(center, cloud, eps=1e-8):
    """Index and distance of the point farthest from ``center`` (lowest index on ties)."""
    if cloud.model == KLEIN_DISK:
        i, dist, _ = _klein_farthest(klein_point(center), cloud.points, eps)
        return i, dist
    dist = _distance_fn(cloud.model)
    ds = [dist(center, p) for p in cloud.points]
    i = _argmax_lowest(ds)
    return i, float(ds[i])


def _klein_distance(a, b):
    return dist_klein_bounds(a, b, _RADIUS_EPS).midpoint


def _distance_fn(model):
    return {SPD: spd_dist, POINCARE_DISK: dist_kobayashi, KLEIN_DISK: _klein_distance}[model]


def enclosing_radius(center, cloud):
    """Largest model distance from ``center`` to the cloud."""
    dist = _distance_fn(cloud.model)
    return max(dist(center, p) for p in cloud.points)


def _init_center(cfg, cloud, default):
    init = default if cfg.init is None else cfg.init
    if isinstance(init, str):
        if init == "first":
            return np.array(cloud.points[0], dtype=np.complex128)
        if init == "origin":
            if cloud.model == SPD:
                return np.eye(cloud.dim, dtype=np.complex128)
            return np.zeros((cloud.dim, cloud.dim), dtype=np.complex128)
        raise ContractViolation(f"unknown init {init!r}")
    return np.array(init, dtype=np.complex128)


def _finish(model, center, cloud, l, trace, total, loop):
    radius = enclosing_radius(center, cloud)
    return EnclosingBall(model, center, radius, l, trace, total.snapshot(), loop)


def _require(cloud, model):
    if cloud.model != model:
        raise ContractViolation(f"expected a {model} cloud, got {cloud.model}")


def seb_spd(cloud, cfg=SebConfig()):
    """Badoiu-Clarkson on the SPD manifold, starting at the first point."""
    _require(cloud, SPD)
    with counting() as total:
        C = _spd(_init_center(cfg, cloud, "first"))
        trace = []
        l = 0
        with counting() as loop:
            for l in range(1, cfg.iterations + 1):
                i, r = farthest_point(C, cloud)
                if cfg.trace:
                    trace.append(TraceRecord(l, i, r, loop.snapshot()))
                t = cfg.step(l)
                step = t * r
                C = spd_geodesic_cut(C, cloud.points[i], t)
                if step < cfg.early_stop:
                    break
        loop_counts = loop.snapshot()
        return _finish(SPD, C.real, cloud, l, trace, total, loop_counts)


def seb_siegel_poincare(cloud, cfg=SebConfig()):
    """Badoiu-Clarkson in the Siegel-Poincare disk with recentering.

    The cloud is first translated so the starting center (by default the
    first point) sits at the origin. Each step then cuts the straight origin
    geodesic towards the farthest point and translates the whole cloud by
    ``Phi`` of the new center. The translations are undone at the end to
    report the center in the original coordinates.
    """
    _require(cloud, POINCARE_DISK)
    with counting() as total:
        c0 = _init_center(cfg, cloud, "first")
        pts = list(cloud.points)
        moves = []
        if np.any(c0 != 0):
            disk_point(c0)
            pts = [_phi(c0, p) for p in pts]
            moves.append(c0)
        trace = []
        l = 0
        with counting() as loop:
            for l in range(1, cfg.iterations + 1):
                norms = [operator_norm(p) for p in pts]
                i = _argmax_lowest(norms)
                r = 2.0 * math.atanh(norms[i])
                if cfg.trace:
                    trace.append(TraceRecord(l, i, r, loop.snapshot()))
                t = cfg.step(l)
                c = origin_alpha(norms[i], t) * pts[i]
                moves.append(c)
                pts = [_phi(c, p) for p in pts]
                if t * r < cfg.early_stop:
                    break
        loop_counts = loop.snapshot()
        center = np.zeros_like(c0)
        for c in reversed(moves):
            center = _phi_inv(c, center)
        return _finish(POINCARE_DISK, center, cloud, l, trace, total, loop_counts)


def seb_siegel_klein(cloud, cfg=SebConfig()):
    """Badoiu-Clarkson in the Siegel-Klein disk along straight segments.

    The bracket from the farthest-point search is reused for the cut, so a
    step costs only operator norms.
    """
    _require(cloud, KLEIN_DISK)
    with counting() as total:
        C = klein_point(_init_center(cfg, cloud, "first"))
        trace = []
        l = 0
        with counting() as loop:
            for l in range(1, cfg.iterations + 1):
                i, r, br = _klein_farthest(C, cloud.points, cfg.eps)
                if cfg.trace:
                    trace.append(TraceRecord(l, i, r, loop.snapshot()))
                if br is None:
                    # every point coincides with the center
                    break
                t = cfg.step(l)
                C = cut_from_bracket(C, cloud.points[i], br, t)
                if t * r < cfg.early_stop:
                    break
        loop_counts = loop.snapshot()
        return _finish(KLEIN_DISK, C, cloud, l, trace, total, loop_counts)


def solve_seb(cloud, cfg=SebConfig()):
    return {SPD: seb_spd, POINCARE_DISK: seb_siegel_poincare, KLEIN_DISK: seb_siegel_klein}[cloud.model](
        cloud, cfg
    )

