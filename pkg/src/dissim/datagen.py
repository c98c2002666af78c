"""Synthetic datasets: a 2-D Gaussian point cloud and smooth 3-D polylines."""

from dataclasses import dataclass

import numpy as np

from .geometry import Dataset
from .rng import PortableRandom


@dataclass(frozen=True)
class GaussianCloudSpec:
    """``n`` points from a standard bivariate normal."""

    n: int = 50
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")


def generate_gaussian(spec):
    """Dataset of ``spec.n`` length-1 streamlines drawn i.i.d. from N(0, I) in 2-D."""
    rng = PortableRandom(spec.seed)
    points = rng.normal(2 * spec.n).reshape(spec.n, 2)
    return Dataset.from_packed(points, np.arange(spec.n + 1))


@dataclass(frozen=True)
class PolylineCloudSpec:
    """Parameters of the smooth random-walk polyline generator.

    Start points are uniform in the cube ``[0, extent]^3`` (mm). Each step has
    fixed length ``step``; its direction is the previous direction plus
    ``curvature`` times an isotropic Gaussian perturbation, renormalised.
    Small ``curvature`` gives nearly straight lines. ``jitter`` adds Gaussian
    noise of that standard deviation to every point after the walk.
    """

    n: int = 1000
    min_points: int = 20
    max_points: int = 100
    extent: float = 100.0
    step: float = 2.0
    curvature: float = 0.3
    jitter: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.min_points < 2 or self.max_points < self.min_points:
            raise ValueError("need 2 <= min_points <= max_points")
        if self.extent <= 0 or self.step <= 0:
            raise ValueError("extent and step must be positive")
        if self.curvature < 0 or self.jitter < 0:
            raise ValueError("curvature and jitter must be non-negative")


def _unit(v):
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def generate_polylines(spec):
    """Dataset of ``spec.n`` 3-D polylines, deterministic for ``spec.seed``."""
    rng = PortableRandom(spec.seed)
    counts = rng.integers(spec.min_points, spec.max_points, spec.n)
    offsets = np.zeros(spec.n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    points = np.empty((offsets[-1], 3))
    for i, count in enumerate(counts):
        start = rng.uniform(3) * spec.extent
        direction = _unit(rng.normal(3))
        noise = rng.normal(3 * (count - 1)).reshape(-1, 3)
        walk = np.empty((count, 3))
        walk[0] = start
        for k in range(1, count):
            direction = _unit(direction + spec.curvature * noise[k - 1])
            walk[k] = walk[k - 1] + spec.step * direction
        if spec.jitter > 0:
            walk += spec.jitter * rng.normal(3 * count).reshape(count, 3)
        points[offsets[i]:offsets[i + 1]] = walk
    return Dataset.from_packed(points, offsets)
