"""Dissimilarity projection onto a prototype set.

An object is mapped to the vector of its kernel distances to the ``p``
prototypes. Distances between projected objects are plain Euclidean norms of
the difference vectors; pass ``normalized=True`` to divide them by ``sqrt(p)``
when comparing embeddings of different sizes (not part of the original
definition, off by default).
"""

from dataclasses import dataclass

import numpy as np

from .distance import Kernel, distance_matrix, pair_distances
from .errors import LengthMismatch
from .geometry import as_streamline


@dataclass(frozen=True, eq=False)
class EmbeddedDataset:
    """``N x p`` matrix of projected objects and the prototypes that produced it."""

    vectors: np.ndarray
    prototypes: object

    @property
    def p(self):
        return self.vectors.shape[1]

    def __len__(self):
        return self.vectors.shape[0]


def _protos(prototypes):
    return getattr(prototypes, "streamlines", prototypes)


def project(x, prototypes, kernel=Kernel.MAM):
    """Vector of kernel distances from streamline ``x`` to each prototype."""
    return distance_matrix([as_streamline(x)], _protos(prototypes), kernel)[0]


def project_all(dataset, prototypes, kernel=Kernel.MAM):
    """Project every streamline of ``dataset``; row ``i`` equals ``project(dataset[i])``."""
    vectors = distance_matrix(dataset, _protos(prototypes), kernel)
    vectors.flags.writeable = False
    return EmbeddedDataset(vectors, prototypes)


def delta(u, v, normalized=False):
    """Euclidean distance between two projected vectors."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise LengthMismatch(u.shape, v.shape)
    out = float(np.sqrt(np.sum((u - v) ** 2)))
    if normalized:
        out /= np.sqrt(len(u))
    return out


def pair_deltas(vectors, ii, jj, normalized=False):
    """Vectorised :func:`delta` over index pairs of an ``N x p`` matrix."""
    vectors = getattr(vectors, "vectors", vectors)
    diff = vectors[ii] - vectors[jj]
    out = np.sqrt(np.sum(diff ** 2, axis=1))
    if normalized:
        out /= np.sqrt(vectors.shape[1])
    return out


@dataclass(frozen=True)
class Distortion:
    """Empirical distortion over a set of object pairs.

    ``c`` is the largest ratio ``d / Delta`` over pairs with ``d > 0`` (the
    smallest ``c`` with ``Delta >= d / c``); it is ``None`` when some pair has
    ``Delta = 0`` but ``d > 0``. ``violations`` counts pairs with
    ``Delta > d``, which unscaled projections with ``p > 1`` can produce even
    for metric kernels.
    """

    c: float | None
    violations: int
    pairs: int


def empirical_distortion(dataset, embedded, kernel=Kernel.MAM, pairs=None,
                         normalized=False):
    """Measure distortion of ``embedded`` against the original kernel distances.

    ``pairs`` is a :class:`~dissim.evaluation.PairSampling`; all pairs by default.
    """
    from .evaluation import PairSampling

    pairs = pairs or PairSampling.all()
    ii, jj = pairs.indices(len(dataset))
    d = pair_distances(dataset, ii, jj, kernel)
    dd = pair_deltas(embedded, ii, jj, normalized)
    violations = int(np.count_nonzero(dd > d))
    keep = d > 0
    if not keep.any():
        return Distortion(1.0, violations, len(d))
    if (dd[keep] == 0).any():
        return Distortion(None, violations, len(d))
    c = float(np.max(d[keep] / dd[keep]))
    return Distortion(c, violations, len(d))
