"""Prototype selection policies: random, farthest-first traversal, subset farthest-first."""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .distance import Kernel, distance_matrix
from .errors import TooManyPrototypes
from .geometry import Dataset
from .rng import PortableRandom

DEFAULT_C = 3.0


class Policy(str, enum.Enum):
    RANDOM = "random"
    FFT = "fft"
    SFF = "sff"


@dataclass(frozen=True, eq=False)
class PrototypeSet:
    """Ordered prototypes with their indices into the source dataset."""

    indices: np.ndarray
    streamlines: Dataset
    policy: Policy
    seed: int
    # Size of the candidate pool searched (|S| for random/FFT, m for SFF).
    pool_size: int = field(default=0)

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        if not isinstance(other, PrototypeSet):
            return NotImplemented
        return (np.array_equal(self.indices, other.indices)
                and self.streamlines == other.streamlines
                and self.policy == other.policy and self.seed == other.seed)


def _check_p(dataset, p):
    p = int(p)
    if p < 1 or p > len(dataset):
        raise TooManyPrototypes(p, len(dataset))
    return p


def _make(dataset, indices, policy, seed, pool):
    indices = np.asarray(indices, dtype=np.int64)
    indices.flags.writeable = False
    return PrototypeSet(indices, dataset.subset(indices), Policy(policy), int(seed), pool)


def select_random(dataset, p, seed=0):
    """Draw ``p`` prototypes uniformly at random without replacement."""
    p = _check_p(dataset, p)
    rng = PortableRandom(seed)
    return _make(dataset, rng.sample(len(dataset), p), Policy.RANDOM, seed, len(dataset))


def _fft_indices(dataset, p, kernel, rng, start=None):
    n = len(dataset)
    first = rng.below(n) if start is None else int(start)
    if not 0 <= first < n:
        raise IndexError(f"start index {first} out of range for {n} objects")
    chosen = [first]
    # Current distance of each element to its nearest chosen prototype;
    # chosen elements are masked with -1 so they never win the argmax.
    nearest = distance_matrix(dataset, dataset.subset([first]), kernel)[:, 0].copy()
    nearest[first] = -1.0
    for _ in range(1, p):
        # argmax returns the first maximum, i.e. the smallest index on ties.
        nxt = int(np.argmax(nearest))
        chosen.append(nxt)
        col = distance_matrix(dataset, dataset.subset([nxt]), kernel)[:, 0]
        np.minimum(nearest, col, out=nearest)
        nearest[chosen] = -1.0
    return np.array(chosen, dtype=np.int64)


def select_fft(dataset, p, kernel=Kernel.MAM, seed=0, start=None):
    """Farthest-first traversal.

    The first prototype is drawn uniformly at random from ``seed`` (or forced
    to ``start``); each subsequent one is the unchosen element whose distance
    to its nearest chosen prototype is largest, ties going to the smallest
    index. Uses ``p * |S|`` kernel evaluations.
    """
    p = _check_p(dataset, p)
    rng = PortableRandom(seed)
    idx = _fft_indices(dataset, p, Kernel(kernel), rng, start)
    return _make(dataset, idx, Policy.FFT, seed, len(dataset))


def sff_subset_size(p, n, c=DEFAULT_C):
    """Candidate pool size ``ceil(c * p * ln p)`` clamped to ``[p, n]``.

    For ``p = 1`` the logarithm vanishes and ``max(p, ceil(c))`` is used.
    """
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    p = int(p)
    if p == 1:
        m = max(p, math.ceil(c))
    else:
        m = math.ceil(c * p * math.log(p))
    return int(min(max(m, p), n))


@dataclass(frozen=True)
class SffParams:
    p: int
    c: float = DEFAULT_C

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if self.p < 1:
            raise ValueError(f"p must be positive, got {self.p}")

    def subset_size(self, n):
        return sff_subset_size(self.p, n, self.c)


def select_sff(dataset, params, kernel=Kernel.MAM, seed=0, start=None):
    """Subset farthest-first: FFT over a random pool of ``m`` candidates.

    ``params`` is an :class:`SffParams` or a bare ``p``. The pool is drawn
    without replacement. When ``m`` covers the whole dataset no sampling
    happens and the result equals :func:`select_fft` with the same seed.
    ``start`` forces the first prototype, given as a position in the pool.
    Cost depends on ``p`` and ``c`` only, not on ``|S|``.
    """
    if not isinstance(params, SffParams):
        params = SffParams(int(params))
    p = _check_p(dataset, params.p)
    n = len(dataset)
    m = params.subset_size(n)
    rng = PortableRandom(seed)
    if m >= n:
        idx = _fft_indices(dataset, p, Kernel(kernel), rng, start)
    else:
        pool = rng.sample(n, m)
        local = _fft_indices(dataset.subset(pool), p, Kernel(kernel), rng, start)
        idx = pool[local]
    return _make(dataset, idx, Policy.SFF, seed, m)


def select(dataset, policy, p, kernel=Kernel.MAM, seed=0, c=DEFAULT_C, start=None):
    """Dispatch to the selection routine for ``policy``."""
    policy = Policy(policy)
    if policy is Policy.RANDOM:
        return select_random(dataset, p, seed)
    if policy is Policy.FFT:
        return select_fft(dataset, p, kernel, seed, start)
    return select_sff(dataset, SffParams(int(p), c), kernel, seed, start)


def kcenter_cost(dataset, prototypes, kernel=Kernel.MAM):
    """Covering radius: max over elements of the distance to the nearest prototype."""
    protos = prototypes.streamlines if isinstance(prototypes, PrototypeSet) else prototypes
    return float(distance_matrix(dataset, protos, kernel).min(axis=1).max())
