"""Approximation quality of a dissimilarity projection.

Quality is the Pearson correlation, over pairs of objects, between the
original kernel distance and the Euclidean distance of the projected
vectors. :func:`run_experiment` repeats selection + projection + correlation
over seeds to produce mean/std curves per policy and number of prototypes.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .distance import Kernel, pair_distances
from .embedding import pair_deltas, project_all
from .errors import DissimError, LengthMismatch, ZeroVariance
from .rng import PortableRandom
from .selection import DEFAULT_C, Policy, select

DEFAULT_PAIR_COUNT = 100_000
DEFAULT_PAIR_SEED = 0


def _row_start(i, n):
    return i * (2 * n - i - 1) // 2


def pair_from_linear(k, n):
    """Map linear indices of the strict upper triangle to ``(i, j)`` with ``i < j``.

    Enumeration order matches ``numpy.triu_indices(n, 1)``.
    """
    k = np.asarray(k, dtype=np.int64)
    disc = (2 * n - 1) ** 2 - 8 * k.astype(np.float64)
    i = np.floor((2 * n - 1 - np.sqrt(disc)) / 2).astype(np.int64)
    i = np.clip(i, 0, n - 2)
    # Correct the float estimate, which can be off by one near row boundaries.
    for _ in range(2):
        i = np.where(_row_start(i + 1, n) <= k, i + 1, i)
        i = np.where(_row_start(i, n) > k, i - 1, i)
    j = k - _row_start(i, n) + i + 1
    return i, j


@dataclass(frozen=True)
class PairSampling:
    """Which object pairs enter a correlation or distortion estimate.

    ``count=None`` means all ``N(N-1)/2`` pairs. Otherwise ``count`` distinct
    pairs are drawn uniformly without replacement using ``seed`` and returned
    in the same order all-pairs enumeration would list them (so a sample that
    exhausts the pair set reproduces all-pairs exactly).
    """

    count: int | None = None
    seed: int = DEFAULT_PAIR_SEED

    def __post_init__(self):
        if self.count is not None and self.count < 2:
            raise ValueError(f"pair count must be at least 2, got {self.count}")

    @classmethod
    def all(cls):
        return cls(None)

    @classmethod
    def random(cls, count, seed=DEFAULT_PAIR_SEED):
        return cls(int(count), int(seed))

    @classmethod
    def default(cls, n, seed=DEFAULT_PAIR_SEED):
        return cls.random(max(2, min(n * (n - 1) // 2, DEFAULT_PAIR_COUNT)), seed)

    @classmethod
    def parse(cls, text, seed=DEFAULT_PAIR_SEED):
        """Parse ``"all"`` or ``"random:COUNT"``."""
        text = text.strip().lower()
        if text == "all":
            return cls.all()
        if text.startswith("random:"):
            return cls.random(int(text.split(":", 1)[1]), seed)
        raise ValueError(f"pairs must be 'all' or 'random:COUNT', got {text!r}")

    def describe(self):
        return "all" if self.count is None else f"random:{self.count}"

    def indices(self, n):
        """Index arrays ``(ii, jj)`` of the selected pairs among ``n`` objects."""
        total = n * (n - 1) // 2
        if total == 0:
            raise DissimError("need at least two objects to form a pair")
        if self.count is None:
            ii, jj = np.triu_indices(n, 1)
            return ii.astype(np.int64), jj.astype(np.int64)
        count = min(self.count, total)
        linear = np.sort(PortableRandom(self.seed).sample(total, count))
        return pair_from_linear(linear, n)


def pearson(xs, ys):
    """Sample Pearson correlation coefficient.

    Raises
    ------
    ZeroVariance
        If either sequence is constant.
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatch(x.shape, y.shape)
    if len(x) < 2:
        raise DissimError("pearson needs at least two values")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = np.dot(dx, dx)
    syy = np.dot(dy, dy)
    if sxx == 0:
        raise ZeroVariance("first argument")
    if syy == 0:
        raise ZeroVariance("second argument")
    r = np.dot(dx, dy) / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))


def distance_correlation(dataset, embedded, kernel=Kernel.MAM, pairs=None,
                         original=None):
    """Correlation between kernel distances and projected distances over pairs.

    ``pairs`` defaults to :meth:`PairSampling.default`. ``original`` may hold
    precomputed kernel distances for exactly those pairs.
    """
    pairs = pairs or PairSampling.default(len(dataset))
    ii, jj = pairs.indices(len(dataset))
    if original is None:
        original = pair_distances(dataset, ii, jj, kernel)
    return pearson(original, pair_deltas(embedded, ii, jj))


@dataclass
class ExperimentReport:
    """Correlation statistics for one (policy, p) over repetitions.

    ``wall_times`` are seconds spent in prototype selection per repetition.
    """

    policy: Policy
    p: int
    repetitions: int
    correlations: list = field(default_factory=list)
    seeds: list = field(default_factory=list)
    wall_times: list = field(default_factory=list)

    @property
    def mean(self):
        return float(np.mean(self.correlations))

    @property
    def std(self):
        if len(self.correlations) < 2:
            return 0.0
        return float(np.std(self.correlations, ddof=1))

    def rows(self):
        """One dict per repetition, keyed by the results CSV columns."""
        return [
            {"policy": self.policy.value, "p": self.p, "repetition": r, "seed": s,
             "correlation": c, "wall_time_ms": t * 1000.0}
            for r, (s, c, t) in enumerate(zip(self.seeds, self.correlations,
                                              self.wall_times))
        ]


def run_experiment(dataset, policy, p_values, repetitions=50, kernel=Kernel.MAM,
                   pairs=None, base_seed=0, c=DEFAULT_C):
    """Sweep ``p_values`` for one policy, ``repetitions`` runs each.

    Repetition ``r`` selects prototypes with seed ``base_seed + r``. Kernel
    distances over the sampled pairs do not depend on the prototypes, so they
    are computed once and shared by every repetition.
    """
    policy = Policy(policy)
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    pairs = pairs or PairSampling.default(len(dataset))
    ii, jj = pairs.indices(len(dataset))
    original = pair_distances(dataset, ii, jj, kernel)
    reports = []
    for p in p_values:
        report = ExperimentReport(policy, int(p), int(repetitions))
        for r in range(repetitions):
            seed = base_seed + r
            t0 = time.perf_counter()
            protos = select(dataset, policy, p, kernel, seed, c)
            elapsed = time.perf_counter() - t0
            embedded = project_all(dataset, protos, kernel)
            report.correlations.append(pearson(original, pair_deltas(embedded, ii, jj)))
            report.seeds.append(seed)
            report.wall_times.append(elapsed)
        reports.append(report)
    return reports
