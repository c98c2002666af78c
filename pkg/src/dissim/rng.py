"""Portable seeded random numbers.

Every random draw in the package goes through :class:`PortableRandom`. It
reads raw 64-bit words from numpy's PCG64 bit generator (seeded through
``SeedSequence``), whose output stream numpy keeps stable across versions
and platforms. All derived quantities (uniform doubles, bounded integers,
normal deviates, samples without replacement) are computed here from those
raw words with fixed, documented transforms, so they do not depend on the
``numpy.random.Generator`` method implementations, which numpy is allowed to
change between releases.
"""

import numpy as np

_TWO_POW_64 = 1 << 64


class PortableRandom:
    """Deterministic random stream for a given non-negative integer seed."""

    def __init__(self, seed):
        seed = int(seed)
        if seed < 0:
            raise ValueError(f"seed must be non-negative, got {seed}")
        self.seed = seed
        self._bits = np.random.PCG64(seed)

    def raw(self, size):
        """Return ``size`` raw unsigned 64-bit words."""
        return self._bits.random_raw(size)

    def uniform(self, size):
        """Uniform doubles in [0, 1) built from the top 53 bits of each word."""
        return (self.raw(size) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def below(self, n):
        """Unbiased integer in ``[0, n)`` by rejection sampling."""
        n = int(n)
        if n <= 0:
            raise ValueError("upper bound must be positive")
        limit = _TWO_POW_64 - (_TWO_POW_64 % n)
        while True:
            r = int(self.raw(1)[0])
            if r < limit:
                return r % n

    def integers(self, low, high, size):
        """``size`` independent integers uniform on the closed range [low, high]."""
        return np.array([low + self.below(high - low + 1) for _ in range(size)],
                        dtype=np.int64)

    def normal(self, size):
        """Standard normal deviates via the Box-Muller transform.

        Each pair of uniforms ``(u1, u2)`` yields two deviates
        ``sqrt(-2 ln(1 - u1)) * (cos, sin)(2 pi u2)``.
        """
        size = int(size)
        half = (size + 1) // 2
        u = self.uniform(2 * half).reshape(half, 2)
        radius = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
        angle = 2.0 * np.pi * u[:, 1]
        out = np.empty((half, 2))
        out[:, 0] = radius * np.cos(angle)
        out[:, 1] = radius * np.sin(angle)
        return out.reshape(-1)[:size]

    def sample(self, n, k):
        """Ordered sample of ``k`` distinct integers from ``range(n)``.

        Partial Fisher-Yates shuffle over a sparse swap table, so the cost is
        O(k) regardless of ``n``. Every ordered k-subset is equally likely.
        """
        n, k = int(n), int(k)
        if not 0 <= k <= n:
            raise ValueError(f"cannot sample {k} distinct items from {n}")
        swapped = {}
        out = np.empty(k, dtype=np.int64)
        for i in range(k):
            j = i + self.below(n - i)
            vi = swapped.get(i, i)
            vj = swapped.get(j, j)
            out[i] = vj
            swapped[j] = vi
        return out
