"""Points, streamlines and datasets.

A streamline is a ``(n_points, D)`` float64 array with ``n_points >= 1`` and
``D`` in {2, 3}; a single point is a length-1 streamline. A :class:`Dataset`
stores its streamlines packed into one contiguous ``points`` array plus an
``offsets`` array (streamline ``i`` is ``points[offsets[i]:offsets[i + 1]]``),
which is the layout the compiled distance kernels consume.
"""

from collections.abc import Sequence

import numpy as np

from .errors import (EmptyDataset, EmptyStreamline, MixedDimension,
                     NonFiniteCoordinate)

DIMENSIONS = (2, 3)


def as_streamline(points):
    """Coerce ``points`` to a ``(n, D)`` float64 array; a 1-D input is one point."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"streamline must be 2-D (n_points, D), got shape {arr.shape}")
    return arr


def validate(streamlines):
    """Check a dataset (or any sequence of streamlines) and return its dimension.

    Raises
    ------
    EmptyDataset
        No streamlines.
    EmptyStreamline
        A streamline has zero points.
    MixedDimension
        A streamline's dimension differs from the first one's, or is not 2 or 3.
    NonFiniteCoordinate
        A coordinate is NaN or infinite.
    """
    if isinstance(streamlines, Dataset):
        streamlines._check()
        return streamlines.dim
    if len(streamlines) == 0:
        raise EmptyDataset()
    dim = None
    for i, s in enumerate(streamlines):
        arr = as_streamline(s)
        if arr.shape[0] == 0:
            raise EmptyStreamline(i)
        if dim is None:
            dim = arr.shape[1]
            if dim not in DIMENSIONS:
                raise MixedDimension(i, expected="2 or 3", found=dim)
        elif arr.shape[1] != dim:
            raise MixedDimension(i, expected=dim, found=arr.shape[1])
        if not np.isfinite(arr).all():
            raise NonFiniteCoordinate(i)
    return dim


class Dataset(Sequence):
    """Immutable, validated collection of streamlines sharing one dimension.

    Indexing with an integer returns a read-only view of that streamline.
    """

    __slots__ = ("points", "offsets")

    def __init__(self, streamlines):
        arrays = [as_streamline(s) for s in streamlines]
        dim = validate(arrays)
        lengths = np.fromiter((a.shape[0] for a in arrays), dtype=np.int64,
                              count=len(arrays))
        offsets = np.zeros(len(arrays) + 1, dtype=np.int64)
        np.cumsum(lengths, out=offsets[1:])
        points = np.concatenate(arrays, axis=0) if arrays else np.empty((0, dim))
        self._set(points, offsets)

    @classmethod
    def from_packed(cls, points, offsets):
        """Build from a packed ``(total, D)`` array and ``N + 1`` offsets."""
        obj = cls.__new__(cls)
        obj._set(np.array(points, dtype=np.float64), np.array(offsets, dtype=np.int64))
        obj._check()
        return obj

    def _set(self, points, offsets):
        points = np.ascontiguousarray(points)
        offsets = np.ascontiguousarray(offsets)
        points.flags.writeable = False
        offsets.flags.writeable = False
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "offsets", offsets)

    def __setattr__(self, name, value):
        raise AttributeError("Dataset is immutable")

    def _check(self):
        n = len(self.offsets) - 1
        if n <= 0:
            raise EmptyDataset()
        if self.points.ndim != 2 or self.points.shape[1] not in DIMENSIONS:
            raise MixedDimension(0, expected="2 or 3", found=self.points.shape[-1])
        if self.offsets[0] != 0 or self.offsets[-1] != len(self.points):
            raise ValueError("offsets do not span the points array")
        lengths = np.diff(self.offsets)
        if (lengths <= 0).any():
            raise EmptyStreamline(int(np.flatnonzero(lengths <= 0)[0]))
        bad = ~np.isfinite(self.points).all(axis=1)
        if bad.any():
            first_point = int(np.flatnonzero(bad)[0])
            raise NonFiniteCoordinate(int(np.searchsorted(self.offsets, first_point,
                                                          side="right") - 1))

    @property
    def dim(self):
        return self.points.shape[1]

    @property
    def lengths(self):
        """Number of points of each streamline."""
        return np.diff(self.offsets)

    def __len__(self):
        return len(self.offsets) - 1

    def __getitem__(self, index):
        if isinstance(index, slice):
            return self.subset(np.arange(len(self))[index])
        n = len(self)
        if index < 0:
            index += n
        if not 0 <= index < n:
            raise IndexError(index)
        return self.points[self.offsets[index]:self.offsets[index + 1]]

    def subset(self, indices):
        """New dataset holding the streamlines at ``indices``, in that order."""
        indices = np.asarray(indices, dtype=np.int64)
        lengths = self.lengths[indices]
        offsets = np.zeros(len(indices) + 1, dtype=np.int64)
        np.cumsum(lengths, out=offsets[1:])
        if len(indices):
            points = np.concatenate([self[int(i)] for i in indices], axis=0)
        else:
            points = np.empty((0, self.dim))
        obj = Dataset.__new__(Dataset)
        obj._set(points, offsets)
        return obj

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.points, other.points))

    def __hash__(self):
        return hash((self.points.tobytes(), self.offsets.tobytes()))

    def __repr__(self):
        return f"Dataset(n={len(self)}, dim={self.dim}, points={len(self.points)})"


def as_dataset(obj):
    """Return ``obj`` unchanged if it is a Dataset, else build one from it."""
    if isinstance(obj, Dataset):
        return obj
    return Dataset(obj)
