"""Distance kernels between streamlines.

Two kernels are provided: plain Euclidean distance between points (length-1
streamlines) and the symmetric minimum average distance (MAM)::

    delta(a, b) = mean over x in a of  min over y in b of ||x - y||
    mam(a, b)   = (delta(a, b) + delta(b, a)) / 2

Nearest-point search is exhaustive. MAM is not a metric and no triangle
inequality is assumed anywhere.

All matrix routines are compiled with numba and parallelised over rows. Every
entry is produced by the same scalar routine regardless of thread count, so
results are bit-identical to calling :func:`mam` / :func:`euclidean` pair by
pair.
"""

import enum

import numba
import numpy as np
from numba import njit, prange

from .errors import DimensionMismatch, KernelError
from .geometry import Dataset, as_streamline


class Kernel(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    MAM = "mam"


@njit(cache=True, inline="always")
def _sqdist(a, i, b, j):
    s = 0.0
    for k in range(a.shape[1]):
        t = a[i, k] - b[j, k]
        s += t * t
    return s


@njit(cache=True)
def _mam_directed_pair(a, b):
    total = 0.0
    for i in range(a.shape[0]):
        best = np.inf
        for j in range(b.shape[0]):
            s = _sqdist(a, i, b, j)
            if s < best:
                best = s
        total += np.sqrt(best)
    return total / a.shape[0]


@njit(cache=True)
def _mam_pair(a, b):
    # One pass over the point-pair grid fills both nearest-neighbour tables.
    # Squared distances are symmetric bit-for-bit, so swapping a and b swaps
    # the two directed sums exactly and the result is exactly symmetric.
    na = a.shape[0]
    nb = b.shape[0]
    row = np.full(na, np.inf)
    col = np.full(nb, np.inf)
    for i in range(na):
        for j in range(nb):
            s = _sqdist(a, i, b, j)
            if s < row[i]:
                row[i] = s
            if s < col[j]:
                col[j] = s
    da = 0.0
    for i in range(na):
        da += np.sqrt(row[i])
    db = 0.0
    for j in range(nb):
        db += np.sqrt(col[j])
    return 0.5 * (da / na + db / nb)


@njit(cache=True)
def _euclid_pair(a, b):
    return np.sqrt(_sqdist(a, 0, b, 0))


@njit(cache=True, parallel=True)
def _mam_matrix(rp, ro, cp, co):
    nr = ro.shape[0] - 1
    nc = co.shape[0] - 1
    out = np.empty((nr, nc))
    for i in prange(nr):
        a = rp[ro[i]:ro[i + 1]]
        for j in range(nc):
            out[i, j] = _mam_pair(a, cp[co[j]:co[j + 1]])
    return out


@njit(cache=True, parallel=True)
def _euclid_matrix(rp, cp):
    nr = rp.shape[0]
    nc = cp.shape[0]
    out = np.empty((nr, nc))
    for i in prange(nr):
        for j in range(nc):
            out[i, j] = np.sqrt(_sqdist(rp, i, cp, j))
    return out


@njit(cache=True, parallel=True)
def _mam_pairs(points, offsets, ii, jj):
    out = np.empty(ii.shape[0])
    for k in prange(ii.shape[0]):
        i = ii[k]
        j = jj[k]
        out[k] = _mam_pair(points[offsets[i]:offsets[i + 1]],
                           points[offsets[j]:offsets[j + 1]])
    return out


@njit(cache=True, parallel=True)
def _euclid_pairs(points, ii, jj):
    out = np.empty(ii.shape[0])
    for k in prange(ii.shape[0]):
        out[k] = np.sqrt(_sqdist(points, ii[k], points, jj[k]))
    return out


def set_threads(n):
    """Cap the number of worker threads used by the compiled kernels."""
    numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


def _pair_check(a, b):
    a = as_streamline(a)
    b = as_streamline(b)
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatch(a.shape[1], b.shape[1])
    if a.shape[0] == 0 or b.shape[0] == 0:
        raise KernelError("streamlines must contain at least one point")
    return a, b


def euclidean(a, b):
    """Euclidean distance between two points of equal dimension."""
    a, b = _pair_check(a, b)
    if a.shape[0] != 1 or b.shape[0] != 1:
        raise KernelError("euclidean kernel accepts single points only")
    return float(_euclid_pair(a, b))


def mam_directed(a, b):
    """Directed minimum average distance: mean distance from points of ``a`` to ``b``.

    Not symmetric in general.
    """
    a, b = _pair_check(a, b)
    return float(_mam_directed_pair(a, b))


def mam(a, b):
    """Symmetric minimum average distance between two streamlines."""
    a, b = _pair_check(a, b)
    return float(_mam_pair(a, b))


def kernel_function(kernel):
    """Scalar callable for ``kernel``."""
    return {Kernel.EUCLIDEAN: euclidean, Kernel.MAM: mam}[Kernel(kernel)]


def _require_points(ds, label):
    if (ds.lengths != 1).any():
        raise KernelError(f"euclidean kernel requires length-1 streamlines in {label}")


def _packed(obj):
    if isinstance(obj, Dataset):
        return obj.points, obj.offsets, obj.lengths
    arrays = [as_streamline(s) for s in obj]
    if not arrays:
        return None
    for i, arr in enumerate(arrays):
        if arr.shape[0] == 0:
            raise KernelError(f"streamline {i} has no points")
        if arr.shape[1] != arrays[0].shape[1]:
            raise DimensionMismatch(arrays[0].shape[1], arr.shape[1])
    lengths = np.array([a.shape[0] for a in arrays], dtype=np.int64)
    offsets = np.zeros(len(arrays) + 1, dtype=np.int64)
    np.cumsum(lengths, out=offsets[1:])
    return np.ascontiguousarray(np.concatenate(arrays)), offsets, lengths


def distance_matrix(rows, cols, kernel=Kernel.MAM):
    """Matrix of kernel values, entry ``(i, j) = kernel(rows[i], cols[j])``.

    Parameters
    ----------
    rows, cols : Dataset or sequence of array_like
        Streamlines of a common dimension. Either side may be empty, giving a
        matrix with zero rows or columns.
    kernel : Kernel or str
        ``"mam"`` or ``"euclidean"`` (the latter only on length-1 streamlines).

    Returns
    -------
    ndarray of shape (len(rows), len(cols))
    """
    kernel = Kernel(kernel)
    r = _packed(rows)
    c = _packed(cols)
    if r is None or c is None:
        return np.empty((0 if r is None else len(r[2]), 0 if c is None else len(c[2])))
    rp, ro, rl = r
    cp, co, cl = c
    if rp.shape[1] != cp.shape[1]:
        raise DimensionMismatch(rp.shape[1], cp.shape[1])
    if kernel is Kernel.EUCLIDEAN:
        if (rl != 1).any() or (cl != 1).any():
            raise KernelError("euclidean kernel accepts single points only")
        return _euclid_matrix(rp, cp)
    return _mam_matrix(rp, ro, cp, co)


def pair_distances(dataset, ii, jj, kernel=Kernel.MAM):
    """Kernel values for the index pairs ``(ii[k], jj[k])`` of one dataset."""
    kernel = Kernel(kernel)
    ii = np.ascontiguousarray(ii, dtype=np.int64)
    jj = np.ascontiguousarray(jj, dtype=np.int64)
    if kernel is Kernel.EUCLIDEAN:
        _require_points(dataset, "dataset")
        return _euclid_pairs(dataset.points, ii, jj)
    return _mam_pairs(dataset.points, dataset.offsets, ii, jj)
