"""Text streamline files and CSV outputs.

Streamline file layout (UTF-8, LF line endings)::

    # dim=3 count=2
    0.5 1.0 2.0
    0.6 1.1 2.1

    10.0 10.0 10.0

One point per line as whitespace-separated decimals, streamlines separated by
exactly one blank line, optional ``# dim=D count=N`` header. The writer emits
17 significant digits so reading reproduces every float64 exactly.
"""

import csv
import re

import numpy as np

from .errors import EmptyDataset, ParseError
from .geometry import DIMENSIONS, Dataset

RESULT_COLUMNS = ("policy", "p", "repetition", "seed", "correlation", "wall_time_ms")
BENCH_COLUMNS = ("policy", "p", "size", "seed", "pool_size", "wall_time_ms")

_HEADER = re.compile(r"#\s*dim=(\d+)\s+count=(\d+)\s*$")


def parse_streamlines(text):
    """Parse the streamline text format into a validated Dataset."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    header_dim = header_count = None
    streamlines = []
    current = []
    dim = None
    blank_run = False
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r")
        stripped = line.strip()
        if stripped.startswith("#"):
            m = _HEADER.match(stripped)
            if lineno != 1 or m is None:
                raise ParseError(lineno, "comments are only allowed as the "
                                         "'# dim=D count=N' header on line 1")
            header_dim, header_count = int(m.group(1)), int(m.group(2))
            continue
        if not stripped:
            if blank_run or not current:
                raise ParseError(lineno, "empty streamline (consecutive or leading blank lines)")
            streamlines.append(np.array(current))
            current = []
            blank_run = True
            continue
        blank_run = False
        try:
            coords = [float(tok) for tok in stripped.split()]
        except ValueError as exc:
            raise ParseError(lineno, f"not a number: {exc}") from None
        if dim is None:
            dim = len(coords)
            if dim not in DIMENSIONS:
                raise ParseError(lineno, f"points must have 2 or 3 coordinates, got {dim}")
        elif len(coords) != dim:
            raise ParseError(lineno, f"expected {dim} coordinates, got {len(coords)}")
        current.append(coords)
    if current:
        streamlines.append(np.array(current))
    if not streamlines:
        raise EmptyDataset()
    if header_dim is not None and header_dim != dim:
        raise ParseError(1, f"header declares dim={header_dim} but points have {dim}")
    if header_count is not None and header_count != len(streamlines):
        raise ParseError(1, f"header declares count={header_count} "
                            f"but file has {len(streamlines)} streamlines")
    return Dataset(streamlines)


def read_streamlines(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_streamlines(fh.read())


def format_streamlines(dataset):
    blocks = [f"# dim={dataset.dim} count={len(dataset)}\n"]
    for i in range(len(dataset)):
        body = "".join(" ".join(f"{v:.17g}" for v in pt) + "\n" for pt in dataset[i])
        blocks.append(body if i == 0 else "\n" + body)
    return "".join(blocks)


def write_streamlines(dataset, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_streamlines(dataset))


def write_indices(indices, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(f"{int(i)}\n" for i in indices)


def read_indices(path):
    with open(path, encoding="utf-8") as fh:
        return np.array([int(line) for line in fh if line.strip()], dtype=np.int64)


def write_matrix_csv(matrix, fh):
    """Write an ``N x p`` embedding, header ``proto_0..proto_{p-1}``."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow([f"proto_{k}" for k in range(matrix.shape[1])])
    for row in matrix:
        writer.writerow([f"{v:.17g}" for v in row])


def write_rows_csv(rows, columns, fh):
    writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (f"{v:.17g}" if isinstance(v, float) else v)
                         for k, v in row.items()})


def write_results_csv(reports, fh, include_times=True):
    """Serialise experiment reports, one row per (policy, p, repetition).

    With ``include_times=False`` the wall-time column is written as 0 so the
    file is byte-identical across runs with the same seed.
    """
    rows = []
    for report in reports:
        for row in report.rows():
            if not include_times:
                row["wall_time_ms"] = 0.0
            rows.append(row)
    write_rows_csv(rows, RESULT_COLUMNS, fh)


def read_results_csv(fh):
    reader = csv.DictReader(fh)
    out = []
    for row in reader:
        out.append({"policy": row["policy"], "p": int(row["p"]),
                    "repetition": int(row["repetition"]), "seed": int(row["seed"]),
                    "correlation": float(row["correlation"]),
                    "wall_time_ms": float(row["wall_time_ms"])})
    return out
