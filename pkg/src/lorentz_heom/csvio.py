"""CSV emission and parsing.

Numbers are written with ``repr(float)``, the shortest string that parses
back to the same double, so write/read round-trips exactly and identical
runs produce byte-identical files.
"""

import io

import numpy as np

SERIES_HEADER = ("t", "concurrence", "p11", "p10", "p01", "p00",
                 "trace_error", "min_eigenvalue", "purity")
SWEEP_HEADER = ("gamma", "steady_concurrence", "converged", "depth")


def fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write(target, header, rows):
    text = io.StringIO(newline="")
    text.write(",".join(header) + "\n")
    for row in rows:
        text.write(",".join(fmt(v) for v in row) + "\n")
    data = text.getvalue()
    if hasattr(target, "write"):
        target.write(data)
    else:
        with open(target, "w", newline="") as fh:
            fh.write(data)
    return data


def series_rows(series):
    if series.populations.shape[1] != 4:
        raise ValueError("the CSV schema covers two-qubit states only")
    for i, t in enumerate(series.t):
        yield (t, series.concurrence[i], *series.populations[i],
               series.trace_error[i], series.min_eigenvalue[i], series.purity[i])


def write_series(target, series):
    """Write a TimeSeries with the fixed per-sample header; returns the text."""
    return _write(target, SERIES_HEADER, series_rows(series))


def write_table(target, header, rows):
    return _write(target, header, rows)


def read_table(source):
    """Parse a CSV written here into ``{column: ndarray}`` (header order kept)."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, newline="") as fh:
            text = fh.read()
    lines = text.rstrip("\n").split("\n")
    header = lines[0].split(",")
    cols = list(zip(*(line.split(",") for line in lines[1:]))) or [()] * len(header)

    def convert(values):
        if values and all(v in ("true", "false") for v in values):
            return np.array([v == "true" for v in values])
        return np.array([float(v) for v in values])

    return {name: convert(col) for name, col in zip(header, cols)}
