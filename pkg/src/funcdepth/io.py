"""CSV reading and writing for curves, depth tables and study reports.

Curve files have a header row ``label, t_1, ..., t_V`` followed by one
row per curve: an id, then ``V`` values. Numbers are written in shortest
round-trip form, so ``read_curves(write_curves(s))`` reproduces ``s``
exactly.
"""

import csv
import io

import numpy as np

from .exceptions import ParseError
from .sample import FunctionalSample

__all__ = [
    "fmt",
    "read_curves",
    "write_curves",
    "write_curve_rows",
    "write_rows",
    "depth_table_rows",
    "study_table_rows",
    "study_text",
    "ei_dump_rows",
    "agreement_rows",
    "agreement_correlation_rows",
]


def fmt(value):
    """Shortest decimal string that parses back to the same float."""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _parse_float(text, row, col):
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}", row=row, col=col) from None


def read_curves(source):
    """Load a curve CSV from a path or an open text file."""
    if hasattr(source, "read"):
        return _read(source)
    with open(source, newline="") as fh:
        return _read(fh)


def _read(fh):
    rows = [r for r in csv.reader(fh) if r and any(cell.strip() for cell in r)]
    if not rows:
        raise ParseError("empty file")
    header = rows[0]
    if len(header) < 3:
        raise ParseError("header needs a label and at least 2 abscissae", row=1)
    grid = [_parse_float(c, 1, j + 2) for j, c in enumerate(header[1:])]
    ids, values = [], []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(
                f"expected {len(header)} fields, found {len(row)}", row=i
            )
        ids.append(row[0].strip())
        values.append([_parse_float(c, i, j + 2) for j, c in enumerate(row[1:])])
    if not values:
        raise ParseError("no curve rows")
    return FunctionalSample(np.array(grid), np.array(values), ids)


def write_curves(sample, dest=None, label="id"):
    """Write a sample as CSV; returns the text when ``dest`` is None."""
    return write_curve_rows(sample.grid, sample.ids, sample.values, dest, label)


def write_curve_rows(grid, ids, rows, dest=None, label="id"):
    """Curve CSV for arbitrary rows, e.g. a single estimated curve."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([label, *map(fmt, grid)])
    for cid, row in zip(ids, rows):
        w.writerow([cid, *map(fmt, row)])
    return _emit(buf.getvalue(), dest)


def write_rows(header, rows, dest=None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
    return _emit(buf.getvalue(), dest)


def _emit(text, dest):
    if dest is None:
        return text
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", newline="") as fh:
            fh.write(text)
    return text


def depth_table_rows(ids, depths, ranks):
    return [(cid, d, r) for cid, d, r in zip(ids, depths, ranks)]


def study_table_rows(report):
    """One row per estimator, one ``"mean (sd)"`` cell per model."""
    header = ["method", *(f"M{m}" for m in report.config.models)]
    rows = []
    for label in report.row_labels:
        cells = [label]
        for m in report.config.models:
            t = report.tables[m]
            cells.append(f"{fmt(t.mean[label])} ({fmt(t.sd[label])})")
        rows.append(cells)
    return header, rows


def study_text(report):
    """Aligned plain-text rendering with the run settings echoed on top."""
    cfg = report.config
    lines = [
        "Adjusted integrated errors: mean (sd) over replications",
        f"n={cfg.n} q={fmt(cfg.q)} M={fmt(cfg.M)} alpha={fmt(cfg.alpha)} "
        f"R={cfg.R} V={cfg.V} K={cfg.K} seed={cfg.seed} "
        f"k_points={cfg.k_points} peak_length={fmt(cfg.peak_length)}",
        "",
    ]
    cols = [f"M{m}" for m in cfg.models]
    cells = {
        (label, m): f"{report.tables[m].mean[label]:.3f} ({report.tables[m].sd[label]:.3f})"
        for label in report.row_labels for m in cfg.models
    }
    width = max(14, *(len(c) for c in cells.values()))
    lw = max(len(label) for label in report.row_labels) + 2
    lines.append(" " * lw + "".join(c.rjust(width + 1) for c in cols))
    for label in report.row_labels:
        lines.append(
            label.ljust(lw)
            + "".join(cells[(label, m)].rjust(width + 1) for m in cfg.models)
        )
    return "\n".join(lines) + "\n"


def ei_dump_rows(report):
    """Raw integrated errors, one row per (model, replication)."""
    header = ["model", "replication", *report.row_labels]
    rows = []
    for m in report.config.models:
        for j, errs in enumerate(report.tables[m].raw):
            rows.append([m, j, *errs])
    return header, rows


def agreement_rows(report):
    header = ["position", "mean_rank", "sd_rank"]
    rows = [
        [p + 1, mu, sd]
        for p, (mu, sd) in enumerate(zip(report.mean_rank, report.sd_rank))
    ]
    return header, rows


def agreement_correlation_rows(reports):
    header = ["method", "repeat", "spearman"]
    rows = []
    for label, rep in reports.items():
        for b, rho in enumerate(rep.correlations):
            rows.append([label, b, rho])
    return header, rows
