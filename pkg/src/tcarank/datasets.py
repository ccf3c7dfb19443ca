"""Reading and writing ranking files.

Three formats:

``order-lines``
    One ballot per line, 0-based item indices most-preferred first.  A line
    may carry a leading count (``count i1 .. id``) or a count followed by an
    echo of ``d`` (``count d i1 .. id``).  ``#`` starts a comment.  A file
    whose first data line has exactly two tokens (``d`` and a flag) is read
    in the dialect of the public sushi files, where every following line
    starts with two bookkeeping tokens that are ignored.
``csv-rankings``
    Header of item labels; each cell is the 1-based rank position of that
    item on the ballot.
``csv-borda``
    Header of item labels; each cell is the Borda score itself.
"""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, InputError, NonPermutationRow, ParseError
from .ranks import Profile

FORMATS = ("order-lines", "csv-rankings", "csv-borda")


@dataclass(frozen=True)
class DatasetSpec:
    """Where a profile lives and how to read it.

    ``labels`` is ``"header"`` (csv only), ``"sidecar"`` (``<path>.items``,
    one label per line), ``"auto"`` (``j1..jd``) or an explicit sequence.
    """

    path: str
    format: str = "order-lines"
    labels: object = "auto"
    d: int | None = None


def _ints(tokens, line):
    out = []
    for col, tok in enumerate(tokens, 1):
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"not an integer: {tok!r}", line, col) from None
    return out


def _is_perm(xs):
    return sorted(xs) == list(range(len(xs)))


def _split(nums, d, line):
    """(count, ordering) from one order-lines record of known dimension."""
    k = len(nums)
    if k == d:
        return 1, nums
    if k == d + 1:
        return nums[0], nums[1:]
    if k == d + 2 and nums[1] == d:
        return nums[0], nums[2:]
    raise DimensionMismatch(f"expected {d} item indices, got {k} tokens", line)


def _fits(records, d):
    try:
        for ln, nums in records:
            _, order = _split(nums, d, ln)
            if not _is_perm(order):
                return False
    except DimensionMismatch:
        return False
    return True


def _infer_d(records):
    """Smallest-surprise dimension: plain, then count+echo, then count+ordering."""
    k = len(records[0][1])
    for d in (k, k - 2, k - 1):
        if d >= 2 and _fits(records, d):
            return d
    return k


def read_order_lines(text, d=None):
    """Parse order-lines text into (orderings, counts)."""
    records = []
    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            records.append((ln, _ints(body, ln)))
    if not records:
        raise InputError("no ballots found")
    skip = 0
    if (len(records[0][1]) == 2 and len(records) > 1
            and len(records[1][1]) == records[0][1][0] + 2):
        hdr_d = records[0][1][0]
        if d is not None and d != hdr_d:
            raise DimensionMismatch(f"header says d={hdr_d}, caller says d={d}", records[0][0])
        d, skip = hdr_d, 2
        records = records[1:]
    if d is None:
        d = _infer_d(records)
    orders, counts = [], []
    for ln, nums in records:
        if skip:
            if len(nums) != d + skip:
                raise DimensionMismatch(f"expected {d + skip} tokens, got {len(nums)}", ln)
            count, order = 1, nums[skip:]
        else:
            count, order = _split(nums, d, ln)
        if count < 1:
            raise ParseError(f"count must be positive, got {count}", ln, 1)
        if not _is_perm(order):
            raise NonPermutationRow(f"{order} is not a permutation of 0..{d - 1}", ln)
        orders.append(order)
        counts.append(count)
    return np.array(orders, dtype=np.int64), np.array(counts, dtype=np.int64)


def _borda_from_orders(orders, counts):
    n, d = orders.shape
    rows = np.empty_like(orders)
    np.put_along_axis(rows, orders, np.arange(d - 1, -1, -1)[None, :].repeat(n, 0), axis=1)
    return np.repeat(rows, counts, axis=0)


def _read_csv(text):
    reader = csv.reader(io.StringIO(text))
    header, body = None, []
    for ln, row in enumerate(reader, 1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        if header is None:
            header = [c.strip() for c in row]
            continue
        if len(row) != len(header):
            raise DimensionMismatch(f"expected {len(header)} cells, got {len(row)}", ln)
        body.append((ln, _ints([c.strip() for c in row], ln)))
    if header is None or not body:
        raise InputError("csv input has no data rows")
    return header, body


def read_csv_rankings(text):
    header, body = _read_csv(text)
    d = len(header)
    rows = []
    for ln, ranks in body:
        if sorted(ranks) != list(range(1, d + 1)):
            raise NonPermutationRow(f"rank positions {ranks} are not a permutation of 1..{d}", ln)
        rows.append([d - r for r in ranks])
    return header, np.array(rows, dtype=np.int64)


def read_csv_borda(text):
    header, body = _read_csv(text)
    rows = []
    for ln, scores in body:
        if not _is_perm(scores):
            raise NonPermutationRow(f"scores {scores} are not a permutation of "
                                    f"0..{len(scores) - 1}", ln)
        rows.append(scores)
    return header, np.array(rows, dtype=np.int64)


def _labels(spec, d, header=None):
    lab = spec.labels
    if lab == "header":
        if header is None:
            raise InputError("order-lines files carry no header labels")
        return tuple(header)
    if lab == "sidecar":
        side = Path(str(spec.path) + ".items")
        names = [x.strip() for x in side.read_text(encoding="utf-8").splitlines() if x.strip()]
        if len(names) != d:
            raise DimensionMismatch(f"{side} lists {len(names)} labels for {d} items")
        return tuple(names)
    if lab == "auto" or lab is None:
        return tuple(header) if header is not None else tuple(f"j{k + 1}" for k in range(d))
    names = tuple(str(x) for x in lab)
    if len(names) != d:
        raise DimensionMismatch(f"{len(names)} labels given for {d} items")
    return names


def parse_text(text, format="order-lines", labels="auto", d=None, path=""):
    spec = DatasetSpec(path, format, labels, d)
    return _parse(spec, text)


def _parse(spec, text):
    if spec.format == "order-lines":
        orders, counts = read_order_lines(text, spec.d)
        rows = _borda_from_orders(orders, counts)
        return Profile(_labels(spec, rows.shape[1]), rows)
    if spec.format == "csv-rankings":
        header, rows = read_csv_rankings(text)
    elif spec.format == "csv-borda":
        header, rows = read_csv_borda(text)
    else:
        raise InputError(f"unknown format {spec.format!r}; expected one of {FORMATS}")
    return Profile(_labels(spec, rows.shape[1], header), rows)


def parse_dataset(spec: DatasetSpec) -> Profile:
    with open(spec.path, encoding="utf-8") as fh:
        return _parse(spec, fh.read())


def write_csv_borda(p: Profile, dest):
    """Write ``p`` as csv-borda to a path or text stream."""
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            return write_csv_borda(p, fh)
    w = csv.writer(dest, lineterminator="\n")
    w.writerow(p.items)
    w.writerows(p.rows.tolist())


def env_dataset(var, format="order-lines", labels="auto"):
    """DatasetSpec from an environment variable holding a path, or None."""
    path = os.environ.get(var)
    if not path or not os.path.exists(path):
        return None
    return DatasetSpec(path, format, labels)
