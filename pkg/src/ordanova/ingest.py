"""Lab x category count tables and the probability structures built on them."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


class TableError(ValueError):
    """Raised when a count table fails validation."""


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """M laboratories by K ordered categories of counts, every row summing to n.

    Column order is the ordinal order of the categories.
    """

    labels: tuple
    counts: np.ndarray
    categories: tuple = field(default=())

    def __post_init__(self):
        counts = np.array(self.counts)
        if counts.ndim != 2:
            raise TableError("counts must be a 2-d matrix (labs x categories)")
        if counts.size and not np.all(np.equal(np.mod(counts, 1), 0)):
            raise TableError("counts must be integers")
        counts = counts.astype(np.int64)
        M, K = counts.shape
        if M < 2:
            raise TableError(f"need at least 2 laboratories, got {M}")
        if K < 2:
            raise TableError(f"need at least 2 categories, got {K}")
        labels = tuple(str(lab) for lab in self.labels)
        if len(labels) != M:
            raise TableError(f"{len(labels)} labels for {M} rows")
        seen = set()
        for lab in labels:
            if lab in seen:
                raise TableError(f"duplicate lab label {lab!r}")
            seen.add(lab)
        for m, row in enumerate(counts):
            bad = np.flatnonzero(row < 0)
            if bad.size:
                raise TableError(
                    f"negative count in lab {labels[m]!r}, column {bad[0] + 1}"
                )
        sums = counts.sum(axis=1)
        if np.any(sums != sums[0]):
            m = int(np.flatnonzero(sums != sums[0])[0])
            raise TableError(
                f"unequal row sums: lab {labels[m]!r} has {sums[m]}, "
                f"lab {labels[0]!r} has {sums[0]}"
            )
        if sums[0] < 1:
            raise TableError("every laboratory must report at least one result")
        cats = tuple(self.categories) or tuple(f"cat{k + 1}" for k in range(K))
        if len(cats) != K:
            raise TableError(f"{len(cats)} category names for {K} columns")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "categories", cats)

    @property
    def M(self) -> int:
        return self.counts.shape[0]

    @property
    def K(self) -> int:
        return self.counts.shape[1]

    @property
    def n(self) -> int:
        return int(self.counts[0].sum())

    def __eq__(self, other):
        if not isinstance(other, ContingencyTable):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.categories == other.categories
            and np.array_equal(self.counts, other.counts)
        )

    def reversed_categories(self) -> "ContingencyTable":
        """Same table with the category order flipped (k -> K+1-k)."""
        return ContingencyTable(
            self.labels, self.counts[:, ::-1], tuple(reversed(self.categories))
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["lab", *self.categories])
        for lab, row in zip(self.labels, self.counts):
            writer.writerow([lab, *(int(c) for c in row)])
        return buf.getvalue()


@dataclass(frozen=True, eq=False)
class ProbabilityVector:
    """Category probabilities ``p`` and their cumulative sums ``F``."""

    p: np.ndarray
    F: np.ndarray = field(init=False)

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float).copy()
        if p.ndim != 1 or p.size < 2:
            raise ValueError("need a 1-d probability vector with K >= 2 entries")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise ValueError("probabilities must be finite and nonnegative")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
        F = np.cumsum(p)
        # exact top of the ladder; inverse-CDF sampling relies on F_K == 1
        F[-1] = 1.0
        F = np.minimum(F, 1.0)
        p.setflags(write=False)
        F.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "F", F)

    @property
    def K(self) -> int:
        return self.p.size

    @classmethod
    def parse(cls, text: str) -> "ProbabilityVector":
        """Parse ``"1/3,1/3,1/3"`` or ``"0.5,0.5"``; fractions are exact."""
        parts = [s.strip() for s in text.split(",") if s.strip()]
        try:
            vals = [Fraction(s) for s in parts]
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse probabilities {text!r}: {exc}") from None
        return cls(np.array([float(v) for v in vals]))

    def __repr__(self):
        return f"ProbabilityVector(p={self.p.tolist()})"


def parse_table(text: str) -> ContingencyTable:
    """Parse a wide CSV count table.

    The header is ``lab,cat1,...,catK`` and each following row holds one
    laboratory. Blank lines and lines starting with ``#`` are skipped.

    Raises
    ------
    TableError
        On empty input, too few labs or categories, non-integer or negative
        counts, duplicate labels or unequal row sums. The message names the
        offending row and column.
    """
    lines = [
        (i + 1, line)
        for i, line in enumerate(text.splitlines())
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise TableError("empty input")
    rows = list(csv.reader([line for _, line in lines]))
    header = [h.strip() for h in rows[0]]
    if len(header) < 3:
        raise TableError(
            f"line {lines[0][0]}: header needs a lab column and at least 2 categories"
        )
    K = len(header) - 1
    labels, counts = [], []
    for (lineno, _), row in zip(lines[1:], rows[1:]):
        if len(row) != K + 1:
            raise TableError(
                f"line {lineno}: expected {K + 1} fields, got {len(row)}"
            )
        lab = row[0].strip()
        vals = []
        for j, cell in enumerate(row[1:]):
            cell = cell.strip()
            try:
                v = int(cell)
            except ValueError:
                raise TableError(
                    f"line {lineno} (lab {lab!r}), column {header[j + 1]!r}: "
                    f"non-integer count {cell!r}"
                ) from None
            if v < 0:
                raise TableError(
                    f"line {lineno} (lab {lab!r}), column {header[j + 1]!r}: "
                    f"negative count {v}"
                )
            vals.append(v)
        labels.append(lab)
        counts.append(vals)
    if not counts:
        raise TableError("no laboratory rows after the header")
    return ContingencyTable(tuple(labels), np.array(counts, dtype=np.int64), tuple(header[1:]))


def read_table(path) -> ContingencyTable:
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read())


def lab_probabilities(table: ContingencyTable) -> np.ndarray:
    """Per-lab relative frequencies, shape (M, K)."""
    return table.counts / table.n


def pooled_probabilities(table: ContingencyTable) -> ProbabilityVector:
    """Pooled category probabilities: column totals over nM."""
    return ProbabilityVector(table.counts.sum(axis=0) / (table.n * table.M))


def lab_cumulative(table: ContingencyTable) -> np.ndarray:
    """Cumulative frequencies per lab, shape (M, K); every row ends at 1."""
    F = np.cumsum(table.counts, axis=1) / table.n
    F[:, -1] = 1.0
    return F
