"""Edge-list and label file parsing, density, and CSV output.

File formats (all UTF-8, LF newlines):

* Edge list: one edge per line, ``i j`` or ``i j w``. Fields are separated
  by whitespace or commas (auto-detected from the first data line unless
  pinned in ParseOptions). Lines starting with ``#`` and blank lines are
  skipped. Missing weights default to 1. Indices may be 0- or 1-based.
* Labels: either one label per line (line number = node id) or
  ``node label`` pairs; the form is auto-detected from the column count.
  ``-1`` marks an unlabeled node; in pair form, unmentioned nodes are
  unlabeled.
* Embedding: CSV, one row per node, K columns, shortest round-trip
  decimal representation of each value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

from .embedding import UNLABELED, LabelVector
from .errors import NumericalDomainError, ParseError, StructuralError
from .sparse import CsrMatrix

_COMMENT_PREFIX = "#"


@dataclass
class ParseOptions:
    """Knobs for the text parsers."""

    delimiter: str = "auto"  # "auto" | "whitespace" | "comma"
    index_base: int = 0
    directed: bool = False
    default_weight: float = 1.0

    def __post_init__(self):
        if self.delimiter not in ("auto", "whitespace", "comma"):
            raise StructuralError(f"unknown delimiter mode {self.delimiter!r}")
        if self.index_base not in (0, 1):
            raise StructuralError("index_base must be 0 or 1")


@dataclass
class EdgeList:
    """Raw (i, j, weight) triplets plus the node universe they live in."""

    n_nodes: int
    rows: np.ndarray = field(default_factory=lambda: np.empty(0, np.int64))
    cols: np.ndarray = field(default_factory=lambda: np.empty(0, np.int64))
    weights: np.ndarray = field(default_factory=lambda: np.empty(0, np.float64))
    directed: bool = False

    def __post_init__(self):
        self.rows = np.ascontiguousarray(self.rows, dtype=np.int64)
        self.cols = np.ascontiguousarray(self.cols, dtype=np.int64)
        self.weights = np.ascontiguousarray(self.weights, dtype=np.float64)
        if not (self.rows.shape == self.cols.shape == self.weights.shape):
            raise StructuralError("edge arrays must have equal length")
        if self.rows.size:
            hi = max(int(self.rows.max()), int(self.cols.max()))
            lo = min(int(self.rows.min()), int(self.cols.min()))
            if lo < 0 or hi >= self.n_nodes:
                raise StructuralError(
                    f"edge endpoint outside node range [0, {self.n_nodes})"
                )
            if not np.isfinite(self.weights).all():
                raise StructuralError("edge weights must be finite")

    @property
    def n_edges(self) -> int:
        return int(self.rows.shape[0])

    def to_csr(self) -> CsrMatrix:
        """Adjacency matrix. Undirected lists are symmetrized: each
        triplet contributes A_ij and A_ji (self-loops contribute once)."""
        rows, cols, weights = self.rows, self.cols, self.weights
        if not self.directed:
            off_diag = rows != cols
            rows, cols = (
                np.concatenate([rows, cols[off_diag]]),
                np.concatenate([cols, rows[off_diag]]),
            )
            weights = np.concatenate([weights, weights[off_diag]])
        # endpoints and weights were validated when this EdgeList was built
        return CsrMatrix.from_triplets(
            rows, cols, weights, self.n_nodes, self.n_nodes, check=False
        )


def _data_lines(source: Iterable[str]):
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith(_COMMENT_PREFIX):
            continue
        yield line_no, line


def _tokenize(line: str, delimiter: str) -> list[str]:
    if delimiter == "comma":
        return [t.strip() for t in line.split(",")]
    return line.split()


def _pick_delimiter(first_line: str, opts: ParseOptions) -> str:
    if opts.delimiter != "auto":
        return opts.delimiter
    return "comma" if "," in first_line else "whitespace"


def _parse_index(token: str, base: int, line_no: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"bad {what} {token!r}", line_no) from None
    if value < base:
        raise ParseError(f"{what} {value} below index base {base}", line_no)
    return value - base


def parse_edge_list(
    source: Iterable[str],
    opts: ParseOptions | None = None,
    n_nodes: int | None = None,
) -> EdgeList:
    """Parse an edge-list text stream.

    ``n_nodes`` overrides the inferred node count (max index + 1); use it
    when trailing nodes are isolated. Raises ParseError with the 1-based
    line number on malformed lines or out-of-range indices.
    """
    opts = opts or ParseOptions()
    delimiter: str | None = None
    rows: list[int] = []
    cols: list[int] = []
    weights: list[float] = []
    max_index = -1
    for line_no, line in _data_lines(source):
        if delimiter is None:
            delimiter = _pick_delimiter(line, opts)
        tokens = _tokenize(line, delimiter)
        if len(tokens) not in (2, 3):
            raise ParseError(
                f"expected 'i j' or 'i j w', got {len(tokens)} fields", line_no
            )
        i = _parse_index(tokens[0], opts.index_base, line_no, "node index")
        j = _parse_index(tokens[1], opts.index_base, line_no, "node index")
        if len(tokens) == 3:
            try:
                w = float(tokens[2])
            except ValueError:
                raise ParseError(f"bad edge weight {tokens[2]!r}", line_no) from None
            if not math.isfinite(w):
                raise ParseError(f"non-finite edge weight {tokens[2]!r}", line_no)
        else:
            w = opts.default_weight
        if n_nodes is not None and max(i, j) >= n_nodes:
            raise ParseError(
                f"node index {max(i, j)} outside declared node count {n_nodes}",
                line_no,
            )
        rows.append(i)
        cols.append(j)
        weights.append(w)
        if i > max_index:
            max_index = i
        if j > max_index:
            max_index = j
    count = n_nodes if n_nodes is not None else max_index + 1
    return EdgeList(
        count,
        np.asarray(rows, dtype=np.int64),
        np.asarray(cols, dtype=np.int64),
        np.asarray(weights, dtype=np.float64),
        directed=opts.directed,
    )


def parse_labels(
    source: Iterable[str],
    opts: ParseOptions | None = None,
    k_classes: int | None = None,
    n_nodes: int | None = None,
) -> LabelVector:
    """Parse a label file in either per-line or ``node label`` pair form.

    In pair form the vector is sized to ``n_nodes`` when given, else to
    max node + 1; unmentioned nodes are unlabeled (-1). Conflicting
    duplicate assignments and labels below -1 raise ParseError.
    """
    opts = opts or ParseOptions()
    delimiter: str | None = None
    pair_form: bool | None = None
    sequence: list[int] = []
    assigned: dict[int, int] = {}
    max_node = -1
    for line_no, line in _data_lines(source):
        if delimiter is None:
            delimiter = _pick_delimiter(line, opts)
        tokens = _tokenize(line, delimiter)
        if pair_form is None:
            if len(tokens) == 1:
                pair_form = False
            elif len(tokens) == 2:
                pair_form = True
            else:
                raise ParseError(
                    f"expected 'label' or 'node label', got {len(tokens)} fields",
                    line_no,
                )
        if pair_form:
            if len(tokens) != 2:
                raise ParseError(
                    f"expected 'node label', got {len(tokens)} fields", line_no
                )
            node = _parse_index(tokens[0], opts.index_base, line_no, "node index")
            label = _parse_label(tokens[1], line_no)
            if n_nodes is not None and node >= n_nodes:
                raise ParseError(
                    f"node index {node} outside declared node count {n_nodes}",
                    line_no,
                )
            if node in assigned and assigned[node] != label:
                raise ParseError(
                    f"conflicting labels {assigned[node]} and {label} for node {node}",
                    line_no,
                )
            assigned[node] = label
            if node > max_node:
                max_node = node
        else:
            if len(tokens) != 1:
                raise ParseError(
                    f"expected a single label, got {len(tokens)} fields", line_no
                )
            sequence.append(_parse_label(tokens[0], line_no))
    if pair_form:
        size = n_nodes if n_nodes is not None else max_node + 1
        values = np.full(size, UNLABELED, dtype=np.int64)
        for node, label in assigned.items():
            values[node] = label
    else:
        values = np.asarray(sequence, dtype=np.int64)
    return LabelVector.from_values(values, k_classes)


def _parse_label(token: str, line_no: int) -> int:
    try:
        label = int(token)
    except ValueError:
        raise ParseError(f"bad label {token!r}", line_no) from None
    if label < UNLABELED:
        raise ParseError(f"label {label} below -1", line_no)
    return label


def edge_density(n_nodes: int, n_edges: int) -> float:
    """Undirected edge density 2|E| / (|V| (|V| - 1))."""
    if n_nodes < 2:
        raise NumericalDomainError("edge density needs at least 2 nodes")
    return 2.0 * n_edges / (n_nodes * (n_nodes - 1.0))


def count_undirected_edges(edges: EdgeList) -> int:
    """Distinct unordered node pairs {i, j}, i != j, in the list."""
    if edges.n_edges == 0:
        return 0
    lo = np.minimum(edges.rows, edges.cols)
    hi = np.maximum(edges.rows, edges.cols)
    off_diag = lo != hi
    if not off_diag.any():
        return 0
    keys = lo[off_diag] * np.int64(edges.n_nodes) + hi[off_diag]
    return int(np.unique(keys).size)


def _format_value(v: float) -> str:
    # shortest decimal that round-trips; integral values print bare
    v = float(v)
    if math.isfinite(v) and v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def write_embedding(z: np.ndarray, sink: TextIO) -> None:
    """Write the embedding as CSV, one node per row, K columns."""
    for row in np.asarray(z):
        sink.write(",".join(_format_value(v) for v in row))
        sink.write("\n")


def write_edge_list(edges: EdgeList, sink: TextIO) -> None:
    """Write ``i j w`` lines; parsing them back reproduces the triplets."""
    for i, j, w in zip(edges.rows, edges.cols, edges.weights):
        sink.write(f"{i} {j} {_format_value(w)}\n")


def write_labels(labels: LabelVector, sink: TextIO) -> None:
    """Write one label per line (line number = node id)."""
    for label in labels.labels:
        sink.write(f"{label}\n")
