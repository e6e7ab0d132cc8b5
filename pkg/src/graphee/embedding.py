"""One-hot encoder embedding of a labeled graph.

The embedding of an N-node graph with K classes is the N x K matrix
Z = A @ W, where W holds 1/n_k at (j, label_j) for every labeled node j
(n_k is the size of class k) and zeros elsewhere. Three options modify
the pipeline, applied in this order:

1. diagonal augmentation: A <- A + I
2. Laplacian normalization: A <- D**-0.5 @ A @ D**-0.5, with D the
   weighted degrees of the (possibly augmented) adjacency
3. correlation: every nonzero row of Z is divided by its 2-norm

``encode`` runs the pipeline on a CSR adjacency; ``encode_reference``
recomputes Z directly from the raw edge triplets and serves as an
independent correctness oracle for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import NumericalDomainError, StructuralError
from .sparse import CsrMatrix, add_identity, degree_vector, laplacian_normalize, spmm

if TYPE_CHECKING:
    from .graph_io import EdgeList

UNLABELED = -1


@dataclass
class LabelVector:
    """Per-node class assignment in {0..k_classes-1}, or -1 for unlabeled."""

    labels: np.ndarray
    k_classes: int

    def __post_init__(self):
        self.labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        if self.k_classes < 1:
            raise StructuralError("k_classes must be at least 1")
        if self.labels.size:
            if self.labels.min() < UNLABELED:
                raise StructuralError("labels below -1 are not allowed")
            if self.labels.max() >= self.k_classes:
                raise StructuralError(
                    f"label {int(self.labels.max())} exceeds k_classes={self.k_classes}"
                )

    def __len__(self) -> int:
        return int(self.labels.shape[0])

    @classmethod
    def from_values(cls, values, k_classes: int | None = None) -> "LabelVector":
        """Build from raw values, inferring K = max label + 1 when not given."""
        values = np.ascontiguousarray(values, dtype=np.int64)
        if k_classes is None:
            if values.size == 0 or values.max() < 0:
                raise StructuralError(
                    "cannot infer class count from labels with no labeled node"
                )
            k_classes = int(values.max()) + 1
        return cls(values, k_classes)

    def class_counts(self) -> np.ndarray:
        """Number of labeled nodes per class (unlabeled nodes excluded)."""
        labeled = self.labels[self.labels >= 0]
        return np.bincount(labeled, minlength=self.k_classes)


@dataclass(frozen=True)
class EmbedOptions:
    """Pipeline switches; all 8 combinations are legal."""

    laplacian: bool = False
    diagonal: bool = False
    correlation: bool = False

    @staticmethod
    def all_combinations() -> list["EmbedOptions"]:
        return [
            EmbedOptions(lap, diag, corr)
            for lap in (False, True)
            for diag in (False, True)
            for corr in (False, True)
        ]


def build_weight_matrix(labels: LabelVector) -> CsrMatrix:
    """N x K one-hot weight matrix: row j holds 1/n_k at column label_j.

    Unlabeled rows are empty; columns of empty classes hold no entries.
    """
    if labels.k_classes < 1:
        raise StructuralError("k_classes must be at least 1")
    n = len(labels)
    lab = labels.labels
    counts = labels.class_counts()
    labeled = lab >= 0
    indptr = np.zeros(n + 1, np.int64)
    np.cumsum(labeled, out=indptr[1:])
    cols = lab[labeled]
    data = 1.0 / counts[cols]
    return CsrMatrix(n, labels.k_classes, indptr, cols.astype(np.int64), data)


def encode(
    adj: CsrMatrix, labels: LabelVector, opts: EmbedOptions | None = None
) -> np.ndarray:
    """Embed via the sparse pipeline; returns a dense (N, K) array."""
    opts = opts or EmbedOptions()
    if adj.n_rows != adj.n_cols:
        raise StructuralError(
            f"adjacency must be square, got {adj.n_rows}x{adj.n_cols}"
        )
    if len(labels) != adj.n_rows:
        raise StructuralError(
            f"label count {len(labels)} != node count {adj.n_rows}"
        )
    a = adj
    if opts.diagonal:
        a = add_identity(a)
    if opts.laplacian:
        a = laplacian_normalize(a, degree_vector(a))
    z = spmm(a, build_weight_matrix(labels)).to_dense()
    if opts.correlation:
        z = correlate_rows(z)
    return z


def correlate_rows(z: np.ndarray) -> np.ndarray:
    """Divide every nonzero row by its 2-norm; zero rows pass through."""
    z = np.asarray(z, dtype=np.float64)
    if not np.isfinite(z).all():
        raise NumericalDomainError("non-finite embedding values")
    out = z.copy()
    norms = np.linalg.norm(out, axis=1)
    nonzero = norms > 0
    out[nonzero] /= norms[nonzero, None]
    return out


def encode_reference(
    edges: "EdgeList", labels: LabelVector, opts: EmbedOptions | None = None
) -> np.ndarray:
    """Embed by accumulating e_ij * W[j] straight off the edge triplets.

    Options are applied as edge-level transforms: diagonal augmentation
    appends unit self-loop triplets, Laplacian normalization scales each
    weight by (d_i * d_j)**-0.5 with degrees accumulated from the same
    triplet stream. Shares no code with the CSR pipeline; used to verify
    ``encode``.
    """
    opts = opts or EmbedOptions()
    n = edges.n_nodes
    if len(labels) != n:
        raise StructuralError(f"label count {len(labels)} != node count {n}")
    k = labels.k_classes
    rows = edges.rows
    cols = edges.cols
    weights = edges.weights
    if not edges.directed:
        off_diag = rows != cols
        rows, cols = (
            np.concatenate([rows, cols[off_diag]]),
            np.concatenate([cols, rows[off_diag]]),
        )
        weights = np.concatenate([weights, weights[off_diag]])
    if opts.diagonal:
        loops = np.arange(n, dtype=np.int64)
        rows = np.concatenate([rows, loops])
        cols = np.concatenate([cols, loops])
        weights = np.concatenate([weights, np.ones(n)])
    if opts.laplacian:
        deg = np.bincount(rows, weights=weights, minlength=n)
        if np.any(deg < 0):
            raise NumericalDomainError("negative degree under Laplacian normalization")
        scale = np.zeros(n)
        positive = deg > 0
        scale[positive] = 1.0 / np.sqrt(deg[positive])
        weights = weights * scale[rows] * scale[cols]
    target = labels.labels[cols]
    labeled = target >= 0
    counts = labels.class_counts()
    contrib = weights[labeled] / counts[target[labeled]]
    flat = rows[labeled] * k + target[labeled]
    # bincount falls back to int64 when the weight array is empty
    z = (
        np.bincount(flat, weights=contrib, minlength=n * k)
        .astype(np.float64, copy=False)
        .reshape(n, k)
    )
    if opts.correlation:
        norms = np.sqrt((z * z).sum(axis=1))
        nonzero = norms > 0
        z[nonzero] /= norms[nonzero, None]
    return z
