"""Slow, obviously-correct reference computations used to verify the package.

Everything here works on dense arrays or plain Python loops and shares no
code with the CSR pipeline under test.
"""

import numpy as np

from graphee import EdgeList, EmbedOptions, LabelVector


def dense_adjacency(edges: EdgeList) -> np.ndarray:
    a = np.zeros((edges.n_nodes, edges.n_nodes))
    for i, j, w in zip(edges.rows, edges.cols, edges.weights):
        a[i, j] += w
        if not edges.directed and i != j:
            a[j, i] += w
    return a


def dense_weights(labels: LabelVector) -> np.ndarray:
    lab = labels.labels
    counts = np.bincount(lab[lab >= 0], minlength=labels.k_classes)
    w = np.zeros((len(labels), labels.k_classes))
    for node, k in enumerate(lab):
        if k >= 0:
            w[node, k] = 1.0 / counts[k]
    return w


def dense_encode(edges: EdgeList, labels: LabelVector, opts=None) -> np.ndarray:
    opts = opts or EmbedOptions()
    a = dense_adjacency(edges)
    if opts.diagonal:
        a = a + np.eye(edges.n_nodes)
    if opts.laplacian:
        d = a.sum(axis=1)
        s = np.zeros_like(d)
        s[d > 0] = 1.0 / np.sqrt(d[d > 0])
        a = a * s[:, None] * s[None, :]
    z = a @ dense_weights(labels)
    if opts.correlation:
        norms = np.linalg.norm(z, axis=1)
        nz = norms > 0
        z[nz] /= norms[nz, None]
    return z


def random_graph(
    rng: np.random.Generator,
    n_max: int = 200,
    k_max: int = 5,
    unlabeled_frac: float = 0.2,
    directed: bool = False,
    self_loops: bool = True,
):
    """Random weighted graph with weights in (0, 2] and partial labels."""
    n = int(rng.integers(2, n_max + 1))
    k = int(rng.integers(1, k_max + 1))
    m = int(rng.integers(0, 3 * n + 1))
    rows = rng.integers(0, n, m)
    cols = rng.integers(0, n, m)
    if not self_loops:
        keep = rows != cols
        rows, cols = rows[keep], cols[keep]
    weights = 2.0 * (1.0 - rng.random(rows.size))
    labels = rng.integers(0, k, n)
    labels[rng.random(n) < unlabeled_frac] = -1
    edges = EdgeList(
        n,
        rows.astype(np.int64),
        cols.astype(np.int64),
        weights,
        directed=directed,
    )
    return edges, LabelVector(labels.astype(np.int64), k)
