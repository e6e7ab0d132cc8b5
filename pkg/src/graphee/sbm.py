"""Seeded stochastic block model generator.

Labels are drawn i.i.d. from the class probabilities; every unordered
node pair (i < j) then carries an edge of weight 1 with the within-class
probability when the labels match and the between-class probability
otherwise. No self-loops, each pair sampled at most once.

Pair selection uses geometric gap skipping inside each class-pair block
(expected O(|E|) work instead of O(n^2) Bernoulli trials) and draws all
randomness from a single NumPy PCG64 generator (``default_rng(seed)``),
so a given (params, library version) pair reproduces the graph byte for
byte. Across library releases the durable contract is statistical, not
bytewise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embedding import LabelVector
from .errors import StructuralError
from .graph_io import EdgeList


@dataclass
class SbmParams:
    n_nodes: int
    class_probs: np.ndarray
    within_prob: float
    between_prob: float
    seed: int

    def __post_init__(self):
        self.class_probs = np.ascontiguousarray(self.class_probs, dtype=np.float64)
        if self.n_nodes < 1:
            raise StructuralError("n_nodes must be at least 1")
        if self.class_probs.size < 1:
            raise StructuralError("at least one class probability required")
        if np.any(self.class_probs < 0) or np.any(self.class_probs > 1):
            raise StructuralError("class probabilities must lie in [0, 1]")
        if abs(float(self.class_probs.sum()) - 1.0) > 1e-9:
            raise StructuralError(
                f"class probabilities sum to {float(self.class_probs.sum())}, not 1"
            )
        for name, p in (("within_prob", self.within_prob), ("between_prob", self.between_prob)):
            if not 0.0 <= p <= 1.0:
                raise StructuralError(f"{name} must lie in [0, 1], got {p}")


def _sample_pair_ranks(total: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Strictly increasing ranks in [0, total), each included with prob p.

    Equivalent to per-rank Bernoulli(p) trials; implemented by summing
    geometric gaps in batches.
    """
    if total <= 0 or p <= 0.0:
        return np.empty(0, np.int64)
    if p >= 1.0:
        return np.arange(total, dtype=np.int64)
    chunks: list[np.ndarray] = []
    pos = -1
    while True:
        remaining = total - 1 - pos
        mean = remaining * p
        batch = int(mean + 6.0 * np.sqrt(mean + 1.0) + 16)
        ranks = pos + np.cumsum(rng.geometric(p, size=batch))
        inside = ranks < total
        if inside.all():
            chunks.append(ranks)
            pos = int(ranks[-1])
            continue
        chunks.append(ranks[inside])
        break
    return np.concatenate(chunks) if len(chunks) > 1 else chunks[0]


def _unrank_triangle(ranks: np.ndarray, m: int):
    """Invert the lexicographic enumeration of pairs (r, s), 0 <= r < s < m."""
    t = ranks
    disc = (2.0 * m - 1.0) ** 2 - 8.0 * t.astype(np.float64)
    r = np.floor(((2.0 * m - 1.0) - np.sqrt(disc)) * 0.5).astype(np.int64)
    np.clip(r, 0, m - 2, out=r)
    offset = r * (2 * m - r - 1) // 2
    # float sqrt may land one row off in either direction
    while True:
        over = offset > t
        if not over.any():
            break
        r[over] -= 1
        offset[over] = r[over] * (2 * m - r[over] - 1) // 2
    while True:
        nxt = (r + 1) * (2 * m - r - 2) // 2
        under = nxt <= t
        if not under.any():
            break
        r[under] += 1
        offset[under] = nxt[under]
    s = t - offset + r + 1
    return r, s


def _apportion(n: int, probs: np.ndarray) -> np.ndarray:
    """Largest-remainder split of n into len(probs) integer counts."""
    raw = probs * n
    base = np.floor(raw).astype(np.int64)
    short = n - int(base.sum())
    if short > 0:
        order = np.argsort(-(raw - base), kind="stable")
        base[order[:short]] += 1
    return base


def generate_sbm(params: SbmParams, exact_counts: bool = False):
    """Generate (EdgeList, LabelVector) for the given parameters.

    With ``exact_counts`` the class sizes are the deterministic
    largest-remainder split of n_nodes instead of i.i.d. draws (the
    assignment of nodes to classes is still shuffled by the seeded
    generator).
    """
    n = params.n_nodes
    k = params.class_probs.size
    rng = np.random.default_rng(params.seed)
    if exact_counts:
        counts = _apportion(n, params.class_probs)
        labels = rng.permutation(np.repeat(np.arange(k, dtype=np.int64), counts))
    else:
        labels = rng.choice(k, size=n, p=params.class_probs).astype(np.int64)
    members = [np.flatnonzero(labels == c) for c in range(k)]
    srcs: list[np.ndarray] = []
    dsts: list[np.ndarray] = []
    for a in range(k):
        ma = members[a].size
        ranks = _sample_pair_ranks(ma * (ma - 1) // 2, params.within_prob, rng)
        if ranks.size:
            r, s = _unrank_triangle(ranks, ma)
            srcs.append(members[a][r])
            dsts.append(members[a][s])
        for b in range(a + 1, k):
            mb = members[b].size
            ranks = _sample_pair_ranks(ma * mb, params.between_prob, rng)
            if ranks.size:
                q, rem = np.divmod(ranks, mb)
                srcs.append(members[a][q])
                dsts.append(members[b][rem])
    if srcs:
        rows = np.concatenate(srcs)
        cols = np.concatenate(dsts)
    else:
        rows = np.empty(0, np.int64)
        cols = np.empty(0, np.int64)
    edges = EdgeList(n, rows, cols, np.ones(rows.size), directed=False)
    return edges, LabelVector(labels, k)
