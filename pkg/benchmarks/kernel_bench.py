#!/usr/bin/env python3
"""Compare the numba JIT kernels against the pure-numpy fallbacks.

Times CSR assembly, diagonal add, sparse multiply, and the end-to-end
embedding on a seeded SBM graph. Run from the repository root:

    python3 benchmarks/kernel_bench.py --nodes 10000 --repeats 5

The numpy column is what you get with GRAPHEE_DISABLE_NUMBA=1.
"""

import argparse
import time

import numpy as np

from graphee import EmbedOptions, SbmParams, encode, encode_reference, generate_sbm
from graphee import _kernels as k


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nodes", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    params = SbmParams(
        args.nodes, np.array([0.2, 0.3, 0.5]), 0.13, 0.1, seed=args.seed
    )
    edges, labels = generate_sbm(params)
    print(f"graph: {args.nodes} nodes, {edges.n_edges} edges, seed {args.seed}")
    print(f"numba available: {k.NUMBA_ENABLED}")

    off = edges.rows != edges.cols
    rows = np.concatenate([edges.rows, edges.cols[off]])
    cols = np.concatenate([edges.cols, edges.rows[off]])
    vals = np.concatenate([edges.weights, edges.weights[off]])
    n = args.nodes

    if k.NUMBA_ENABLED:
        k.warmup()
    csr = k.coo_to_csr_numpy(rows, cols, vals, n, n)
    w_lab = labels.labels
    w_rows = np.flatnonzero(w_lab >= 0).astype(np.int64)
    w_cols = w_lab[w_rows]
    counts = np.bincount(w_cols, minlength=labels.k_classes)
    w_csr = k.coo_to_csr_numpy(
        w_rows, w_cols, 1.0 / counts[w_cols], n, labels.k_classes
    )

    cells = [
        (
            "coo_to_csr",
            lambda: k.coo_to_csr_numpy(rows, cols, vals, n, n),
            (lambda: k.coo_to_csr_jit(rows, cols, vals, n, n))
            if k.NUMBA_ENABLED
            else None,
        ),
        (
            "add_identity",
            lambda: k.add_identity_numpy(*csr, n),
            (lambda: k.add_identity_jit(*csr, n)) if k.NUMBA_ENABLED else None,
        ),
        (
            "spmm (A @ W)",
            lambda: k.spmm_numpy(*csr, *w_csr, labels.k_classes),
            (lambda: k.spmm_jit(*csr, *w_csr, labels.k_classes))
            if k.NUMBA_ENABLED
            else None,
        ),
    ]
    print(f"\n{'kernel':<22}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>10}")
    for name, numpy_fn, jit_fn in cells:
        t_np = best_of(numpy_fn, args.repeats)
        if jit_fn is not None:
            t_jit = best_of(jit_fn, args.repeats)
            print(f"{name:<22}{t_np:>12.4f}{t_jit:>12.4f}{t_np / t_jit:>10.2f}x")
        else:
            print(f"{name:<22}{t_np:>12.4f}{'n/a':>12}{'':>10}")

    opts = EmbedOptions(laplacian=True, diagonal=True, correlation=True)
    t_pipeline = best_of(lambda: encode(edges.to_csr(), labels, opts), args.repeats)
    t_reference = best_of(
        lambda: encode_reference(edges, labels, opts), args.repeats
    )
    print(
        f"\nend-to-end, all options (current dispatch: "
        f"{'numba' if k.NUMBA_ENABLED else 'numpy'}):"
    )
    print(f"{'sparse pipeline':<22}{t_pipeline:>12.4f}")
    print(f"{'edge-list reference':<22}{t_reference:>12.4f}")


if __name__ == "__main__":
    main()
