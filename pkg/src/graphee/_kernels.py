"""Hot numeric kernels: CSR assembly, diagonal add, sparse-sparse multiply.

Each kernel exists twice: a loop version compiled with numba's ``@njit``
and a vectorized pure-numpy fallback. The fallback is selected when numba
is not importable, or forced with ``GRAPHEE_DISABLE_NUMBA=1`` in the
environment. Both paths produce bitwise-identical arrays (duplicate
contributions are accumulated in the same order), which the test suite
checks. ``benchmarks/kernel_bench.py`` compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("GRAPHEE_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

try:
    if _DISABLED:
        raise ImportError("numba disabled via GRAPHEE_DISABLE_NUMBA")
    from numba import njit

    NUMBA_ENABLED = True
except ImportError:
    njit = None
    NUMBA_ENABLED = False


# ---------------------------------------------------------------------------
# COO triplets -> CSR (sorted columns, duplicates summed, exact zeros pruned)
# ---------------------------------------------------------------------------

def coo_to_csr_numpy(rows, cols, vals, n_rows, n_cols):
    """Vectorized triplet assembly: stable sort, segment-sum, prune."""
    if rows.size == 0:
        return (
            np.zeros(n_rows + 1, np.int64),
            np.empty(0, np.int64),
            np.empty(0, np.float64),
        )
    if n_cols and n_rows < (2**62) // n_cols:
        # single flat key sorts ~2x faster than lexsort; stability keeps
        # duplicate summation in input order (bitwise-equal to the jit path)
        order = np.argsort(rows * np.int64(n_cols) + cols, kind="stable")
    else:
        order = np.lexsort((cols, rows))
    r = rows[order]
    c = cols[order]
    v = vals[order]
    first = np.empty(r.size, np.bool_)
    first[0] = True
    np.logical_or(r[1:] != r[:-1], c[1:] != c[:-1], out=first[1:])
    starts = np.flatnonzero(first)
    # bincount adds left to right in input order (reduceat would sum long
    # segments pairwise and drift from the jit path in the last bit)
    segment = np.cumsum(first) - 1
    sums = np.bincount(segment, weights=v)
    keep = sums != 0.0
    r = r[starts][keep]
    c = c[starts][keep]
    sums = sums[keep]
    indptr = np.zeros(n_rows + 1, np.int64)
    np.cumsum(np.bincount(r, minlength=n_rows), out=indptr[1:])
    return indptr, c, sums


def _coo_to_csr_loops(rows, cols, vals, n_rows, n_cols):
    # two stable counting sorts (by column, then by row) put the triplets
    # in row-major order in O(nnz + n); a final pass sums duplicates and
    # skips entries summing to exactly 0.0
    nnz = rows.shape[0]
    ccount = np.zeros(n_cols + 1, np.int64)
    for e in range(nnz):
        ccount[cols[e] + 1] += 1
    cptr = np.cumsum(ccount)
    by_col_rows = np.empty(nnz, np.int64)
    by_col_cols = np.empty(nnz, np.int64)
    by_col_vals = np.empty(nnz, np.float64)
    fill = cptr[:-1].copy()
    for e in range(nnz):
        c = cols[e]
        p = fill[c]
        by_col_rows[p] = rows[e]
        by_col_cols[p] = c
        by_col_vals[p] = vals[e]
        fill[c] = p + 1
    rcount = np.zeros(n_rows + 1, np.int64)
    for e in range(nnz):
        rcount[by_col_rows[e] + 1] += 1
    rptr = np.cumsum(rcount)
    srt_cols = np.empty(nnz, np.int64)
    srt_vals = np.empty(nnz, np.float64)
    fill2 = rptr[:-1].copy()
    for e in range(nnz):
        r = by_col_rows[e]
        p = fill2[r]
        srt_cols[p] = by_col_cols[e]
        srt_vals[p] = by_col_vals[e]
        fill2[r] = p + 1
    indptr = np.zeros(n_rows + 1, np.int64)
    out_cols = np.empty(nnz, np.int64)
    out_vals = np.empty(nnz, np.float64)
    n_out = 0
    for r in range(n_rows):
        prev = np.int64(-1)
        acc = 0.0
        for p in range(rptr[r], rptr[r + 1]):
            c = srt_cols[p]
            v = srt_vals[p]
            if c == prev:
                acc += v
            else:
                if prev >= 0 and acc != 0.0:
                    out_cols[n_out] = prev
                    out_vals[n_out] = acc
                    n_out += 1
                prev = c
                acc = v
        if prev >= 0 and acc != 0.0:
            out_cols[n_out] = prev
            out_vals[n_out] = acc
            n_out += 1
        indptr[r + 1] = n_out
    return indptr, out_cols[:n_out].copy(), out_vals[:n_out].copy()


# ---------------------------------------------------------------------------
# A + I on an existing CSR structure
# ---------------------------------------------------------------------------

def add_identity_numpy(indptr, cols, data, n):
    """Add 1.0 to every diagonal entry, inserting missing ones."""
    rid = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    new_data = data.copy()
    is_diag = cols == rid
    new_data[is_diag] += 1.0
    has_diag = np.zeros(n, np.bool_)
    has_diag[rid[is_diag]] = True
    missing = np.flatnonzero(~has_diag)
    if missing.size:
        # rows are stored in ascending (row, col) order, so flat keys are
        # globally sorted and searchsorted finds each insertion point
        keys = rid * np.int64(n) + cols
        pos = np.searchsorted(keys, missing * np.int64(n) + missing)
        cols = np.insert(cols, pos, missing)
        new_data = np.insert(new_data, pos, 1.0)
        shift = np.zeros(n + 1, np.int64)
        np.cumsum(~has_diag, out=shift[1:])
        out_indptr = indptr + shift
    else:
        cols = cols.copy()
        out_indptr = indptr.copy()
    if new_data.size == 0 or new_data.all():
        return out_indptr, cols, new_data
    # an existing -1.0 diagonal entry cancelled to zero; prune and rebuild
    rid = np.repeat(np.arange(n, dtype=np.int64), np.diff(out_indptr))
    keep = new_data != 0.0
    final_indptr = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(rid[keep], minlength=n), out=final_indptr[1:])
    return final_indptr, cols[keep], new_data[keep]


def _add_identity_loops(indptr, cols, data, n):
    cap = data.shape[0] + n
    out_indptr = np.zeros(n + 1, np.int64)
    out_cols = np.empty(cap, np.int64)
    out_vals = np.empty(cap, np.float64)
    k = 0
    for r in range(n):
        placed = False
        for p in range(indptr[r], indptr[r + 1]):
            c = cols[p]
            v = data[p]
            if not placed and c >= r:
                placed = True
                if c == r:
                    v = v + 1.0
                    if v == 0.0:
                        continue
                else:
                    out_cols[k] = r
                    out_vals[k] = 1.0
                    k += 1
            out_cols[k] = c
            out_vals[k] = v
            k += 1
        if not placed:
            out_cols[k] = r
            out_vals[k] = 1.0
            k += 1
        out_indptr[r + 1] = k
    return out_indptr, out_cols[:k].copy(), out_vals[:k].copy()


# ---------------------------------------------------------------------------
# CSR x CSR multiply
# ---------------------------------------------------------------------------

_DENSE_ACCUM_CELLS = 16_000_000


def spmm_numpy(a_indptr, a_cols, a_data, b_indptr, b_cols, b_data, n_cols_out):
    """Vectorized multiply: expand every (a_ik, b-row k) pairing, then
    aggregate. Narrow outputs accumulate into a flat dense buffer; wide
    ones go through the sort-based COO assembly."""
    n_rows = a_indptr.shape[0] - 1
    empty = (
        np.zeros(n_rows + 1, np.int64),
        np.empty(0, np.int64),
        np.empty(0, np.float64),
    )
    if a_cols.size == 0 or b_cols.size == 0:
        return empty
    a_rows = np.repeat(np.arange(n_rows, dtype=np.int64), np.diff(a_indptr))
    seg_len = b_indptr[a_cols + 1] - b_indptr[a_cols]
    if seg_len.size and seg_len.max() <= 1:
        # b has at most one entry per row (one-hot weight matrices): the
        # expansion is a plain gather, no repeats needed
        hit = seg_len == 1
        picked = b_indptr[a_cols[hit]]
        out_rows = a_rows[hit]
        out_cols = b_cols[picked]
        out_vals = a_data[hit] * b_data[picked]
    else:
        total = int(seg_len.sum())
        if total == 0:
            return empty
        out_rows = np.repeat(a_rows, seg_len)
        lhs = np.repeat(a_data, seg_len)
        seg_start = np.repeat(b_indptr[a_cols], seg_len)
        running = np.cumsum(seg_len)
        group_base = np.repeat(running - seg_len, seg_len)
        gather = seg_start + (np.arange(total, dtype=np.int64) - group_base)
        out_cols = b_cols[gather]
        out_vals = lhs * b_data[gather]
    if out_rows.size == 0:
        return empty
    if n_rows * n_cols_out <= _DENSE_ACCUM_CELLS:
        # bincount adds repeated cells in input order, matching the jit
        # kernel's scratch accumulation bit for bit
        flat = out_rows * np.int64(n_cols_out) + out_cols
        dense = np.bincount(flat, weights=out_vals, minlength=n_rows * n_cols_out)
        nonzero = np.flatnonzero(dense)
        rows_nz = nonzero // n_cols_out
        indptr = np.zeros(n_rows + 1, np.int64)
        np.cumsum(np.bincount(rows_nz, minlength=n_rows), out=indptr[1:])
        return indptr, nonzero % n_cols_out, dense[nonzero]
    return coo_to_csr_numpy(out_rows, out_cols, out_vals, n_rows, n_cols_out)


def _spmm_loops(a_indptr, a_cols, a_data, b_indptr, b_cols, b_data, n_cols_out):
    # two passes with a column-stamp array: count structural nonzeros per
    # output row, then accumulate into a dense scratch of width n_cols_out
    n_rows = a_indptr.shape[0] - 1
    stamp = np.full(n_cols_out, -1, np.int64)
    counts = np.zeros(n_rows + 1, np.int64)
    for r in range(n_rows):
        c = 0
        for p in range(a_indptr[r], a_indptr[r + 1]):
            k = a_cols[p]
            for q in range(b_indptr[k], b_indptr[k + 1]):
                j = b_cols[q]
                if stamp[j] != r:
                    stamp[j] = r
                    c += 1
        counts[r + 1] = c
    cap = 0
    for r in range(n_rows):
        cap += counts[r + 1]
    indptr = np.zeros(n_rows + 1, np.int64)
    out_cols = np.empty(cap, np.int64)
    out_vals = np.empty(cap, np.float64)
    scratch = np.zeros(n_cols_out, np.float64)
    stamp[:] = -1
    nnz = 0
    for r in range(n_rows):
        touched = np.empty(counts[r + 1], np.int64)
        t = 0
        for p in range(a_indptr[r], a_indptr[r + 1]):
            k = a_cols[p]
            av = a_data[p]
            for q in range(b_indptr[k], b_indptr[k + 1]):
                j = b_cols[q]
                if stamp[j] != r:
                    stamp[j] = r
                    scratch[j] = av * b_data[q]
                    touched[t] = j
                    t += 1
                else:
                    scratch[j] += av * b_data[q]
        cols_sorted = np.sort(touched[:t])
        for u in range(t):
            j = cols_sorted[u]
            v = scratch[j]
            scratch[j] = 0.0
            if v != 0.0:
                out_cols[nnz] = j
                out_vals[nnz] = v
                nnz += 1
        indptr[r + 1] = nnz
    return indptr, out_cols[:nnz].copy(), out_vals[:nnz].copy()


if NUMBA_ENABLED:
    coo_to_csr_jit = njit(cache=True)(_coo_to_csr_loops)
    add_identity_jit = njit(cache=True)(_add_identity_loops)
    spmm_jit = njit(cache=True)(_spmm_loops)
    coo_to_csr = coo_to_csr_jit
    add_identity_kernel = add_identity_jit
    spmm_kernel = spmm_jit
else:
    coo_to_csr_jit = None
    add_identity_jit = None
    spmm_jit = None
    coo_to_csr = coo_to_csr_numpy
    add_identity_kernel = add_identity_numpy
    spmm_kernel = spmm_numpy


def warmup():
    """Compile the JIT kernels on toy inputs (no-op on the numpy path)."""
    rows = np.array([0, 0, 1], dtype=np.int64)
    cols = np.array([1, 1, 0], dtype=np.int64)
    vals = np.array([1.0, 1.0, 2.0])
    indptr, ccols, cvals = coo_to_csr(rows, cols, vals, 2, 2)
    add_identity_kernel(indptr, ccols, cvals, 2)
    spmm_kernel(indptr, ccols, cvals, indptr, ccols, cvals, 2)
