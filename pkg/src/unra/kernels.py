"""Compiled inner loops for coding-tree gradient training.

One pair update climbs the target leaf's root path: at each inner vertex the
score is the input/inner dot product, the error is (1 - bit) - sigmoid(score),
inner vertices move immediately, and the input vector collects its correction
in a scratch buffer applied after the whole path (so every step in the path
sees the pre-update input vector).  Scores are clamped to +/-SCORE_CLAMP
before the sigmoid.

Serial kernels walk pairs in stream order for bit-reproducible training; the
parallel variants split sequences across threads (per-sequence learning-rate
offsets keep the schedule aligned) and trade reproducibility for throughput.
"""
from __future__ import annotations

import numpy as np
from numba import njit, prange

SCORE_CLAMP = 30.0


@njit(cache=True)
def _log_sigmoid(y):
    if y >= 0.0:
        return -np.log1p(np.exp(-y))
    return y - np.log1p(np.exp(y))


@njit(cache=True)
def _lr_at(pair_index, total_pairs, lr0, lr_min):
    lr = lr0 - (lr0 - lr_min) * (pair_index / total_pairs)
    if lr < lr_min:
        lr = lr_min
    return lr


@njit(cache=True)
def _pair_update(emb, inner, paths, bits, plens, in_row, leaf, step, work):
    """Train one (input row -> target leaf) pair; returns its pre-update log-likelihood."""
    dim = emb.shape[1]
    for d in range(dim):
        work[d] = 0.0
    ll = 0.0
    v = emb[in_row]
    for t in range(plens[leaf]):
        h = inner[paths[leaf, t]]
        bit = bits[leaf, t]
        x = 0.0
        for d in range(dim):
            x += v[d] * h[d]
        if x > SCORE_CLAMP:
            x = SCORE_CLAMP
        elif x < -SCORE_CLAMP:
            x = -SCORE_CLAMP
        if bit == 0:
            ll += _log_sigmoid(x)
        else:
            ll += _log_sigmoid(-x)
        g = (1.0 - bit - 1.0 / (1.0 + np.exp(-x))) * step
        for d in range(dim):
            work[d] += g * h[d]
        for d in range(dim):
            h[d] += g * v[d]
    for d in range(dim):
        v[d] += work[d]
    return ll


@njit(cache=True)
def skipgram_pass_serial(
    emb, inner, paths, bits, plens,
    rows, leaves, offsets,
    window, weight, lr0, lr_min, pair_base, total_pairs,
):
    """Window pairs over token sequences: position i predicts each j within the window."""
    work = np.empty(emb.shape[1], dtype=np.float64)
    ll = 0.0
    processed = 0
    for s in range(offsets.shape[0] - 1):
        lo = offsets[s]
        hi = offsets[s + 1]
        for i in range(lo, hi):
            jlo = max(i - window, lo)
            jhi = min(i + window, hi - 1)
            for j in range(jlo, jhi + 1):
                if j == i:
                    continue
                lr = _lr_at(pair_base + processed, total_pairs, lr0, lr_min)
                ll += _pair_update(
                    emb, inner, paths, bits, plens, rows[i], leaves[j], lr * weight, work
                )
                processed += 1
    return ll, processed


@njit(cache=True, parallel=True)
def skipgram_pass_parallel(
    emb, inner, paths, bits, plens,
    rows, leaves, offsets, seq_base,
    window, weight, lr0, lr_min, pair_base, total_pairs,
):
    ll = 0.0
    processed = 0
    for s in prange(offsets.shape[0] - 1):
        work = np.empty(emb.shape[1], dtype=np.float64)
        lo = offsets[s]
        hi = offsets[s + 1]
        local = 0
        part = 0.0
        for i in range(lo, hi):
            jlo = max(i - window, lo)
            jhi = min(i + window, hi - 1)
            for j in range(jlo, jhi + 1):
                if j == i:
                    continue
                lr = _lr_at(pair_base + seq_base[s] + local, total_pairs, lr0, lr_min)
                part += _pair_update(
                    emb, inner, paths, bits, plens, rows[i], leaves[j], lr * weight, work
                )
                local += 1
        ll += part
        processed += local
    return ll, processed


@njit(cache=True)
def doc_pass_serial(
    emb, inner, paths, bits, plens,
    word_leaves, word_offsets, input_rows, input_offsets,
    window, weight, lr0, lr_min, pair_base, total_pairs,
):
    """Document pairs: every attached input row predicts each windowed word target."""
    work = np.empty(emb.shape[1], dtype=np.float64)
    ll = 0.0
    processed = 0
    for s in range(word_offsets.shape[0] - 1):
        wlo = word_offsets[s]
        whi = word_offsets[s + 1]
        ilo = input_offsets[s]
        ihi = input_offsets[s + 1]
        for t in range(wlo, whi):
            jlo = max(t - window, wlo)
            jhi = min(t + window, whi - 1)
            for j in range(jlo, jhi + 1):
                if j == t:
                    continue
                for a in range(ilo, ihi):
                    lr = _lr_at(pair_base + processed, total_pairs, lr0, lr_min)
                    ll += _pair_update(
                        emb, inner, paths, bits, plens,
                        input_rows[a], word_leaves[j], lr * weight, work,
                    )
                    processed += 1
    return ll, processed


@njit(cache=True, parallel=True)
def doc_pass_parallel(
    emb, inner, paths, bits, plens,
    word_leaves, word_offsets, input_rows, input_offsets, seq_base,
    window, weight, lr0, lr_min, pair_base, total_pairs,
):
    ll = 0.0
    processed = 0
    for s in prange(word_offsets.shape[0] - 1):
        work = np.empty(emb.shape[1], dtype=np.float64)
        wlo = word_offsets[s]
        whi = word_offsets[s + 1]
        ilo = input_offsets[s]
        ihi = input_offsets[s + 1]
        local = 0
        part = 0.0
        for t in range(wlo, whi):
            jlo = max(t - window, wlo)
            jhi = min(t + window, whi - 1)
            for j in range(jlo, jhi + 1):
                if j == t:
                    continue
                for a in range(ilo, ihi):
                    lr = _lr_at(pair_base + seq_base[s] + local, total_pairs, lr0, lr_min)
                    part += _pair_update(
                        emb, inner, paths, bits, plens,
                        input_rows[a], word_leaves[j], lr * weight, work,
                    )
                    local += 1
        ll += part
        processed += local
    return ll, processed
