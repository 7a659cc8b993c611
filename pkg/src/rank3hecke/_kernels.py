"""
Array kernels for the T-basis product sweep and length-additivity folds.

A T-basis vector is a pair ``(sup, coef)``: ``sup`` holds element indices in
increasing order and ``coef[i, k]`` is the coefficient of ``v^(k - off)`` in
front of ``T_sup[i]``. Coefficients are int64; every kernel checks that no
entry leaves ``(-2^62, 2^62)`` and raises ``OverflowError`` otherwise, so
a wrap-around can never pass silently.

Set ``RANK3HECKE_NO_NUMBA=1`` to force the pure numpy implementation.
"""

from __future__ import annotations

import os

import numpy as np

LIMIT = 1 << 62

_want_numba = os.environ.get("RANK3HECKE_NO_NUMBA", "").strip() not in ("1", "true", "yes")

try:
    if not _want_numba:
        raise ImportError
    from numba import njit
    BACKEND = "numba"
except ImportError:  # pragma: no cover - depends on environment
    njit = None
    BACKEND = "numpy"


# --- numpy reference implementations


def _right_mult_gen_np(sup, coef, a, La, rmul, rdesc):
    n, width = coef.shape
    desc = ((rdesc[sup] >> a) & 1).astype(bool)
    nxt = rmul[sup, a]
    if np.any(nxt < 0):
        raise IndexError("product leaves the prepared ball")
    if desc.any():
        d = coef[desc]
        if La and (np.any(d[:, width - La:]) or np.any(d[:, :La])):
            raise OverflowError("exponent window too small")
        shifted = np.zeros_like(d)
        shifted[:, La:] += d[:, :width - La]
        shifted[:, :width - La] -= d[:, La:]
        targets = np.concatenate([nxt, sup[desc]])
        rows = np.concatenate([coef, shifted])
    else:
        targets, rows = nxt, coef
    keys, inv = np.unique(targets, return_inverse=True)
    out = np.zeros((len(keys), width), dtype=np.int64)
    np.add.at(out, inv, rows)
    if out.size and np.abs(out).max() >= LIMIT:
        raise OverflowError("coefficient exceeds int64 safety bound")
    keep = out.any(axis=1)
    return keys[keep].astype(np.int64), out[keep]


def _row_degrees_np(coef):
    """Index of the highest nonzero column per row (-1 for a zero row)."""
    nz = coef != 0
    width = coef.shape[1]
    last = width - 1 - np.argmax(nz[:, ::-1], axis=1)
    return np.where(nz.any(axis=1), last, -1).astype(np.int64)


def _fold_additive_np(starts, letters, rmul, rdesc):
    cur = np.asarray(starts, dtype=np.int64).copy()
    for a in letters:
        ok = cur >= 0
        idx = cur[ok]
        bad = ((rdesc[idx] >> a) & 1).astype(bool)
        nxt = rmul[idx, a]
        nxt[bad] = -1
        cur[ok] = nxt
    return cur


# --- numba implementations

if njit is not None:

    @njit(cache=True, nogil=True)
    def _right_mult_gen_nb(sup, coef, a, La, rmul, rdesc, pos):
        n, width = coef.shape
        out_sup = np.empty(2 * n, dtype=np.int64)
        out = np.zeros((2 * n, width), dtype=np.int64)
        m = 0
        for i in range(n):
            w = sup[i]
            up = rmul[w, a]
            if up < 0:
                raise IndexError("product leaves the prepared ball")
            j = pos[up]
            if j < 0:
                j = m
                pos[up] = j
                out_sup[j] = up
                m += 1
            for k in range(width):
                out[j, k] += coef[i, k]
            if (rdesc[w] >> a) & 1:
                j = pos[w]
                if j < 0:
                    j = m
                    pos[w] = j
                    out_sup[j] = w
                    m += 1
                for k in range(width):
                    c = coef[i, k]
                    if c != 0:
                        if k + La >= width or k - La < 0:
                            raise OverflowError("exponent window too small")
                        out[j, k + La] += c
                        out[j, k - La] -= c
        cnt = 0
        for j in range(m):
            pos[out_sup[j]] = -1
            nz = False
            for k in range(width):
                c = out[j, k]
                if c >= LIMIT or c <= -LIMIT:
                    raise OverflowError("coefficient exceeds int64 safety bound")
                if c != 0:
                    nz = True
            if nz:
                cnt += 1
        order = np.argsort(out_sup[:m])
        res_sup = np.empty(cnt, dtype=np.int64)
        res = np.empty((cnt, width), dtype=np.int64)
        r = 0
        for jj in range(m):
            j = order[jj]
            nz = False
            for k in range(width):
                if out[j, k] != 0:
                    nz = True
                    break
            if nz:
                res_sup[r] = out_sup[j]
                for k in range(width):
                    res[r, k] = out[j, k]
                r += 1
        return res_sup, res

    @njit(cache=True, nogil=True)
    def _row_degrees_nb(coef):
        n, width = coef.shape
        out = np.full(n, -1, dtype=np.int64)
        for i in range(n):
            for k in range(width - 1, -1, -1):
                if coef[i, k] != 0:
                    out[i] = k
                    break
        return out

    @njit(cache=True, nogil=True)
    def _fold_additive_nb(starts, letters, rmul, rdesc):
        out = starts.copy()
        for i in range(out.shape[0]):
            cur = out[i]
            for a in letters:
                if cur < 0:
                    break
                if (rdesc[cur] >> a) & 1:
                    cur = -1
                else:
                    cur = rmul[cur, a]
            out[i] = cur
        return out


# --- dispatch


class Scratch:
    """Per-thread position map reused across kernel calls."""

    def __init__(self, size: int):
        self.pos = np.full(size, -1, dtype=np.int64)

    def fit(self, size: int):
        if self.pos.shape[0] < size:
            self.pos = np.full(size, -1, dtype=np.int64)
        return self.pos


def right_mult_gen(sup, coef, a, La, rmul, rdesc, scratch: Scratch | None = None,
                   backend: str | None = None):
    """``(sup, coef) * T_a``, both sides as arrays."""
    if (backend or BACKEND) == "numba" and njit is not None:
        pos = (scratch or Scratch(rmul.shape[0])).fit(rmul.shape[0])
        return _right_mult_gen_nb(sup, coef, np.int64(a), np.int64(La), rmul, rdesc, pos)
    return _right_mult_gen_np(sup, coef, a, La, rmul, rdesc)


def row_degrees(coef, backend: str | None = None):
    if (backend or BACKEND) == "numba" and njit is not None:
        return _row_degrees_nb(coef)
    return _row_degrees_np(coef)


def fold_additive(starts, letters, rmul, rdesc, backend: str | None = None):
    """End index of ``x . letters`` per start ``x``, or ``-1`` if not length-additive."""
    starts = np.asarray(starts, dtype=np.int64)
    letters = np.asarray(letters, dtype=np.int64)
    if (backend or BACKEND) == "numba" and njit is not None:
        return _fold_additive_nb(starts, letters, rmul, rdesc)
    return _fold_additive_np(starts, letters, rmul, rdesc)


def available_backends() -> list[str]:
    return ["numba", "numpy"] if njit is not None else ["numpy"]
