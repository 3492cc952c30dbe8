"""Exact Gaussian elimination: a generic path over any FieldCtx and a
vectorized numpy path mod a prime.  Pivoting is first-nonzero, so all
results are deterministic.
"""

from __future__ import annotations

import numpy as np

from .ff import FieldCtx, FqElem


# -- generic path (FqElem entries) -------------------------------------------


def rref_generic(rows: list[list[FqElem]]) -> tuple[list[list[FqElem]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r] + m[r:], pivots


def rank_generic(rows: list[list[FqElem]]) -> int:
    return len(rref_generic(rows)[1])


def det_generic(rows: list[list[FqElem]], ctx: FieldCtx) -> FqElem:
    n = len(rows)
    m = [list(r) for r in rows]
    det = ctx.one()
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return ctx.zero()
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def kernel_generic(rows: list[list[FqElem]], ncols: int, ctx: FieldCtx) -> list[list[FqElem]]:
    """Basis of the right kernel, returned in reduced echelon form."""
    red, pivots = rref_generic(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ctx.zero()] * ncols
        v[fc] = ctx.one()
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    if not basis:
        return []
    return rref_generic(basis)[0][: len(basis)]


# -- prime path (numpy, entries mod p) ----------------------------------------


def rref_mod_p(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    m = (mat.astype(np.int64)) % p
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hot = np.nonzero(col)[0]
        if hot.size:
            m[hot] = (m[hot] - np.outer(col[hot], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def kernel_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel as rows, in reduced echelon form."""
    nrows, ncols = mat.shape
    if nrows == 0:
        return np.eye(ncols, dtype=np.int64)
    red, pivots = rref_mod_p(mat, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-int(red[r, fc])) % p
    if basis.shape[0] > 1:
        basis, _ = rref_mod_p(basis, p)
    return basis
