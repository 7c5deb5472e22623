"""Small exact linear algebra over GF(3) on numpy uint8 arrays."""

from __future__ import annotations

import numpy as np


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod 3.  Returns (rref, pivot_columns).

    Pivots are chosen lowest column first, lowest row first.
    """
    m = np.array(m, dtype=np.uint8) % 3
    rows, cols = m.shape
    piv_cols: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        if m[r, c] == 2:
            m[r] = (m[r] * 2) % 3
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] + (3 - m[i, c]) * m[r]) % 3
        piv_cols.append(c)
        r += 1
    return m, piv_cols


def rank(m: np.ndarray) -> int:
    return len(rref(m)[1])


def inverse(m: np.ndarray) -> np.ndarray:
    """Inverse of a square matrix mod 3.  Raises ValueError if singular."""
    m = np.asarray(m, dtype=np.uint8) % 3
    n = m.shape[0]
    aug = np.concatenate([m, np.eye(n, dtype=np.uint8)], axis=1)
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular mod 3")
    return red[:, n:]


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64) % 3).astype(np.uint8)


def trits_of_int(value: int, width: int) -> np.ndarray:
    """Base-3 digits of value, least significant first, padded to width."""
    out = np.zeros(width, dtype=np.uint8)
    for i in range(width):
        if value == 0:
            break
        value, r = divmod(value, 3)
        out[i] = r
    return out


def all_trit_rows(width: int) -> np.ndarray:
    """All 3**width trit vectors as a (3**width, width) array, row i holding
    the base-3 digits of i (least significant digit in column 0)."""
    idx = np.arange(3 ** width, dtype=np.int64)
    return ((idx[:, None] // (3 ** np.arange(width, dtype=np.int64))) % 3).astype(np.uint8)
