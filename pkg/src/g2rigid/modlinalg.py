"""Dense linear algebra over F_p on numpy int64 arrays.

Used where the exact ring-generic Matrix class would be too slow (large
cocycle systems and similar); entries are ints in [0, p).
"""

from __future__ import annotations

import numpy as np


def _as_mod_array(rows, p):
    a = np.array(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return np.mod(a, p)


def rref_mod(rows, p):
    """Reduced row echelon form mod p; returns (array, pivot columns)."""
    a = _as_mod_array(rows, p)
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod(rows, p) -> int:
    return len(rref_mod(rows, p)[1])


def nullspace_mod(rows, p):
    """Basis of the right kernel, as a list of numpy int64 vectors."""
    a, pivots = rref_mod(rows, p)
    n = a.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for fc in free:
        v = np.zeros(n, dtype=np.int64)
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-a[r, fc]) % p
        basis.append(v)
    return basis


def inv_mod(a, p):
    """Inverse of a square matrix mod p (raises ZeroDivisionError if singular)."""
    a = _as_mod_array(a, p)
    n = a.shape[0]
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = rref_mod(aug, p)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular mod p")
    return r[:, n:]


def row_basis(rows, p):
    """Echelonized basis of the row space (zero rows dropped)."""
    a, pivots = rref_mod(rows, p)
    return a[: len(pivots)]


def in_rowspace(basis, v, p):
    """Whether vector v lies in the row space of an echelonized basis."""
    return not _reduce_against(basis, v, p).any()


def _reduce_against(basis, v, p):
    v = np.mod(np.array(v, dtype=np.int64), p)
    for row in basis:
        pc = int(np.argmax(row != 0)) if row.any() else None
        if pc is not None and v[pc]:
            v = (v - v[pc] * row) % p
    return v


def intersect_rowspaces(u, v, p):
    """Basis of the intersection of two row spaces."""
    u = _as_mod_array(u, p)
    v = _as_mod_array(v, p)
    if u.shape[0] == 0 or v.shape[0] == 0:
        return np.zeros((0, u.shape[1]), dtype=np.int64)
    w = np.concatenate([u, (-v) % p], axis=0)
    sols = nullspace_mod(w.T, p)
    if not sols:
        return np.zeros((0, u.shape[1]), dtype=np.int64)
    combos = np.array([z[: u.shape[0]] for z in sols], dtype=np.int64)
    return row_basis((combos @ u) % p, p)
