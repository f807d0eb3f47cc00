"""Small dense linear algebra that works for exact (object) and complex arrays."""
from __future__ import annotations

import numpy as np

from .scalar import Cyclotomic, conjugate, is_exact, to_exact


def as_array(rows, exact: bool) -> np.ndarray:
    if exact:
        arr = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                arr[i, j] = to_exact(x)
        return arr
    return np.array([[complex(x) for x in row] for row in rows], dtype=complex).reshape(
        len(rows), len(rows[0]) if rows else 0)


def zeros(shape, exact: bool) -> np.ndarray:
    if exact:
        arr = np.empty(shape, dtype=object)
        arr.fill(Cyclotomic.rational(0))
        return arr
    return np.zeros(shape, dtype=complex)


def eye(n: int, exact: bool) -> np.ndarray:
    arr = zeros((n, n), exact)
    for i in range(n):
        arr[i, i] = Cyclotomic.rational(1) if exact else 1.0
    return arr


def is_exact_array(m: np.ndarray) -> bool:
    return m.dtype == object


def to_complex(m: np.ndarray) -> np.ndarray:
    if m.dtype == object:
        return np.array([[complex(x) for x in row] for row in m], dtype=complex).reshape(m.shape)
    return m.astype(complex)


def conj(m: np.ndarray) -> np.ndarray:
    if m.dtype == object:
        out = np.empty(m.shape, dtype=object)
        for idx, x in np.ndenumerate(m):
            out[idx] = conjugate(x)
        return out
    return np.conj(m)


def inv(m: np.ndarray) -> np.ndarray:
    """Matrix inverse; exact Gauss-Jordan for object arrays."""
    if m.dtype != object:
        return np.linalg.inv(m)
    n = m.shape[0]
    a = [[to_exact(x) for x in row] + [Cyclotomic.rational(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if pivot is None:
            raise np.linalg.LinAlgError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        p_inv = a[col][col].inverse()
        a[col] = [x * p_inv for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                fac = a[r][col]
                a[r] = [x - fac * y for x, y in zip(a[r], a[col])]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = a[i][n + j]
    return out


def det(m: np.ndarray):
    if m.dtype != object:
        return complex(np.linalg.det(m)) if m.size else 1.0
    n = m.shape[0]
    if n == 0:
        return Cyclotomic.rational(1)
    if n == 1:
        return to_exact(m[0, 0])
    total = Cyclotomic.rational(0)
    for j in range(n):
        minor = np.delete(np.delete(m, 0, axis=0), j, axis=1)
        term = to_exact(m[0, j]) * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def allclose(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """Exact comparison when both are exact, else max-abs within ``tol``."""
    if a.shape != b.shape:
        return False
    if a.dtype == object and b.dtype == object:
        return all(to_exact(x) == to_exact(y) for x, y in zip(a.flat, b.flat))
    return a.size == 0 or float(np.max(np.abs(to_complex(a) - to_complex(b)))) <= tol


def opnorm(m: np.ndarray) -> float:
    m = to_complex(m)
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)
