"""Dense linear algebra over GF(q).

Vectors are 1-D and matrices 2-D ``uint8`` numpy arrays of field digits; every
function takes the :class:`~perfcode.gf.FieldSpec` explicitly.  Coordinates
reported to users (supports, column numbers) are 1-based.
"""

from __future__ import annotations

import numpy as np

from perfcode.gf import FieldSpec


class DimensionError(ValueError):
    """Operands with incompatible lengths or shapes."""


def as_vector(digits, F: FieldSpec) -> np.ndarray:
    """Coerce a digit sequence (or a digit string like ``"1021"``) to a vector."""
    if isinstance(digits, str):
        digits = [int(ch) for ch in digits]
    v = np.asarray(digits, dtype=np.int64).reshape(-1)
    if v.size and (v.min() < 0 or v.max() >= F.q):
        raise ValueError(f"digits must lie in 0..{F.q - 1}: {v.tolist()}")
    return v.astype(np.uint8)


def as_matrix(rows, F: FieldSpec, cols: int | None = None) -> np.ndarray:
    M = np.asarray(rows, dtype=np.int64)
    if M.size == 0:
        return np.zeros((0, cols or 0), dtype=np.uint8)
    if M.ndim != 2:
        raise DimensionError(f"expected a 2-D array, got shape {M.shape}")
    if M.min() < 0 or M.max() >= F.q:
        raise ValueError(f"entries must lie in 0..{F.q - 1}")
    return M.astype(np.uint8)


def to_str(v: np.ndarray) -> str:
    return "".join(str(int(d)) for d in v)


def _check_same(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape != y.shape:
        raise DimensionError(f"length mismatch: {x.shape} vs {y.shape}")


def add(x: np.ndarray, y: np.ndarray, F: FieldSpec) -> np.ndarray:
    _check_same(x, y)
    return F.add_table[x, y]


def sub(x: np.ndarray, y: np.ndarray, F: FieldSpec) -> np.ndarray:
    _check_same(x, y)
    return F.sub_table[x, y]


def scale(c: int, x: np.ndarray, F: FieldSpec) -> np.ndarray:
    return F.mul_table[c, x]


def neg(x: np.ndarray, F: FieldSpec) -> np.ndarray:
    return F.neg_table[x]


def unit(n: int, i: int, c: int = 1) -> np.ndarray:
    """``c * e_i`` of length ``n`` with 1-based ``i``."""
    e = np.zeros(n, dtype=np.uint8)
    e[i - 1] = c
    return e


def weight(x: np.ndarray) -> int:
    return int(np.count_nonzero(x))


def hamming_distance(x: np.ndarray, y: np.ndarray) -> int:
    """Number of coordinates in which ``x`` and ``y`` differ."""
    _check_same(x, y)
    return int(np.count_nonzero(x != y))


def support(x: np.ndarray) -> list[int]:
    """Ascending 1-based indices of the nonzero coordinates."""
    return [int(i) + 1 for i in np.flatnonzero(x)]


def dot(x: np.ndarray, y: np.ndarray, F: FieldSpec) -> int:
    _check_same(x, y)
    acc = 0
    for p in F.mul_table[x, y]:
        acc = F.add_table[acc, p]
    return int(acc)


def matvec(M: np.ndarray, x: np.ndarray, F: FieldSpec) -> np.ndarray:
    """``M @ x`` over GF(q)."""
    if M.shape[1] != x.shape[0]:
        raise DimensionError(f"cannot apply {M.shape} matrix to length-{x.shape[0]} vector")
    acc = np.zeros(M.shape[0], dtype=np.uint8)
    for j in np.flatnonzero(x):
        acc = F.add_table[acc, F.mul_table[x[j], M[:, j]]]
    return acc


def matmul(A: np.ndarray, B: np.ndarray, F: FieldSpec) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f"shape mismatch {A.shape} @ {B.shape}")
    acc = np.zeros((A.shape[0], B.shape[1]), dtype=np.uint8)
    for k in range(A.shape[1]):
        acc = F.add_table[acc, F.mul_table[A[:, k][:, None], B[k][None, :]]]
    return acc


def combine(coeffs, vectors: np.ndarray, F: FieldSpec) -> np.ndarray:
    """Linear combination ``sum(c_k * vectors[k])``."""
    vectors = np.asarray(vectors, dtype=np.uint8)
    return matvec(vectors.T, np.asarray(coeffs, dtype=np.uint8), F)


def rref(M: np.ndarray, F: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and 0-based pivot columns.

    Pivots are chosen in the leftmost remaining column, taking the lowest row
    index with a nonzero entry.  Zero rows are dropped from the result.
    """
    A = np.array(M, dtype=np.uint8, copy=True)
    if A.ndim != 2:
        raise DimensionError(f"expected a 2-D array, got shape {A.shape}")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = F.mul_table[F.inv_table[A[r, c]], A[r]]
        factors = A[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            A[hit] = F.sub_table[A[hit], F.mul_table[factors[hit][:, None], A[r][None, :]]]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: np.ndarray, F: FieldSpec) -> int:
    M = np.asarray(M, dtype=np.uint8)
    if M.size == 0:
        return 0
    return len(rref(M, F)[1])


def row_space(vectors, F: FieldSpec, n: int | None = None) -> np.ndarray:
    """Canonical basis (RREF rows) of the span of ``vectors``."""
    V = np.asarray(vectors, dtype=np.uint8)
    if V.size == 0:
        return np.zeros((0, n if n is not None else (V.shape[-1] if V.ndim == 2 else 0)), dtype=np.uint8)
    return rref(V.reshape(-1, V.shape[-1]), F)[0]


def in_span(v: np.ndarray, basis, F: FieldSpec) -> tuple[bool, np.ndarray | None]:
    """Decide whether ``v`` is a combination of ``basis`` rows.

    Returns ``(True, coeffs)`` with ``combine(coeffs, basis) == v`` when it is,
    otherwise ``(False, None)``.
    """
    v = np.asarray(v, dtype=np.uint8)
    B = np.asarray(basis, dtype=np.uint8).reshape(-1, v.shape[0])
    k = B.shape[0]
    if not v.any():
        return True, np.zeros(k, dtype=np.uint8)
    if k == 0:
        return False, None
    aug = np.concatenate([B.T, v[:, None]], axis=1)
    R, pivots = rref(aug, F)
    if pivots and pivots[-1] == k:
        return False, None
    coeffs = np.zeros(k, dtype=np.uint8)
    for row, c in zip(R, pivots):
        coeffs[c] = row[k]
    return True, coeffs


def nullspace_basis(M: np.ndarray, F: FieldSpec) -> np.ndarray:
    """Basis of ``{x : M x = 0}`` as rows, one per free column in ascending order."""
    M = np.asarray(M, dtype=np.uint8)
    cols = M.shape[1]
    R, pivots = rref(M, F) if M.shape[0] else (M, [])
    free = [c for c in range(cols) if c not in set(pivots)]
    out = np.zeros((len(free), cols), dtype=np.uint8)
    for k, f in enumerate(free):
        out[k, f] = 1
        for row, c in zip(R, pivots):
            out[k, c] = F.neg_table[row[f]]
    return out


def complement_checks(basis: np.ndarray, F: FieldSpec, n: int) -> np.ndarray:
    """Rows ``D`` with ``D y = 0`` exactly for ``y`` in the span of ``basis``."""
    B = np.asarray(basis, dtype=np.uint8).reshape(-1, n)
    if B.shape[0] == 0:
        return np.eye(n, dtype=np.uint8)
    return nullspace_basis(B, F)
