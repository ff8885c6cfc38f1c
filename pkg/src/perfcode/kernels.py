"""Hot loops behind the brute-force oracles, each in a numba and a numpy flavor.

``PERFCODE_BACKEND=numpy`` forces the pure-numpy path; otherwise numba is used
when it imports.  Both paths return identical results (the test suite runs
them side by side), so the flag only trades compile time for throughput.

Membership of a switched code is decided from one stacked syndrome
``S = M x``.  The first ``m`` rows of ``M`` are ``H``; each switched coset
``s`` owns a segment of rows whose kernel is ``R_{i_s}``, plus two targets:
``tgt_out`` (image of ``u_s``) and ``tgt_in`` (image of ``u_s + mu_s e_{i_s}``).
A vector is a member iff its segment hits some ``tgt_in``, or its ``H`` part
vanishes and no segment hits its ``tgt_out``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def backend() -> str:
    choice = os.environ.get("PERFCODE_BACKEND", "").strip().lower()
    if choice == "numpy" or not HAVE_NUMBA:
        return "numpy"
    if choice not in ("", "numba"):
        raise ValueError(f"PERFCODE_BACKEND must be 'numba' or 'numpy', got {choice!r}")
    return "numba"


@dataclass(frozen=True)
class SyndromeProgram:
    """Stacked check rows and targets describing one switched code."""

    q: int
    m: int
    M: np.ndarray  # (R, n) uint8
    seg_off: np.ndarray  # (t,) int64
    seg_len: np.ndarray  # (t,) int64
    tgt_out: np.ndarray  # (R,) uint8, meaningful on segment rows
    tgt_in: np.ndarray  # (R,) uint8
    shift_col: np.ndarray  # (t,) int64, 0-based anchor
    shift_val: np.ndarray  # (t,) uint8, mu_s

    @property
    def n(self) -> int:
        return self.M.shape[1]

    @property
    def rows(self) -> int:
        return self.M.shape[0]

    def col_multiples(self, mul: np.ndarray) -> np.ndarray:
        """``cm[j, d] = d * M[:, j]`` as a (n, q, R) array."""
        return np.ascontiguousarray(mul[np.arange(self.q)[None, :, None], self.M.T[:, None, :]])


def index_digits(start: int, stop: int, q: int, n: int) -> np.ndarray:
    """Vectors with canonical indices ``start..stop-1`` (first coordinate most significant)."""
    idx = np.arange(start, stop, dtype=np.int64)
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] // powers[None, :]) % q).astype(np.uint8)


def vector_codes(X: np.ndarray, q: int) -> np.ndarray:
    """Canonical integer index of each row of ``X``."""
    n = X.shape[1]
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return X.astype(np.int64) @ powers


# --------------------------------------------------------------------------
# stacked syndromes and membership
# --------------------------------------------------------------------------


def _syndromes_numpy(X, M, add, mul):
    S = np.zeros((X.shape[0], M.shape[0]), dtype=np.uint8)
    for j in range(M.shape[1]):
        S = add[S, mul[X[:, j][:, None], M[:, j][None, :]]]
    return S


def _member_numpy(S, m, seg_off, seg_len, tgt_out, tgt_in):
    lin = ~S[:, :m].any(axis=1)
    hit_in = np.zeros(S.shape[0], dtype=bool)
    hit_out = np.zeros(S.shape[0], dtype=bool)
    for o, L in zip(seg_off, seg_len):
        seg = S[:, o : o + L]
        hit_in |= (seg == tgt_in[o : o + L]).all(axis=1)
        hit_out |= (seg == tgt_out[o : o + L]).all(axis=1)
    return hit_in | (lin & ~hit_out)


@njit(cache=True, inline="always")
def _member_nb(S, m, seg_off, seg_len, tgt_out, tgt_in):
    for s in range(seg_off.shape[0]):
        o = seg_off[s]
        hit = True
        for r in range(o, o + seg_len[s]):
            if S[r] != tgt_in[r]:
                hit = False
                break
        if hit:
            return True
    for r in range(m):
        if S[r] != 0:
            return False
    for s in range(seg_off.shape[0]):
        o = seg_off[s]
        hit = True
        for r in range(o, o + seg_len[s]):
            if S[r] != tgt_out[r]:
                hit = False
                break
        if hit:
            return False
    return True


@njit(cache=True, inline="always")
def _syndrome_nb(x, M, add, mul, out):
    R = M.shape[0]
    for r in range(R):
        out[r] = 0
    for j in range(x.shape[0]):
        d = x[j]
        if d != 0:
            for r in range(R):
                out[r] = add[out[r], mul[d, M[r, j]]]


@njit(cache=True)
def _member_rows_nb(X, M, m, seg_off, seg_len, tgt_out, tgt_in, add, mul):
    out = np.zeros(X.shape[0], dtype=np.bool_)
    S = np.zeros(M.shape[0], dtype=np.uint8)
    for k in range(X.shape[0]):
        _syndrome_nb(X[k], M, add, mul, S)
        out[k] = _member_nb(S, m, seg_off, seg_len, tgt_out, tgt_in)
    return out


def member_rows(prog: SyndromeProgram, X: np.ndarray, add: np.ndarray, mul: np.ndarray) -> np.ndarray:
    """Membership of every row of ``X``."""
    X = np.ascontiguousarray(np.atleast_2d(X), dtype=np.uint8)
    if backend() == "numba":
        return _member_rows_nb(
            X, prog.M, prog.m, prog.seg_off, prog.seg_len, prog.tgt_out, prog.tgt_in, add, mul
        )
    S = _syndromes_numpy(X, prog.M, add, mul)
    return _member_numpy(S, prog.m, prog.seg_off, prog.seg_len, prog.tgt_out, prog.tgt_in)


# --------------------------------------------------------------------------
# radius-1 ball counts against a syndrome program
# --------------------------------------------------------------------------


# The membership test is written out inside the hot loops below: a helper
# call taking the program arrays costs more than the test itself.


@njit(cache=True)
def _ball_counts_nb(X, M, cm, m, seg_off, seg_len, tgt_out, tgt_in, add, mul, q, stop_early):
    N, n = X.shape
    R = M.shape[0]
    t = seg_off.shape[0]
    counts = np.zeros(N, dtype=np.int64)
    S = np.zeros(R, dtype=np.uint8)
    for k in range(N):
        for r in range(R):
            S[r] = 0
        for j in range(n):
            x = X[k, j]
            if x != 0:
                for r in range(R):
                    S[r] = add[S[r], mul[x, M[r, j]]]
        c = 0
        for j in range(n + 1):
            for d in range(1, q):
                if j == n and d > 1:
                    break
                # j == n stands for x itself (shift by zero)
                dd = 0 if j == n else d
                jj = 0 if j == n else j
                member = False
                for s in range(t):
                    o = seg_off[s]
                    hit = True
                    for r in range(o, o + seg_len[s]):
                        if add[S[r], cm[jj, dd, r]] != tgt_in[r]:
                            hit = False
                            break
                    if hit:
                        member = True
                        break
                if not member:
                    member = True
                    for r in range(m):
                        if add[S[r], cm[jj, dd, r]] != 0:
                            member = False
                            break
                    if member:
                        for s in range(t):
                            o = seg_off[s]
                            hit = True
                            for r in range(o, o + seg_len[s]):
                                if add[S[r], cm[jj, dd, r]] != tgt_out[r]:
                                    hit = False
                                    break
                            if hit:
                                member = False
                                break
                if member:
                    c += 1
        counts[k] = c
        if stop_early and c != 1:
            return counts[: k + 1]
    return counts


def _ball_counts_numpy(X, prog, cm, add, mul):
    S = _syndromes_numpy(X, prog.M, add, mul)
    args = (prog.m, prog.seg_off, prog.seg_len, prog.tgt_out, prog.tgt_in)
    counts = _member_numpy(S, *args).astype(np.int64)
    for j in range(prog.n):
        for d in range(1, prog.q):
            counts += _member_numpy(add[S, cm[j, d][None, :]], *args)
    return counts


def ball_counts(prog: SyndromeProgram, X: np.ndarray, add, mul, stop_early: bool = False) -> np.ndarray:
    """For each row ``x``, the number of members in the radius-1 ball around ``x``.

    With ``stop_early`` the numba path may return a prefix ending at the
    first count different from 1; the numpy path always returns all counts.
    """
    X = np.ascontiguousarray(X, dtype=np.uint8)
    cm = prog.col_multiples(mul)
    if backend() == "numba":
        return _ball_counts_nb(
            X, prog.M, cm, prog.m, prog.seg_off, prog.seg_len, prog.tgt_out, prog.tgt_in,
            add, mul, prog.q, stop_early,
        )
    return _ball_counts_numpy(X, prog, cm, add, mul)


# --------------------------------------------------------------------------
# radius-1 ball counts against an explicit sorted list of codeword indices
# --------------------------------------------------------------------------


@njit(cache=True, inline="always")
def _contains_sorted_nb(codes, key):
    lo = 0
    hi = codes.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if codes[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo < codes.shape[0] and codes[lo] == key


@njit(cache=True)
def _table_ball_counts_nb(X, codes, q, stop_early):
    N, n = X.shape
    powers = np.empty(n, dtype=np.int64)
    p = 1
    for j in range(n - 1, -1, -1):
        powers[j] = p
        p *= q
    counts = np.zeros(N, dtype=np.int64)
    for k in range(N):
        key = 0
        for j in range(n):
            key += np.int64(X[k, j]) * powers[j]
        c = 1 if _contains_sorted_nb(codes, key) else 0
        for j in range(n):
            base = key - np.int64(X[k, j]) * powers[j]
            for v in range(q):
                if v != X[k, j] and _contains_sorted_nb(codes, base + v * powers[j]):
                    c += 1
        counts[k] = c
        if stop_early and c != 1:
            return counts[: k + 1]
    return counts


def _table_ball_counts_numpy(X, codes, q):
    n = X.shape[1]
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    keys = X.astype(np.int64) @ powers

    def present(k):
        pos = np.searchsorted(codes, k)
        pos = np.minimum(pos, len(codes) - 1)
        return codes[pos] == k if len(codes) else np.zeros(k.shape, dtype=bool)

    counts = present(keys).astype(np.int64)
    for j in range(n):
        base = keys - X[:, j].astype(np.int64) * powers[j]
        for v in range(q):
            nb = base + v * powers[j]
            counts += present(nb) & (X[:, j] != v)
    return counts


def table_ball_counts(codes: np.ndarray, X: np.ndarray, q: int, stop_early: bool = False) -> np.ndarray:
    """Ball counts against a sorted ``int64`` array of codeword indices."""
    X = np.ascontiguousarray(X, dtype=np.uint8)
    if backend() == "numba":
        return _table_ball_counts_nb(X, codes, q, stop_early)
    return _table_ball_counts_numpy(X, codes, q)


# --------------------------------------------------------------------------
# streaming the switched code through the oracle
# --------------------------------------------------------------------------


@njit(cache=True)
def _switch_audit_nb(S_low, S_high, M_shift, m, seg_off, seg_len, tgt_out, tgt_in, add):
    """Per codeword c = low + high: find its coset, shift it, re-test membership."""
    R = S_low.shape[1]
    S = np.zeros(R, dtype=np.uint8)
    accepted = 0
    switched = 0
    t = seg_off.shape[0]
    for h in range(S_high.shape[0]):
        for l in range(S_low.shape[0]):
            for r in range(R):
                S[r] = add[S_low[l, r], S_high[h, r]]
            which = -1
            for s in range(t):
                o = seg_off[s]
                hit = True
                for r in range(o, o + seg_len[s]):
                    if S[r] != tgt_out[r]:
                        hit = False
                        break
                if hit:
                    which = s
                    break
            if which >= 0:
                switched += 1
                for r in range(R):
                    S[r] = add[S[r], M_shift[which, r]]
            member = False
            for s in range(t):
                o = seg_off[s]
                hit = True
                for r in range(o, o + seg_len[s]):
                    if S[r] != tgt_in[r]:
                        hit = False
                        break
                if hit:
                    member = True
                    break
            if not member:
                member = True
                for r in range(m):
                    if S[r] != 0:
                        member = False
                        break
                if member:
                    for s in range(t):
                        o = seg_off[s]
                        hit = True
                        for r in range(o, o + seg_len[s]):
                            if S[r] != tgt_out[r]:
                                hit = False
                                break
                        if hit:
                            member = False
                            break
            if member:
                accepted += 1
    return accepted, switched


def _switch_audit_numpy(S_low, S_high, M_shift, prog, add):
    args = (prog.m, prog.seg_off, prog.seg_len, prog.tgt_out, prog.tgt_in)
    accepted = 0
    switched = 0
    for h in range(S_high.shape[0]):
        S = add[S_low, S_high[h][None, :]]
        which = np.full(S.shape[0], -1, dtype=np.int64)
        for s, (o, L) in enumerate(zip(prog.seg_off, prog.seg_len)):
            hit = (S[:, o : o + L] == prog.tgt_out[o : o + L]).all(axis=1) & (which < 0)
            which[hit] = s
        moved = which >= 0
        switched += int(moved.sum())
        if moved.any():
            S[moved] = add[S[moved], M_shift[which[moved]]]
        accepted += int(_member_numpy(S, *args).sum())
    return accepted, switched


def switch_audit(prog: SyndromeProgram, S_low: np.ndarray, S_high: np.ndarray, add, mul) -> tuple[int, int]:
    """Push every codeword ``low + high`` through the switching map.

    ``S_low`` / ``S_high`` hold stacked syndromes of the two halves of the
    codeword enumeration.  Returns ``(accepted, switched)``: how many images
    the membership test accepts, and how many codewords were moved.
    """
    M_shift = np.ascontiguousarray(mul[prog.shift_val[:, None], prog.M.T[prog.shift_col]]).reshape(
        len(prog.shift_col), prog.rows
    )
    S_low = np.ascontiguousarray(S_low, dtype=np.uint8)
    S_high = np.ascontiguousarray(S_high, dtype=np.uint8)
    if backend() == "numba":
        a, s = _switch_audit_nb(
            S_low, S_high, M_shift, prog.m, prog.seg_off, prog.seg_len, prog.tgt_out, prog.tgt_in, add
        )
        return int(a), int(s)
    return _switch_audit_numpy(S_low, S_high, M_shift, prog, add)
