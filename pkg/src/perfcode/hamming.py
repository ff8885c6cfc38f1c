"""The q-ary Hamming code of length ``n = (q^m - 1)/(q - 1)``.

Columns of the parity-check matrix are all normalized nonzero vectors of
``F_q^m`` sorted by their base-q value (first row most significant).  That
order is the point numbering used everywhere else, including file formats.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass, field as dc_field

import numpy as np

from perfcode import fqlin
from perfcode._config import check_cap
from perfcode.gf import FieldSpec, field
from perfcode.pg import normalize_point, pencil


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class Triple:
    """A weight-3 codeword whose digit at ``anchor`` is 1."""

    codeword: np.ndarray
    anchor: int

    @property
    def support(self) -> list[int]:
        return fqlin.support(self.codeword)


@dataclass(frozen=True, eq=False)
class HammingCode:
    field: FieldSpec
    m: int
    H: np.ndarray = dc_field(repr=False)
    _index: dict = dc_field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.H.shape[1]

    @property
    def dimension(self) -> int:
        return self.n - self.m

    @property
    def size(self) -> int:
        return self.q**self.dimension

    def column(self, i: int) -> np.ndarray:
        self.check_point(i)
        return self.H[:, i - 1]

    def check_point(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise CodeError(f"coordinate {i} outside 1..{self.n}")

    def point_index(self, w: np.ndarray) -> int:
        """1-based column index of the normalized column ``w``."""
        try:
            return self._index[bytes(np.asarray(w, dtype=np.uint8))]
        except KeyError:
            raise CodeError(f"{fqlin.to_str(w)} is not a normalized column of H") from None

    def locate(self, v: np.ndarray) -> tuple[int, int]:
        """``(i, c)`` with ``v = c * h_i`` for nonzero ``v`` in ``F_q^m``."""
        w, c = normalize_point(v, self.field)
        return self.point_index(w), c

    def syndrome(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.uint8)
        if x.shape != (self.n,):
            raise fqlin.DimensionError(f"expected length {self.n}, got {x.shape}")
        return fqlin.matvec(self.H, x, self.field)

    def contains(self, x: np.ndarray) -> bool:
        return not self.syndrome(x).any()

    def decode(self, x: np.ndarray) -> tuple[np.ndarray, int | None]:
        """Nearest codeword and the 1-based error position (``None`` if ``x`` is a codeword)."""
        s = self.syndrome(x)
        if not s.any():
            return np.array(x, dtype=np.uint8), None
        i, c = self.locate(s)
        y = np.array(x, dtype=np.uint8)
        y[i - 1] = self.field.sub_table[y[i - 1], c]
        return y, i

    def generator(self) -> np.ndarray:
        """Deterministic nullspace basis of H, one row per free column."""
        return fqlin.nullspace_basis(self.H, self.field)

    def codeword_blocks(self, cap: int | None = None) -> Iterator[np.ndarray]:
        """All codewords as a stream of 2-D blocks, each codeword exactly once.

        Codeword order is the base-q order of the coefficient vector over
        :meth:`generator`, first generator most significant.
        """
        check_cap(f"enumerating the Hamming code ({self.q},{self.m})", self.size, cap)
        yield from span_blocks(self.generator(), self.field)

    def codewords(self, cap: int | None = None) -> Iterator[np.ndarray]:
        for block in self.codeword_blocks(cap):
            yield from block

    def triples_at(self, i: int) -> list[Triple]:
        """Every weight-3 codeword with digit 1 at coordinate ``i``.

        Walks the lines through ``i``; on each, ``e_i + a e_x - c e_y`` for
        the unique third point ``y`` hit by ``h_i + a h_x = c h_y``.
        """
        F = self.field
        hi = self.column(i)
        out = []
        for line in pencil(i, self):
            for x in line:
                if x == i:
                    continue
                hx = self.column(x)
                for a in F.nonzero:
                    y, c = self.locate(F.add_table[hi, F.mul_table[a, hx]])
                    if y < x:
                        continue
                    t = np.zeros(self.n, dtype=np.uint8)
                    t[i - 1] = 1
                    t[x - 1] = a
                    t[y - 1] = F.neg_table[c]
                    out.append(Triple(t, i))
        return out


def normalized_columns(F: FieldSpec, m: int) -> np.ndarray:
    """Normalized nonzero vectors of ``F_q^m`` in ascending base-q order, as columns."""
    cols = [
        digits
        for digits in itertools.product(range(F.q), repeat=m)
        if any(digits) and digits[next(k for k, d in enumerate(digits) if d)] == 1
    ]
    return np.array(cols, dtype=np.uint8).T


def build(q: int, m: int) -> HammingCode:
    """Hamming code over GF(q) with ``m`` check rows."""
    if m < 2:
        raise CodeError(f"Hamming codes need m >= 2, got m={m}")
    F = field(q)
    H = normalized_columns(F, m)
    H.setflags(write=False)
    index = {bytes(H[:, j].copy()): j + 1 for j in range(H.shape[1])}
    return HammingCode(F, m, H, index)


def span_blocks(basis: np.ndarray, F: FieldSpec, block_bits: int = 14) -> Iterator[np.ndarray]:
    """Every vector of ``span(basis)`` exactly once (rows independent), blockwise.

    The trailing generators are expanded into one lookup block; the leading
    ones step through base-q counters, each adding a fixed offset to it.
    """
    basis = np.asarray(basis, dtype=np.uint8)
    k, n = basis.shape
    low = 0
    while low < k and F.q ** (low + 1) <= 2**block_bits:
        low += 1
    low = max(low, min(k, 1))
    lows = basis[k - low :]
    highs = basis[: k - low]
    coeffs = np.array(list(itertools.product(range(F.q), repeat=low)), dtype=np.uint8).reshape(-1, low)
    table = fqlin.matmul(coeffs, lows, F) if low else np.zeros((1, n), dtype=np.uint8)
    for hc in itertools.product(range(F.q), repeat=k - low):
        offset = fqlin.combine(hc, highs, F) if hc else np.zeros(n, dtype=np.uint8)
        yield F.add_table[table, offset[None, :]]


def read_code_file(path) -> tuple[tuple[int, ...], np.ndarray]:
    """Parse a code file: header ``q m n`` then one digit string per vector."""
    header = None
    rows = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = tuple(int(tok) for tok in line.split())
                if len(header) != 3:
                    raise CodeError(f"{path}:{lineno}: header must be 'q m n'")
                continue
            if len(line) != header[2] or not line.isdigit():
                raise CodeError(f"{path}:{lineno}: expected {header[2]} digits, got {line!r}")
            rows.append([int(ch) for ch in line])
    if header is None:
        raise CodeError(f"{path}: missing header")
    q = header[0]
    arr = np.array(rows, dtype=np.uint8).reshape(-1, header[2])
    if arr.size and arr.max() >= q:
        raise CodeError(f"{path}: digit out of range for q={q}")
    return header, arr


def write_code_file(fh, q: int, m: int, n: int, vectors, comments=()) -> int:
    """Write a code file to an open text handle; returns the vector count."""
    for c in comments:
        fh.write(f"# {c}\n")
    fh.write(f"{q} {m} {n}\n")
    count = 0
    table = np.frombuffer(b"0123456789", dtype=np.uint8)
    for block in vectors:
        block = np.atleast_2d(np.asarray(block, dtype=np.uint8))
        if block.shape[0] == 0:
            continue
        text = np.concatenate([table[block], np.full((block.shape[0], 1), ord("\n"), np.uint8)], axis=1)
        fh.write(text.tobytes().decode("ascii"))
        count += block.shape[0]
    return count
