"""Table-driven arithmetic in GF(q) for the small orders q in {2, 3, 4, 5, 7, 8, 9}.

Elements are digits ``0..q-1``.  For a prime power ``q = p**k`` the digit
``d = c0 + c1*p + ... + c_{k-1}*p**(k-1)`` stands for the polynomial
``c0 + c1*x + ... + c_{k-1}*x**(k-1)`` reduced modulo a fixed irreducible
polynomial, so the encoding is reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# (p, k, low-order coefficients of the monic modulus, constant term first)
_MODULI = {
    4: (2, 2, (1, 1)),  # x^2 + x + 1
    8: (2, 3, (1, 1, 0)),  # x^3 + x + 1
    9: (3, 2, (1, 0)),  # x^2 + 1
}
_MODULUS_NAMES = {4: "x^2+x+1", 8: "x^3+x+1", 9: "x^2+1"}


class FieldError(ValueError):
    """Unsupported field order or an undefined field operation."""


def _to_poly(d: int, p: int, k: int) -> list[int]:
    coeffs = []
    for _ in range(k):
        coeffs.append(d % p)
        d //= p
    return coeffs


def _from_poly(coeffs: list[int], p: int) -> int:
    d = 0
    for c in reversed(coeffs):
        d = d * p + c
    return d


def _poly_mulmod(a: list[int], b: list[int], p: int, k: int, low: tuple[int, ...]) -> list[int]:
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    # x^k = -(low[0] + low[1] x + ...)
    for deg in range(2 * k - 2, k - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for j, lj in enumerate(low):
                prod[deg - k + j] = (prod[deg - k + j] - c * lj) % p
    return prod[:k]


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The finite field GF(q) as lookup tables.

    ``add_table[a, b]``, ``mul_table[a, b]``, ``neg_table[a]`` and
    ``inv_table[a]`` are read-only ``uint8`` arrays; ``inv_table[0]`` is
    unused and holds 0.
    """

    q: int
    p: int
    modulus: str
    add_table: np.ndarray = dc_field(repr=False)
    mul_table: np.ndarray = dc_field(repr=False)
    neg_table: np.ndarray = dc_field(repr=False)
    inv_table: np.ndarray = dc_field(repr=False)
    sub_table: np.ndarray = dc_field(repr=False)

    @property
    def is_prime(self) -> bool:
        return self.p == self.q

    @property
    def nonzero(self) -> range:
        return range(1, self.q)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("GF", self.q))


_CACHE: dict[int, FieldSpec] = {}


def field(q: int) -> FieldSpec:
    """Return the canonical :class:`FieldSpec` for GF(q)."""
    if q in _CACHE:
        return _CACHE[q]
    if q not in SUPPORTED_ORDERS:
        raise FieldError(f"unsupported field order q={q}; expected one of {SUPPORTED_ORDERS}")

    if q in _MODULI:
        p, k, low = _MODULI[q]
        modulus = _MODULUS_NAMES[q]
    else:
        p, k, low = q, 1, ()
        modulus = f"mod {q}"

    add = np.zeros((q, q), dtype=np.uint8)
    mul = np.zeros((q, q), dtype=np.uint8)
    for a in range(q):
        pa = _to_poly(a, p, k)
        for b in range(q):
            pb = _to_poly(b, p, k)
            add[a, b] = _from_poly([(x + y) % p for x, y in zip(pa, pb)], p)
            if k == 1:
                mul[a, b] = (a * b) % p
            else:
                mul[a, b] = _from_poly(_poly_mulmod(pa, pb, p, k, low), p)

    neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    for a in range(1, q):
        hits = np.flatnonzero(mul[a] == 1)
        if len(hits) != 1:
            raise FieldError(f"modulus for q={q} is not irreducible")
        inv[a] = hits[0]
    sub = add[:, neg]

    for t in (add, mul, neg, inv, sub):
        t.setflags(write=False)
    spec = FieldSpec(q, p, modulus, add, mul, neg, inv, sub)
    _CACHE[q] = spec
    return spec
