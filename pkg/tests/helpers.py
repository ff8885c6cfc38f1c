"""Random valid short codes and column choices for property tests."""

from __future__ import annotations

import itertools

import numpy as np

from perfcode import fqlin
from perfcode.family import ColumnChoice, LambdaCode


def random_lambda(rng, q, length, wmin, dmin, tries=200, flavor="general", k=0):
    """Greedy random code: keep drawing vectors that respect the bounds."""
    picked = []
    for _ in range(tries):
        v = rng.integers(0, q, length).astype(np.uint8)
        if fqlin.weight(v) < wmin:
            continue
        if all(fqlin.hamming_distance(v, w) >= dmin for w in picked):
            picked.append(v)
    arr = np.array(picked, dtype=np.uint8).reshape(-1, length)
    from perfcode.gf import field

    return LambdaCode(field(q), arr, flavor, k)


def random_base(code, rng):
    """m random independent columns, in random order."""
    while True:
        cols = tuple(int(c) for c in rng.choice(np.arange(1, code.n + 1), code.m, replace=False))
        if fqlin.rank(code.H[:, [c - 1 for c in cols]].T, code.field) == code.m:
            return ColumnChoice(cols)


def random_extended_choice(code, k, rng):
    base = random_base(code, rng)
    pairs = list(itertools.combinations(base.base, 2))
    rng.shuffle(pairs)
    extra = []
    for a, b in pairs[:k]:
        extra.append(code.point_index(fqlin.add(code.column(a), code.column(b), code.field)))
    return ColumnChoice(base.base, tuple(extra))
