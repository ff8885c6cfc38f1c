"""i-components of the Hamming code.

``R_i`` is the span of all triples with digit 1 at coordinate ``i``.  It is
built as the sum of the line subcodes over the pencil through ``i``; the
triple-span route is kept alongside so the two can be compared.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache

import numpy as np

from perfcode import fqlin
from perfcode.hamming import HammingCode, span_blocks
from perfcode.pg import line_through, pencil, plane_points


class ComponentError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Component:
    """The coset ``R_anchor + rep`` of the Hamming code."""

    code: HammingCode
    anchor: int
    basis: np.ndarray = dc_field(repr=False)
    rep: np.ndarray = dc_field(repr=False)

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    @property
    def size(self) -> int:
        return self.code.q**self.dimension

    @cached_property
    def checks(self) -> np.ndarray:
        """Rows ``D`` such that ``D y = 0`` iff ``y`` lies in ``R_anchor``."""
        return fqlin.complement_checks(self.basis, self.code.field, self.code.n)

    def with_rep(self, u: np.ndarray) -> Component:
        return Component(self.code, self.anchor, self.basis, np.asarray(u, dtype=np.uint8))

    def same_coset(self, other: Component) -> bool:
        return (
            self.anchor == other.anchor
            and in_span(fqlin.sub(self.rep, other.rep, self.code.field), self.basis, self.code.field)
        )

    def elements(self) -> Iterator[np.ndarray]:
        """Blocks of every vector of the coset."""
        F = self.code.field
        for block in span_blocks(self.basis, F):
            yield F.add_table[block, self.rep[None, :]]

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        coeffs = rng.integers(0, self.code.q, size=self.dimension, dtype=np.uint8)
        return fqlin.add(fqlin.combine(coeffs, self.basis, self.code.field), self.rep, self.code.field)


def in_span(v, basis, F) -> bool:
    return fqlin.in_span(v, basis, F)[0]


def line_subcode(code: HammingCode, line) -> np.ndarray:
    """Basis of the codewords supported inside ``line`` (rows of length n)."""
    cols = [p - 1 for p in line]
    local = fqlin.nullspace_basis(code.H[:, cols], code.field)
    out = np.zeros((local.shape[0], code.n), dtype=np.uint8)
    out[:, cols] = local
    return out


@lru_cache(maxsize=4096)
def _pencil_basis(code: HammingCode, i: int) -> np.ndarray:
    parts = [line_subcode(code, line) for line in pencil(i, code)]
    basis = fqlin.row_space(np.concatenate(parts), code.field, code.n)
    basis.setflags(write=False)
    return basis


def component_basis(code: HammingCode, i: int) -> Component:
    """``R_i`` with representative 0, from the line subcodes of the pencil at ``i``."""
    code.check_point(i)
    return Component(code, i, _pencil_basis(code, i), np.zeros(code.n, dtype=np.uint8))


def triple_span_basis(code: HammingCode, i: int) -> np.ndarray:
    """RREF of the span of ``triples_at(i)``; independent of the pencil route."""
    triples = [t.codeword for t in code.triples_at(i)]
    return fqlin.row_space(np.array(triples, dtype=np.uint8).reshape(-1, code.n), code.field, code.n)


def component(code: HammingCode, i: int, u) -> Component:
    u = np.asarray(u, dtype=np.uint8)
    if code.syndrome(u).any():
        raise ComponentError("component representative must be a codeword")
    return component_basis(code, i).with_rep(u)


def in_component(comp: Component, x: np.ndarray) -> bool:
    """Whether ``x`` lies in ``R_anchor + rep``."""
    F = comp.code.field
    return in_span(fqlin.sub(np.asarray(x, dtype=np.uint8), comp.rep, F), comp.basis, F)


@lru_cache(maxsize=4096)
def joint_basis(code: HammingCode, i: int, j: int) -> np.ndarray:
    """RREF basis of ``R_i + R_j``; cached per unordered pair."""
    if i > j:
        return joint_basis(code, j, i)
    stacked = np.concatenate([_pencil_basis(code, i), _pencil_basis(code, j)])
    basis = fqlin.row_space(stacked, code.field, code.n)
    basis.setflags(write=False)
    return basis


def in_joint(code: HammingCode, i: int, j: int, x: np.ndarray) -> bool:
    """Membership in ``R_i`` (``i == j``) or ``R_i + R_j``."""
    basis = _pencil_basis(code, i) if i == j else joint_basis(code, i, j)
    return in_span(x, basis, code.field)


def theorem1_holds(code: HammingCode, i: int, u) -> tuple[bool, int | None]:
    """Every support point ``x != i`` of ``u`` in ``R_i`` has a partner on ``l_ix``.

    Returns ``(True, None)`` or ``(False, x)`` for the first lonely ``x``.
    """
    u = np.asarray(u, dtype=np.uint8)
    if not in_span(u, _pencil_basis(code, i), code.field):
        raise ComponentError(f"vector is not in R_{i}")
    for x in fqlin.support(u):
        if x == i:
            continue
        if not any(u[y - 1] for y in line_through(i, x, code) if y not in (i, x)):
            return False, x
    return True, None


def theorem2_holds(code: HammingCode, i: int, j: int, u) -> tuple[bool, int | None]:
    """Every support point ``x`` off ``l_ij`` has a partner on the plane ``P_ijx``."""
    if i == j:
        raise ComponentError("needs two distinct anchors")
    u = np.asarray(u, dtype=np.uint8)
    if not in_joint(code, i, j, u):
        raise ComponentError(f"vector is not in R_{i} + R_{j}")
    lij = set(line_through(i, j, code))
    for x in fqlin.support(u):
        if x in lij:
            continue
        if not any(u[y - 1] for y in plane_points(i, j, x, code) if y not in (i, j, x)):
            return False, x
    return True, None


def random_joint_element(code: HammingCode, i: int, j: int, rng: np.random.Generator) -> np.ndarray:
    basis = joint_basis(code, i, j)
    coeffs = rng.integers(0, code.q, size=basis.shape[0], dtype=np.uint8)
    return fqlin.combine(coeffs, basis, code.field)
