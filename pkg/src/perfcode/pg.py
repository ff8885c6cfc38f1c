"""Points, lines and planes of PG(m-1, q) realised on the columns of H.

Point ``i`` is column ``h_i`` of the canonical parity-check matrix (1-based).
Lines and planes are returned as sorted tuples of point indices.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from perfcode.gf import FieldSpec

if TYPE_CHECKING:
    from perfcode.hamming import HammingCode


class GeometryError(ValueError):
    pass


def normalize_point(v: np.ndarray, F: FieldSpec) -> tuple[np.ndarray, int]:
    """Return ``(w, c)`` with ``w`` normalized (first nonzero digit 1) and ``v = c*w``."""
    v = np.asarray(v, dtype=np.uint8)
    nz = np.flatnonzero(v)
    if nz.size == 0:
        raise GeometryError("the zero vector is not a projective point")
    c = int(v[nz[0]])
    return F.mul_table[F.inv_table[c], v], c


def _point_of(v: np.ndarray, code: HammingCode) -> tuple[int, int]:
    w, c = normalize_point(v, code.field)
    return code.point_index(w), c


def line_through(x: int, y: int, code: HammingCode) -> tuple[int, ...]:
    """The ``q+1`` points on the line through points ``x`` and ``y``."""
    if x == y:
        raise GeometryError(f"a line needs two distinct points, got {x} twice")
    F = code.field
    hx, hy = code.column(x), code.column(y)
    pts = {x}
    for a in range(F.q):
        pts.add(_point_of(F.add_table[F.mul_table[a, hx], hy], code)[0])
    return tuple(sorted(pts))


def pencil(i: int, code: HammingCode) -> list[tuple[int, ...]]:
    """All ``(n-1)/q`` lines through point ``i``, ordered by their smallest other point."""
    code.check_point(i)
    covered = {i}
    lines = []
    for j in range(1, code.n + 1):
        if j in covered:
            continue
        line = line_through(i, j, code)
        covered.update(line)
        lines.append(line)
    return lines


def collinear(x: int, y: int, z: int, code: HammingCode) -> bool:
    from perfcode.fqlin import rank

    cols = np.stack([code.column(x), code.column(y), code.column(z)])
    return rank(cols, code.field) == 2


def plane_points(x: int, y: int, z: int, code: HammingCode) -> tuple[int, ...]:
    """The ``q^2+q+1`` points of the plane spanned by three non-collinear points."""
    if len({x, y, z}) < 3:
        raise GeometryError(f"plane needs pairwise distinct points, got {(x, y, z)}")
    if collinear(x, y, z, code):
        raise GeometryError(f"points {(x, y, z)} are collinear and span no plane")
    F = code.field
    hx, hy, hz = code.column(x), code.column(y), code.column(z)
    pts = set(line_through(x, y, code))
    for a in range(F.q):
        for b in range(F.q):
            v = F.add_table[F.add_table[F.mul_table[a, hx], F.mul_table[b, hy]], hz]
            pts.add(_point_of(v, code)[0])
    return tuple(sorted(pts))
