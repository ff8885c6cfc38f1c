import itertools

import numpy as np
import pytest

from perfcode import fqlin
from perfcode.gf import field
from perfcode.hamming import build
from perfcode.pg import GeometryError, collinear, line_through, normalize_point, pencil, plane_points


def idx(code, s):
    return code.point_index(fqlin.as_vector(s, code.field))


def test_normalize_examples():
    F3 = field(3)
    w, c = normalize_point(fqlin.as_vector("021", F3), F3)
    assert (fqlin.to_str(w), c) == ("012", 2)
    w, c = normalize_point(fqlin.as_vector("101", field(2)), field(2))
    assert (fqlin.to_str(w), c) == ("101", 1)
    w, c = normalize_point(fqlin.as_vector("222", F3), F3)
    assert (fqlin.to_str(w), c) == ("111", 2)


def test_normalize_zero():
    with pytest.raises(GeometryError):
        normalize_point(np.zeros(3, np.uint8), field(3))


def test_line_of_unit_columns(h15):
    e1, e2, e12 = idx(h15, "1000"), idx(h15, "0100"), idx(h15, "1100")
    assert line_through(e1, e2, h15) == tuple(sorted((e1, e2, e12)))


def test_line_matches_enumerated_span(h15):
    # the span of h_x, h_y enumerated directly
    F = h15.field
    for x, y in [(1, 2), (3, 12), (7, 15)]:
        hx, hy = h15.column(x), h15.column(y)
        pts = set()
        for a, b in itertools.product(range(2), repeat=2):
            v = fqlin.add(fqlin.scale(a, hx, F), fqlin.scale(b, hy, F), F)
            if v.any():
                pts.add(h15.point_index(v))
        assert set(line_through(x, y, h15)) == pts


def test_line_same_point():
    with pytest.raises(GeometryError):
        line_through(2, 2, build(2, 3))


@pytest.mark.parametrize("q,m", [(2, 3), (2, 4), (3, 3), (4, 3), (5, 3)])
def test_line_sizes_and_uniqueness(q, m):
    code = build(q, m)
    pairs = list(itertools.combinations(range(1, code.n + 1), 2))
    for x, y in pairs[:200]:
        line = line_through(x, y, code)
        assert len(line) == q + 1 and x in line and y in line
        for a, b in itertools.combinations(line, 2):
            assert line_through(a, b, code) == line


@pytest.mark.parametrize("q,m,lines", [(2, 4, 7), (3, 3, 4), (2, 3, 3), (4, 3, 5)])
def test_pencil_partitions(q, m, lines):
    code = build(q, m)
    for i in range(1, code.n + 1):
        pen = pencil(i, code)
        assert len(pen) == lines == (code.n - 1) // q
        rest = [p for line in pen for p in line if p != i]
        assert sorted(rest) == [p for p in range(1, code.n + 1) if p != i]


def test_collinear_examples(h15):
    assert collinear(idx(h15, "1000"), idx(h15, "0100"), idx(h15, "1100"), h15)
    assert not collinear(idx(h15, "1000"), idx(h15, "0100"), idx(h15, "0010"), h15)
    h = build(3, 3)
    assert collinear(idx(h, "100"), idx(h, "010"), idx(h, "120"), h)


@pytest.mark.parametrize("q,m,size", [(2, 4, 7), (3, 3, 13), (2, 5, 7)])
def test_plane_size_and_lines(q, m, size):
    code = build(q, m)
    x, y = 1, 2
    z = next(p for p in range(3, code.n + 1) if not collinear(x, y, p, code))
    plane = plane_points(x, y, z, code)
    assert len(plane) == size == q * q + q + 1
    assert set(line_through(x, y, code)) <= set(plane)
    for a, b in itertools.combinations(plane[:6], 2):
        assert set(line_through(a, b, code)) <= set(plane)


def test_plane_rejects_collinear(h15):
    x, y = 1, 2
    z = [p for p in line_through(x, y, h15) if p not in (x, y)][0]
    with pytest.raises(GeometryError, match="collinear"):
        plane_points(x, y, z, h15)
