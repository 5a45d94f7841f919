import json
import math

import numpy as np
import pytest

from cutquad.errors import InvalidArgumentError
from cutquad.geometry import BoxCell, make_constant, make_halfspace
from cutquad.octree import (boundary_measure, partition_element, partition_volume,
                            subcell_census)
from cutquad.tessellation import CellKind

from conftest import UNIT2, UNIT3, circle, sphere


def test_circle_depth3_census(circle3):
    c = subcell_census(circle3)
    assert c.total == 43
    assert c.by_kind == {"box": 15, "triangle": 28}
    # the quarter circle cuts three of the four level-1 children
    assert c.preserved[1] == 1


def test_circle_subcell_order(circle3):
    levels = [s.level for s in circle3.subcells]
    assert levels == sorted(levels)
    assert [s.id for s in circle3.subcells] == list(range(len(circle3)))
    assert all(s.level == 4 for s in circle3.subcells if s.kind is CellKind.TRIANGLE)


def test_sphere_depth3_census(sphere3):
    c = subcell_census(sphere3)
    assert c.by_kind == {"box": 68, "tetrahedron": 648, "pyramid": 66}
    assert c.preserved == {1: 4, 2: 15, 3: 49}


@pytest.mark.parametrize("depth", [2, 4, 6])
def test_circle_volume_and_length_converge(depth):
    p = circle(depth)
    exact = 1 - math.pi * 0.36 / 4
    assert abs(partition_volume(p) - exact) < 0.5 * 4.0 ** -depth
    assert boundary_measure(p) == pytest.approx(math.pi / 2 * 0.6, rel=0.05)


def test_sphere_volume_converges(sphere2, sphere3):
    exact = 1 - math.pi * 0.6 ** 3 / 6
    e2, e3 = (abs(partition_volume(p) - exact) for p in (sphere2, sphere3))
    assert e3 < 0.5 * 4.0 ** -3
    assert 3.0 < e2 / e3 < 5.0


def test_halfspace_is_exact():
    for d, elem in ((2, UNIT2), (3, UNIT3)):
        n = np.zeros(d)
        n[0] = 1.0
        for depth in (1, 2, 3):
            p = partition_element(make_halfspace(n, 0.5), elem, depth)
            assert partition_volume(p) == pytest.approx(0.5, rel=1e-13)


def test_oblique_halfspace_volume_exact():
    f = make_halfspace([0.3, 0.8, -0.2], 0.25)
    p = partition_element(f, UNIT3, 3)
    # exact volume by the complement
    q = partition_element(make_halfspace([-0.3, -0.8, 0.2], -0.25), UNIT3, 3)
    assert partition_volume(p) + partition_volume(q) == pytest.approx(1.0, rel=1e-12)


def test_inside_and_outside_elements():
    p = partition_element(make_constant(1.0, 2), UNIT2, 3)
    assert len(p) == 1 and p.subcells[0].level == 0
    q = partition_element(make_constant(-1.0, 3), UNIT3, 2)
    assert len(q) == 0 and q.outside
    assert partition_volume(q) == 0.0


def test_invalid_depth():
    with pytest.raises(InvalidArgumentError):
        partition_element(make_constant(1.0, 2), UNIT2, 0)


def test_partition_json(circle3):
    d = json.loads(json.dumps(circle3.to_dict()))
    assert d["max_depth"] == 3
    assert sum(len(l["boxes"]) for l in d["levels"]) == 15
    assert len(d["tessellated"]) == 28
    assert np.asarray(d["boundary_facets"]).shape[1:] == (2, 2)


def test_deterministic(circle3):
    again = circle(3)
    assert json.dumps(again.to_dict()) == json.dumps(circle3.to_dict())


def test_subcells_inside_element(sphere2):
    for s in sphere2.subcells:
        v = s.cell.vertices() if s.kind is CellKind.BOX else s.cell.vertices
        assert (v >= -1e-14).all() and (v <= 1 + 1e-14).all()
        assert s.volume > 0
