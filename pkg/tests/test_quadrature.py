import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutquad.errors import InvalidArgumentError, SequenceDepletedError
from cutquad.geometry import BoxCell
from cutquad.quadrature import (BOX_MAX_INDEX, TETRAHEDRON_CATALOG, TRIANGLE_CATALOG,
                                BoxRuleKind, assemble_scheme, box_rule, gauss_1d,
                                index_for_degree, max_index, reference_scheme, rule_degree,
                                rule_size, scheme_size, scheme_to_csv, simplex_rule,
                                uniform_degree_indices)
from cutquad.tessellation import CellKind, SimplexCell

from oracles import gm_integral, random_polynomial, subdivision_integral

TRI = SimplexCell(CellKind.TRIANGLE, np.array([[0.1, 0.2], [0.7, 0.3], [0.3, 0.9]]), 4)
TET = SimplexCell(CellKind.TETRAHEDRON,
                  np.array([[0.1, 0.0, 0.2], [0.9, 0.1, 0.0], [0.2, 0.8, 0.1], [0.3, 0.3, 0.9]]), 4)
PYR = SimplexCell(CellKind.PYRAMID,
                  np.array([[0.0, 0.0, 0.0], [0.5, 0.0, 0.0], [0.5, 0.5, 0.0], [0.0, 0.5, 0.0],
                            [0.3, 0.1, 0.4]]), 4)


def _monomials(d, degree):
    return [e for e in itertools.product(range(degree + 1), repeat=d) if sum(e) <= degree]


def _exact_simplex_monomial(V, e):
    """Exact integral of a monomial over a simplex via the Grundmann-Moeller oracle."""
    from oracles import _simplex_integral
    f = lambda x: np.prod(x ** np.array(e), axis=-1)
    return _simplex_integral(np.asarray(V), f, max(0, math.ceil((sum(e) - 1) / 2)))


def test_gauss_1d_examples():
    x, w = gauss_1d(1)
    assert x[0] == 0.5 and w[0] == 1.0
    x, w = gauss_1d(2)
    np.testing.assert_allclose(x, [0.5 - 0.5 / np.sqrt(3), 0.5 + 0.5 / np.sqrt(3)], rtol=1e-15)
    np.testing.assert_allclose(w, [0.5, 0.5], rtol=1e-15)
    assert w @ x ** 3 == pytest.approx(0.25, rel=1e-15)
    with pytest.raises(InvalidArgumentError):
        gauss_1d(0)


@pytest.mark.parametrize("n", range(1, 10))
def test_gauss_1d_exactness(n):
    x, w = gauss_1d(n)
    for p in range(2 * n):
        assert w @ x ** p == pytest.approx(1 / (p + 1), rel=1e-13)


def test_box_rules():
    sq = BoxCell(0, (0.0, 0.0), 1.0)
    r = box_rule(BoxRuleKind.GAUSS, 2, sq)
    assert len(r) == 4 and np.allclose(r.weights, 0.25)
    r = box_rule(BoxRuleKind.UNIFORM, 2, sq)
    np.testing.assert_allclose(sorted(map(tuple, r.points)),
                               [(0.25, 0.25), (0.25, 0.75), (0.75, 0.25), (0.75, 0.75)])
    cube = BoxCell(3, (0.5, 0.25, 0.0), 0.125)
    assert box_rule("gauss", 3, cube).weights.sum() == pytest.approx(0.125 ** 3, rel=1e-14)
    with pytest.raises(InvalidArgumentError):
        box_rule(BoxRuleKind.UNIFORM, 0, cube)


def test_triangle_catalog_shape():
    assert [c[0] for c in TRIANGLE_CATALOG] == [1, 2, 4, 5, 6]
    assert [len(c[2]) for c in TRIANGLE_CATALOG] == [1, 3, 6, 7, 12]


def test_tetrahedron_catalog_shape():
    degrees = [c[0] for c in TETRAHEDRON_CATALOG]
    sizes = [len(c[2]) for c in TETRAHEDRON_CATALOG]
    assert degrees[0] == 1 and degrees[-1] == 7
    assert sizes[0] == 1 and sizes[-1] == 31
    assert all(a < b for a, b in zip(sizes, sizes[1:]))
    assert all(a < b for a, b in zip(degrees, degrees[1:]))


@pytest.mark.parametrize("catalog,n", [(TRIANGLE_CATALOG, 3), (TETRAHEDRON_CATALOG, 4)])
def test_catalog_points_interior_weights_normalized(catalog, n):
    for deg, bary, w in catalog:
        assert bary.shape == (len(w), n)
        np.testing.assert_allclose(bary.sum(axis=1), 1.0, atol=1e-14)
        assert w.sum() == pytest.approx(1.0, rel=1e-13)
        if n == 4 and deg == 7:
            # Keast's 31-point rule: one negative orbit weight, six edge-midpoint points
            assert (bary >= 0).all() and (w < 0).sum() == 4
            assert ((bary == 0).sum(axis=1) == 2).sum() == 6
        else:
            assert (bary > 0).all() and (w > 0).all()


@pytest.mark.parametrize("kind,cell", [(CellKind.TRIANGLE, TRI), (CellKind.TETRAHEDRON, TET),
                                       (CellKind.PYRAMID, PYR)])
def test_simplex_rule_exactness(kind, cell):
    d = cell.vertices.shape[1]
    for i in range(max_index(kind) + 1):
        r = simplex_rule(kind, i, cell)
        assert r.weights.sum() == pytest.approx(cell.volume, rel=1e-12)
        deg = rule_degree(kind, i)
        for e in _monomials(d, deg):
            f = lambda x: np.prod(x ** np.array(e), axis=-1)
            if kind is CellKind.PYRAMID:
                v = cell.vertices
                exact = (_exact_simplex_monomial(v[[0, 1, 2, 4]], e)
                         + _exact_simplex_monomial(v[[0, 2, 3, 4]], e))
            else:
                exact = _exact_simplex_monomial(cell.vertices, e)
            assert r.integrate(f) == pytest.approx(exact, rel=1e-11, abs=1e-15), (i, e)


def test_nestedness_of_sequences():
    # every entry integrates the monomials of the previous entry's degree exactly
    for kind, cell in ((CellKind.TRIANGLE, TRI), (CellKind.TETRAHEDRON, TET), (CellKind.PYRAMID, PYR)):
        d = cell.vertices.shape[1]
        for i in range(max_index(kind)):
            lo, hi = simplex_rule(kind, i, cell), simplex_rule(kind, i + 1, cell)
            assert rule_degree(kind, i + 1) > rule_degree(kind, i)
            for e in _monomials(d, rule_degree(kind, i)):
                f = lambda x: np.prod(x ** np.array(e), axis=-1)
                assert lo.integrate(f) == pytest.approx(hi.integrate(f), rel=1e-11, abs=1e-15)


def test_triangle_centroid_rule():
    r = simplex_rule(CellKind.TRIANGLE, 0, TRI)
    np.testing.assert_allclose(r.points[0], TRI.vertices.mean(axis=0))
    assert r.weights[0] == pytest.approx(TRI.volume)


def test_depletion():
    with pytest.raises(SequenceDepletedError):
        simplex_rule(CellKind.TRIANGLE, 5, TRI)
    with pytest.raises(SequenceDepletedError):
        rule_size(CellKind.BOX, BOX_MAX_INDEX + 1)
    with pytest.raises(InvalidArgumentError):
        rule_size(CellKind.BOX, -1)


def test_index_for_degree():
    assert [index_for_degree(CellKind.BOX, q) for q in range(6)] == [0, 0, 1, 1, 2, 2]
    assert [index_for_degree(CellKind.TRIANGLE, q) for q in (0, 1, 2, 3, 4, 5, 6, 9)] == \
        [0, 0, 1, 2, 2, 3, 4, 4]
    for q in range(8):
        i = index_for_degree(CellKind.TETRAHEDRON, q)
        assert rule_degree(CellKind.TETRAHEDRON, i) >= min(q, 7)


def test_assemble_counts_circle(circle3):
    m = len(circle3)
    assert assemble_scheme(circle3, np.zeros(m, dtype=int)).total == 43
    assert assemble_scheme(circle3, np.ones(m, dtype=int)).total == 144
    assert scheme_size(circle3, uniform_degree_indices(circle3, 4)) == 303


def test_assemble_weights_and_slices(sphere2):
    idx = np.arange(len(sphere2)) % 3
    s = assemble_scheme(sphere2, idx)
    for c, sc in enumerate(sphere2.subcells):
        sl = s.per_cell(c)
        assert s.weights[sl].sum() == pytest.approx(sc.volume, rel=1e-12)
        assert (s.weights[sl] > 0).all()
    assert s.total == scheme_size(sphere2, idx)
    assert (s.cell_ids == np.repeat(np.arange(len(sphere2)), np.diff(s.offsets))).all()


def test_assemble_rejects_missing_entries(circle3):
    with pytest.raises(InvalidArgumentError):
        assemble_scheme(circle3, np.zeros(3, dtype=int))
    with pytest.raises(InvalidArgumentError):
        assemble_scheme(circle3, {0: 0})


def test_reference_scheme_constant_and_monomial(circle3):
    from cutquad.octree import partition_volume
    s = reference_scheme(circle3, 8)
    assert s.weights.sum() == pytest.approx(partition_volume(circle3), rel=1e-13)
    from cutquad.geometry import make_constant
    from cutquad.octree import partition_element
    p = partition_element(make_constant(1.0, 2), BoxCell(0, (0.0, 0.0), 1.0), 2)
    r = reference_scheme(p, 8)
    assert r.integrate(lambda x: x[:, 0] ** 4 * x[:, 1] ** 4) == pytest.approx(1 / 25, rel=1e-14)


def test_reference_scheme_on_one_triangle_vs_subdivision(rng):
    from cutquad.octree import Partition
    f = random_polynomial(rng, 2, 8)
    p = Partition(BoxCell(0, (0.0, 0.0), 1.0), 1, {}, [], [TRI], np.zeros((0, 2, 2)), [0])
    assert reference_scheme(p, 8).integrate(f) == pytest.approx(
        subdivision_integral(p, f), rel=1e-8)


def test_reference_scheme_3d_vs_grundmann_moeller(sphere2, rng):
    for _ in range(3):
        f = random_polynomial(rng, 3, 10)
        assert reference_scheme(sphere2, 10).integrate(f) == pytest.approx(
            gm_integral(sphere2, f, 10), rel=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 14))
def test_reference_rule_degree_property(T):
    from oracles import _simplex_integral
    from cutquad.quadrature import reference_rule
    from cutquad.octree import SubCell
    for cell in (TRI, TET, PYR):
        r = reference_rule(SubCell(0, 4, cell.kind, cell), T)
        d = cell.vertices.shape[1]
        e = np.zeros(d, dtype=int)
        e[0], e[-1] = T // 2, T - T // 2
        f = lambda x: np.prod(x ** e, axis=-1)
        s = max(0, math.ceil((T - 1) / 2))
        parts = [cell.vertices[[0, 1, 2, 4]], cell.vertices[[0, 2, 3, 4]]] \
            if cell.kind is CellKind.PYRAMID else [cell.vertices]
        exact = sum(_simplex_integral(P, f, s) for P in parts)
        assert r.integrate(f) == pytest.approx(exact, rel=1e-10, abs=1e-16)


def test_scheme_csv(circle3):
    s = assemble_scheme(circle3, np.zeros(len(circle3), dtype=int))
    text = scheme_to_csv(circle3, s)
    lines = text.splitlines()
    assert lines[0] == "# cutcell-quad v1 quadrature scheme"
    assert lines[1] == "cell_id,level,kind,x1,x2,weight"
    assert len(lines) == 2 + 43
