import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from cutquad.error_estimator import (Norm, PolynomialSpace, evaluate_scheme, exact_data,
                                     factorize, indicators, legendre_1d, legendre_1d_deriv,
                                     localized_errors, scheme_cell_moments, worst_case_error,
                                     worst_polynomial_norm)
from cutquad.errors import ConditioningError, InvalidArgumentError
from cutquad.geometry import BoxCell, make_constant
from cutquad.octree import partition_element
from cutquad.quadrature import assemble_scheme, reference_scheme
from cutquad.tessellation import CellKind

from conftest import UNIT2, UNIT3, circle


def untrimmed(d, depth=1):
    elem = UNIT2 if d == 2 else UNIT3
    return partition_element(make_constant(1.0, d), elem, depth)


def random_spd(rng, n):
    A = rng.normal(size=(n, n))
    return A @ A.T + n * np.eye(n) * rng.uniform(0.01, 1.0)


def test_legendre_orthonormal():
    from cutquad.quadrature import gauss_1d
    x, w = gauss_1d(12)
    P = legendre_1d(x, 8)
    np.testing.assert_allclose(P.T @ (w[:, None] * P), np.eye(9), atol=1e-13)
    h = 1e-6
    D = legendre_1d_deriv(x, 8)
    fd = (legendre_1d(x + h, 8) - legendre_1d(x - h, 8)) / (2 * h)
    np.testing.assert_allclose(D, fd, rtol=1e-6, atol=1e-5)


def test_untrimmed_monomial_moments_and_gramian():
    p = untrimmed(2)
    space = PolynomialSpace(2, 1, Norm.L2, basis="monomial")
    ex = exact_data(p, space)
    np.testing.assert_allclose(ex.xi, [1, 0.5, 0.5, 0.25], rtol=1e-13)
    M = np.array([[1, 0.5], [0.5, 1 / 3]])
    np.testing.assert_allclose(ex.gramian, np.kron(M, M), rtol=1e-13, atol=1e-15)
    K = np.array([[0.0, 0.0], [0.0, 1.0]])
    h1 = exact_data(p, PolynomialSpace(2, 1, Norm.H1, basis="monomial")).gramian
    np.testing.assert_allclose(h1, np.kron(M, M) + np.kron(K, M) + np.kron(M, K),
                               rtol=1e-13, atol=1e-15)
    # G_11 stays 1; the x-only entry picks up int (dx/dx)^2 = 1
    assert h1[0, 0] == pytest.approx(1.0)
    assert h1[2, 2] == pytest.approx(1 / 3 + 1)


@pytest.mark.parametrize("norm", [Norm.L2, Norm.H1])
def test_gramian_matches_dense_quadrature(circle3, norm):
    space = PolynomialSpace(2, 3, norm)
    ex = exact_data(circle3, space)
    s = reference_scheme(circle3, 12)
    P = space.evaluate(s.points, circle3.element)
    G = P.T @ (s.weights[:, None] * P)
    if norm is Norm.H1:
        D = space.gradient(s.points, circle3.element)
        G += np.einsum("n,nad,nbd->ab", s.weights, D, D)
    np.testing.assert_allclose(ex.gramian, G, rtol=1e-11, atol=1e-13)
    np.testing.assert_allclose(ex.gramian, ex.gramian.T, atol=1e-14)
    np.testing.assert_allclose(ex.xi, P.T @ s.weights, rtol=1e-12, atol=1e-14)


def test_gramian_3d_matches_dense(sphere2):
    space = PolynomialSpace(3, 2, Norm.H1)
    ex = exact_data(sphere2, space)
    s = reference_scheme(sphere2, 12)
    P = space.evaluate(s.points, sphere2.element)
    D = space.gradient(s.points, sphere2.element)
    G = P.T @ (s.weights[:, None] * P) + np.einsum("n,nad,nbd->ab", s.weights, D, D)
    np.testing.assert_allclose(ex.gramian, G, rtol=1e-11, atol=1e-13)


def test_cell_moments_sum_to_xi(circle3_exact):
    space, ex = circle3_exact
    assert ex.cell_moments.shape == (43, 81)
    from cutquad.octree import partition_volume
    from conftest import circle
    # the constant basis function is 1 on the element
    assert ex.xi[0] == pytest.approx(partition_volume(circle(3)), rel=1e-13)


def test_exact_data_rejects_low_oracle(circle3):
    with pytest.raises(InvalidArgumentError):
        exact_data(circle3, PolynomialSpace(2, 4), target_degree=8)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 16), st.integers(0, 2 ** 31 - 1))
def test_closed_form_equals_generalized_eigenvalue(n, seed):
    rng = np.random.default_rng(seed)
    G = random_spd(rng, n)
    d = rng.normal(size=n)
    e, v = worst_case_error(d, np.zeros(n), G)
    lam, vecs = scipy.linalg.eigh(np.outer(d, d), G)
    assert e == pytest.approx(np.sqrt(lam[-1]), rel=1e-10)
    w = vecs[:, -1] / np.sqrt(vecs[:, -1] @ G @ vecs[:, -1])
    assert min(np.abs(v - w).max(), np.abs(v + w).max()) < 1e-10 * max(1, np.abs(w).max())


def test_zero_error_and_undefined_worst():
    G = np.eye(3)
    e, v = worst_case_error([1.0, 2.0, 3.0], [1.0, 2.0, 3.0], G)
    assert e == 0.0 and v is None


def test_conditioning_error_carries_pivot():
    G = np.diag([1.0, 2.0, -1.0, 4.0])
    with pytest.raises(ConditioningError) as info:
        factorize(G)
    assert info.value.pivot == 2
    assert info.value.to_dict()["pivot"] == 2


def test_worst_polynomial_reproduces_error(circle3):
    space = PolynomialSpace(2, 4, Norm.H1)
    ex = exact_data(circle3, space)
    scheme = assemble_scheme(circle3, np.zeros(len(circle3), dtype=int))
    rep = evaluate_scheme(circle3, space, scheme, ex)
    v = rep.worst_coeffs
    assert worst_polynomial_norm(circle3, space, v) == pytest.approx(1.0, rel=1e-8)
    ref = reference_scheme(circle3, 16)
    exact_int = ref.weights @ space.evaluate_poly(v, ref.points, circle3.element)
    approx_int = scheme.weights @ space.evaluate_poly(v, scheme.points, circle3.element)
    assert abs(exact_int - approx_int) == pytest.approx(rep.e_total, rel=1e-8)
    assert rep.e_total <= rep.per_cell_error.sum() + 1e-10


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_basis_independence(circle3, k):
    idx = np.arange(len(circle3)) % 2
    scheme = assemble_scheme(circle3, idx)
    out = []
    for basis in ("legendre", "monomial"):
        space = PolynomialSpace(2, k, Norm.H1, basis=basis)
        out.append(evaluate_scheme(circle3, space, scheme).e_total)
    assert out[0] == pytest.approx(out[1], rel=1e-8)


def test_enlarging_k_never_decreases_error(circle3):
    scheme = assemble_scheme(circle3, np.zeros(len(circle3), dtype=int))
    errs = [evaluate_scheme(circle3, PolynomialSpace(2, k), scheme).e_total for k in range(0, 7)]
    assert all(b >= a * (1 - 1e-12) for a, b in zip(errs, errs[1:]))


@pytest.mark.parametrize("d,k", [(2, 3), (2, 6), (3, 2)])
def test_exact_scheme_zero_on_untrimmed_element(d, k):
    p = untrimmed(d, depth=1)
    # level-0 single box: Gauss with k+1 points per direction
    assert len(p) == 1
    space = PolynomialSpace(d, k)
    scheme = assemble_scheme(p, np.array([k]))
    assert evaluate_scheme(p, space, scheme).e_total <= 1e-13


def test_high_order_subcell_has_zero_local_error(circle3):
    space = PolynomialSpace(2, 3)
    idx = np.zeros(len(circle3), dtype=int)
    idx[0] = 3  # level-1 box with 4 points per direction: exact for degree 7 >= d k = 6
    rep = evaluate_scheme(circle3, space, assemble_scheme(circle3, idx))
    assert rep.per_cell_error[0] <= 1e-12


def test_gramian_scaling_invariance(circle3):
    space = PolynomialSpace(2, 4)
    ex = exact_data(circle3, space)
    scheme = assemble_scheme(circle3, np.zeros(len(circle3), dtype=int))
    approx = scheme_cell_moments(circle3, space, scheme)
    idx = np.zeros(len(circle3), dtype=int)
    e1, v1 = worst_case_error(ex.xi, approx.sum(0), ex.gramian)
    e2, v2 = worst_case_error(ex.xi, approx.sum(0), 9.0 * ex.gramian)
    assert e2 == pytest.approx(e1 / 3, rel=1e-12)
    R1, _ = indicators(circle3, localized_errors(ex.cell_moments, approx, v1), idx)
    R2, _ = indicators(circle3, localized_errors(ex.cell_moments, approx, v2), idx)
    assert np.argmax(R1) == np.argmax(R2)


def test_indicator_denominators(circle3):
    e = np.ones(len(circle3))
    idx = np.zeros(len(circle3), dtype=int)
    R, dep = indicators(circle3, e, idx)
    boxes = [s.id for s in circle3.subcells if s.kind is CellKind.BOX]
    tris = [s.id for s in circle3.subcells if s.kind is CellKind.TRIANGLE]
    np.testing.assert_allclose(R[boxes], 1 / 3)  # 2^2 - 1
    np.testing.assert_allclose(R[tris], 1 / 2)  # 3 - 1
    idx[tris[0]] = 4  # top triangle entry
    R2, dep2 = indicators(circle3, 2 * e, idx)
    assert dep2[tris[0]] and R2[tris[0]] == 0.0
    np.testing.assert_allclose(R2[boxes], 2 * R[boxes])


def test_largest_local_error_on_level1_cell(circle3_exact, circle3):
    space, ex = circle3_exact
    scheme = assemble_scheme(circle3, np.zeros(len(circle3), dtype=int))
    rep = evaluate_scheme(circle3, space, scheme, ex)
    top = int(np.argmax(rep.per_cell_error))
    assert circle3.subcells[top].level == 1


def test_report_json(circle3_exact, circle3):
    import json
    space, ex = circle3_exact
    scheme = assemble_scheme(circle3, np.ones(len(circle3), dtype=int))
    d = json.loads(evaluate_scheme(circle3, space, scheme, ex).to_json())
    assert d["norm"] == "H1" and d["k"] == 8 and len(d["per_cell"]) == 43
    assert set(d["per_cell"][0]) == {"id", "level", "e"}
