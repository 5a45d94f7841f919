"""Operator-independent worst-case integration error of a cut-element scheme.

For the tensor space of per-direction degree ``k`` with basis ``phi`` the
error of a scheme is

    e = sup_v |int v - Q(v)| / ||v||  =  sqrt(d^T G^{-1} d),  d = xi - xi_bar,

where ``xi``/``xi_bar`` are the exact and approximate basis integrals and
``G`` the Gramian of the chosen norm. The maximizer ``v = G^{-1} d / e`` is
the worst polynomial.

The internal basis is the tensor product of shifted Legendre polynomials,
orthonormal on the untrimmed element. Products of two such polynomials are
again expanded in the same 1D basis, so the Gramian follows from the
per-direction Legendre moments of the domain up to degree ``2k``. Those are
integrated once with the reference scheme.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import legendre as L
from scipy.linalg import cho_solve
from scipy.linalg.lapack import dpotrf

from .errors import ConditioningError, InvalidArgumentError
from .octree import Partition
from .quadrature import (QuadratureScheme, _gauss_1d, max_index, reference_rule,
                         rule_size)


class Norm(enum.Enum):
    L2 = "L2"
    H1 = "H1"


DEFAULT_K = {2: 8, 3: 5}


# ---------------------------------------------------------------- 1D basis

def legendre_1d(t, degree):
    """Orthonormal shifted Legendre values on [0, 1], shape ``(len(t), degree+1)``."""
    t = np.asarray(t, dtype=float)
    scale = np.sqrt(2 * np.arange(degree + 1) + 1.0)
    return L.legvander(2 * t - 1, degree) * scale


def legendre_1d_deriv(t, degree):
    """Derivatives ``d/dt`` of :func:`legendre_1d`."""
    t = np.asarray(t, dtype=float)
    scale = np.sqrt(2 * np.arange(degree + 1) + 1.0)
    if degree == 0:
        return np.zeros(t.shape + (1,))
    coef = L.legder(np.eye(degree + 1), axis=0)  # column j: coefficients of P_j'
    return 2.0 * (L.legvander(2 * t - 1, degree - 1) @ coef) * scale


def _monomial_change(k):
    """Matrix ``C`` with ``t^j = sum_a C[j, a] p_a(t)`` on [0, 1]."""
    x, w = _gauss_1d(k + 1)
    P = legendre_1d(x, k)
    T = x[:, None] ** np.arange(k + 1)
    return (T * w[:, None]).T @ P


@dataclass(frozen=True)
class PolynomialSpace:
    """Tensor space of per-direction degree ``k`` in ``d`` dimensions.

    ``basis`` selects the representation: orthonormal shifted Legendre
    (default) or raw monomials in element coordinates ``t = (x - x0)/h``.
    Both span the same space.
    """

    d: int
    k: int
    norm: Norm = Norm.H1
    basis: str = "legendre"

    def __post_init__(self):
        if self.d not in (2, 3):
            raise InvalidArgumentError(f"dimension must be 2 or 3, got {self.d}")
        if self.k < 0:
            raise InvalidArgumentError(f"negative degree {self.k}")
        if self.basis not in ("legendre", "monomial"):
            raise InvalidArgumentError(f"unknown basis {self.basis!r}")
        object.__setattr__(self, "norm", Norm(self.norm))

    @property
    def n_p(self) -> int:
        return (self.k + 1) ** self.d

    @property
    def exponents(self) -> np.ndarray:
        """Per-direction degrees of every basis function (first direction slowest)."""
        return np.array(list(itertools.product(range(self.k + 1), repeat=self.d)))

    def change_matrix(self) -> np.ndarray:
        """``K`` with ``phi_basis = K @ phi_legendre``."""
        if self.basis == "legendre":
            return np.eye(self.n_p)
        C = _monomial_change(self.k)
        K = C
        for _ in range(self.d - 1):
            K = np.kron(K, C)
        return K

    def evaluate(self, points, element) -> np.ndarray:
        """Basis values at physical ``points`` of ``element``, shape ``(n, n_p)``."""
        t = _local(points, element)
        V = _tensor_rows([legendre_1d(t[:, j], self.k) for j in range(self.d)])
        return V if self.basis == "legendre" else V @ self.change_matrix().T

    def gradient(self, points, element) -> np.ndarray:
        """Physical gradients, shape ``(n, n_p, d)``."""
        t = _local(points, element)
        vals = [legendre_1d(t[:, j], self.k) for j in range(self.d)]
        ders = [legendre_1d_deriv(t[:, j], self.k) / element.size for j in range(self.d)]
        out = []
        for i in range(self.d):
            out.append(_tensor_rows([ders[j] if j == i else vals[j] for j in range(self.d)]))
        G = np.stack(out, axis=-1)
        if self.basis == "monomial":
            G = np.einsum("nad,ba->nbd", G, self.change_matrix())
        return G

    def evaluate_poly(self, coeffs, points, element) -> np.ndarray:
        return self.evaluate(points, element) @ np.asarray(coeffs)


def _local(points, element):
    return (np.asarray(points, dtype=float) - np.asarray(element.origin)) / element.size


def _tensor_rows(factors):
    """Row-wise Kronecker product of ``(n, m_j)`` arrays."""
    out = factors[0]
    for f in factors[1:]:
        out = (out[:, :, None] * f[:, None, :]).reshape(len(out), -1)
    return out


# ---------------------------------------------------------------- exact data

@dataclass(frozen=True, eq=False)
class ExactData:
    """Oracle integrals of one partition: per-cell basis moments and the Gramian."""

    space: PolynomialSpace
    cell_moments: np.ndarray  # (m, n_p), in the space's basis
    gramian: np.ndarray  # (n_p, n_p)
    target_degree: int

    @property
    def xi(self) -> np.ndarray:
        return self.cell_moments.sum(axis=0)


def _linearization(k):
    """``A[a, b, g] = int p_a p_b p_g`` and ``B[a, b, g] = int p_a' p_b' p_g`` on [0, 1]."""
    x, w = _gauss_1d(2 * k + 1)
    P = legendre_1d(x, 2 * k)
    Pk = P[:, :k + 1]
    D = legendre_1d_deriv(x, k)
    A = np.einsum("n,na,nb,ng->abg", w, Pk, Pk, P)
    B = np.einsum("n,na,nb,ng->abg", w, D, D, P)
    return A, B


def _iter_reference(p: Partition, target_degree: int, chunk: int = 200_000):
    """Yield ``(cell_ids, points, weights)`` batches of the reference scheme."""
    ids, pts, wts, n = [], [], [], 0
    for s in p.subcells:
        r = reference_rule(s, target_degree)
        ids.append(np.full(len(r), s.id))
        pts.append(r.points)
        wts.append(r.weights)
        n += len(r)
        if n >= chunk:
            yield np.concatenate(ids), np.vstack(pts), np.concatenate(wts)
            ids, pts, wts, n = [], [], [], 0
    if ids:
        yield np.concatenate(ids), np.vstack(pts), np.concatenate(wts)


def exact_data(p: Partition, space: PolynomialSpace, target_degree: int | None = None) -> ExactData:
    """Integrate the basis per sub-cell and build the Gramian with the oracle.

    ``target_degree`` defaults to ``2 d k`` (all Gramian entries are exact).
    """
    if p.dim != space.d:
        raise InvalidArgumentError("space and partition dimensions differ")
    if not p.subcells:
        raise InvalidArgumentError("empty partition")
    k, d = space.k, space.d
    T = 2 * d * k if target_degree is None else int(target_degree)
    if T < 2 * d * k:
        raise InvalidArgumentError(f"oracle degree {T} below 2*d*k = {2 * d * k}")
    elem = p.element
    m = len(p.subcells)
    cell_mom = np.zeros((m, (k + 1) ** d))
    dom_mom = np.zeros((2 * k + 1,) * d)
    for ids, pts, wts in _iter_reference(p, T):
        t = _local(pts, elem)
        V = [legendre_1d(t[:, j], 2 * k) for j in range(d)]
        # per-cell moments of the degree-k basis
        phi = _tensor_rows([v[:, :k + 1] for v in V])
        starts = np.flatnonzero(np.r_[True, ids[1:] != ids[:-1]])
        cell_mom[ids[starts]] += np.add.reduceat(phi * wts[:, None], starts, axis=0)
        # domain moments up to degree 2k per direction
        W = V[0] * wts[:, None]
        rest = _tensor_rows(V[1:])
        dom_mom += (W.T @ rest).reshape(dom_mom.shape)
    G = _gramian_from_moments(dom_mom, k, d, space.norm, elem.size)
    K = space.change_matrix()
    return ExactData(space, cell_mom @ K.T, K @ G @ K.T, T)


def _gramian_from_moments(M, k, d, norm, h):
    A, B = _linearization(k)
    n = (k + 1) ** d

    def contract(factors):
        if d == 2:
            return np.einsum("ipx,jqy,xy->ijpq", *factors, M, optimize=True).reshape(n, n)
        return np.einsum("ipx,jqy,krz,xyz->ijkpqr", *factors, M, optimize=True).reshape(n, n)

    G = contract([A] * d)
    if norm is Norm.H1:
        for i in range(d):
            G = G + contract([B if j == i else A for j in range(d)]) / h ** 2
    return 0.5 * (G + G.T)


def exact_moments(p: Partition, space: PolynomialSpace, target_degree: int | None = None):
    """``xi_i = int_K phi_i``; per-cell values are in :func:`exact_data`."""
    return exact_data(p, space, target_degree).xi


def gramian(p: Partition, space: PolynomialSpace, target_degree: int | None = None):
    return exact_data(p, space, target_degree).gramian


# ---------------------------------------------------------------- approximate moments

def scheme_cell_moments(p: Partition, space: PolynomialSpace, scheme: QuadratureScheme):
    """Per-cell basis integrals ``(m, n_p)`` under ``scheme``."""
    phi = space.evaluate(scheme.points, p.element) * scheme.weights[:, None]
    out = np.zeros((len(scheme.offsets) - 1, space.n_p))
    counts = np.diff(scheme.offsets)
    nz = counts > 0
    if phi.size:
        out[nz] = np.add.reduceat(phi, scheme.offsets[:-1][nz], axis=0)
    return out


def approximate_moments(p: Partition, space: PolynomialSpace, scheme: QuadratureScheme):
    return scheme_cell_moments(p, space, scheme).sum(axis=0)


# ---------------------------------------------------------------- worst case

@dataclass(frozen=True, eq=False)
class GramianFactor:
    """Upper Cholesky factor of an SPD Gramian."""

    matrix: np.ndarray
    factor: np.ndarray

    def solve(self, b):
        return cho_solve((self.factor, False), b)


def factorize(G) -> GramianFactor:
    """Cholesky factorization; a non-positive pivot raises :class:`ConditioningError`."""
    if isinstance(G, GramianFactor):
        return G
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise InvalidArgumentError(f"Gramian must be square, got shape {G.shape}")
    c, info = dpotrf(G, lower=False, clean=True)
    if info > 0:
        raise ConditioningError(f"Gramian not positive definite at pivot {info - 1}", pivot=info - 1)
    if info < 0:
        raise InvalidArgumentError("invalid Gramian passed to the factorization")
    return GramianFactor(G, c)


def worst_case_error(xi, xi_bar, G):
    """Return ``(e, coeffs)``; ``coeffs`` is ``None`` when ``e`` vanishes.

    ``e = sqrt(d^T G^{-1} d)`` and ``coeffs = G^{-1} d / e`` with ``d = xi - xi_bar``.
    """
    xi = np.asarray(xi, dtype=float)
    d = xi - np.asarray(xi_bar, dtype=float)
    F = factorize(G)
    y = F.solve(d)
    e = float(np.sqrt(max(float(d @ y), 0.0)))
    if e <= 1e-14 * max(np.linalg.norm(xi), 1e-300):
        return e, None
    return e, y / e


def localized_errors(cell_moments, approx_cell_moments, worst_coeffs) -> np.ndarray:
    """``e_c = |(xi_c - xi_bar_c) . v|`` for every sub-cell ``c``."""
    if worst_coeffs is None:
        return np.zeros(len(cell_moments))
    return np.abs((np.asarray(cell_moments) - np.asarray(approx_cell_moments)) @ worst_coeffs)


def point_increments(p: Partition, idx) -> tuple[np.ndarray, np.ndarray]:
    """Point cost of advancing every sub-cell by one index, and the depleted mask."""
    cost = np.zeros(len(p.subcells))
    depleted = np.zeros(len(p.subcells), dtype=bool)
    for s, i in zip(p.subcells, np.asarray(idx, dtype=int)):
        if i >= max_index(s.kind):
            depleted[s.id] = True
        else:
            cost[s.id] = rule_size(s.kind, i + 1, p.dim) - rule_size(s.kind, i, p.dim)
    return cost, depleted


def indicators(p: Partition, per_cell_error, idx):
    """``R_c = e_c / (#Q_c^{i+1} - #Q_c^i)``; depleted cells get 0 and a flag."""
    cost, depleted = point_increments(p, idx)
    R = np.zeros(len(cost))
    live = ~depleted
    R[live] = np.asarray(per_cell_error, dtype=float)[live] / cost[live]
    return R, depleted


# ---------------------------------------------------------------- report

@dataclass(frozen=True, eq=False)
class ErrorReport:
    xi: np.ndarray
    xi_bar: np.ndarray
    gramian: np.ndarray
    e_total: float
    worst_coeffs: np.ndarray | None
    per_cell_error: np.ndarray
    levels: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))
    norm: Norm = Norm.H1
    k: int = 0

    def to_dict(self) -> dict:
        return {
            "e_total": self.e_total,
            "norm": Norm(self.norm).value,
            "k": self.k,
            "basis": "tensor shifted Legendre, orthonormal on the element",
            "per_cell": [{"id": i, "level": int(l), "e": float(e)}
                         for i, (l, e) in enumerate(zip(self.levels, self.per_cell_error))],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def evaluate_scheme(p: Partition, space: PolynomialSpace, scheme: QuadratureScheme,
                    exact: ExactData | None = None) -> ErrorReport:
    """Full error evaluation of one scheme on one partition."""
    exact = exact_data(p, space) if exact is None else exact
    approx = scheme_cell_moments(p, space, scheme)
    xi_bar = approx.sum(axis=0)
    e, v = worst_case_error(exact.xi, xi_bar, exact.gramian)
    per_cell = localized_errors(exact.cell_moments, approx, v)
    return ErrorReport(exact.xi, xi_bar, exact.gramian, e, v, per_cell,
                       p.subcell_levels, space.norm, space.k)


def worst_polynomial_norm(p: Partition, space: PolynomialSpace, coeffs, target_degree=None) -> float:
    """``||v||`` in the space's norm, re-integrated point-wise with the oracle."""
    T = 2 * space.d * space.k if target_degree is None else target_degree
    total = 0.0
    for _, pts, wts in _iter_reference(p, T):
        val = space.evaluate(pts, p.element) @ coeffs
        total += float(wts @ val ** 2)
        if space.norm is Norm.H1:
            grad = np.einsum("nad,a->nd", space.gradient(pts, p.element), coeffs)
            total += float(wts @ (grad ** 2).sum(axis=1))
    return float(np.sqrt(total))


__all__ = [
    "Norm", "PolynomialSpace", "ExactData", "ErrorReport", "GramianFactor", "DEFAULT_K",
    "exact_data", "exact_moments", "gramian", "scheme_cell_moments", "approximate_moments",
    "factorize", "worst_case_error", "localized_errors", "indicators", "point_increments",
    "evaluate_scheme", "worst_polynomial_norm", "legendre_1d", "legendre_1d_deriv",
]
