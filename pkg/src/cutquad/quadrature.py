"""Quadrature rules on sub-cells, nested rule sequences and scheme assembly.

Every integrable cell kind carries a sequence of rules indexed by the
quadrature index ``i = 0, 1, 2, ...`` of increasing polynomial exactness:

=========== ============================= ==================================
kind        rule ``i``                    exactness degree
=========== ============================= ==================================
box         Gauss, ``i+1`` points per dir ``2i+1``
triangle    symmetric catalog entry ``i`` 1, 2, 4, 5, 6   (1/3/6/7/12 points)
tetrahedron symmetric catalog entry ``i`` 1, 2, 3, 5, 6, 7 (1/4/8/14/24/31 pts)
pyramid     conical product, ``i+1``/dir  ``2i+1`` (as many as tetrahedra)
=========== ============================= ==================================

The triangle catalog has no separate degree-3 entry: the smallest
positive-weight degree-3 rule already has 6 points, the same as the degree-4
rule, and equal sizes would give a zero cost increment in the refinement
indicator. The tetrahedron catalog skips degree 4 for the same reason (14
points, like degree 5). Its top entry is Keast's 31-point degree-7 rule, which
has one negative orbit weight and points on the edge midpoints; all other
entries have positive weights and interior points.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_jacobi

from . import _simplex_tables
from .errors import InvalidArgumentError, SequenceDepletedError
from .geometry import BoxCell
from .octree import Partition
from .tessellation import CellKind, SimplexCell


class BoxRuleKind(enum.Enum):
    GAUSS = "gauss"
    UNIFORM = "uniform"


#: highest box index (``BOX_MAX_INDEX + 1`` Gauss points per direction)
BOX_MAX_INDEX = 24


@dataclass(frozen=True, eq=False)
class Rule:
    points: np.ndarray  # (n, d)
    weights: np.ndarray  # (n,)
    degree: int = -1  # polynomial exactness, -1 when not applicable

    def __len__(self):
        return len(self.weights)

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.points)))


# ---------------------------------------------------------------- 1D rules

@lru_cache(maxsize=None)
def _gauss_1d(n):
    x, w = leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def gauss_1d(n: int):
    """``n``-point Gauss-Legendre rule on [0, 1]; exact up to degree ``2n-1``."""
    if n < 1:
        raise InvalidArgumentError(f"number of points must be >= 1, got {n}")
    x, w = _gauss_1d(int(n))
    return x.copy(), w.copy()


def uniform_1d(n: int):
    """Composite midpoint rule with ``n`` equal cells on [0, 1]."""
    if n < 1:
        raise InvalidArgumentError(f"number of points must be >= 1, got {n}")
    return (np.arange(n) + 0.5) / n, np.full(n, 1.0 / n)


@lru_cache(maxsize=None)
def _gauss_jacobi_1d(n):
    # nodes/weights on [0, 1] for the weight (1 - w)^2
    x, w = roots_jacobi(n, 2.0, 0.0)
    return 0.5 * (x + 1.0), w / 8.0


def _tensor(x, w, d):
    grids = np.meshgrid(*([x] * d), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    wg = np.meshgrid(*([w] * d), indexing="ij")
    return pts, np.prod(np.stack([g.ravel() for g in wg], axis=-1), axis=-1)


# ---------------------------------------------------------------- boxes

def box_rule(kind: BoxRuleKind, n_per_dir: int, cell: BoxCell) -> Rule:
    """Tensor Gauss or uniform-midpoint rule with ``n_per_dir`` points per direction."""
    kind = BoxRuleKind(kind)
    if kind is BoxRuleKind.GAUSS:
        x, w = gauss_1d(n_per_dir)
        degree = 2 * n_per_dir - 1
    else:
        x, w = uniform_1d(n_per_dir)
        degree = 1
    ref, wt = _tensor(x, w, cell.dim)
    return Rule(np.asarray(cell.origin) + cell.size * ref, wt * cell.volume, degree)


# ---------------------------------------------------------------- simplex catalogs

def _catalog(entries):
    return tuple((deg, np.array(p, dtype=float), np.array(w, dtype=float)) for deg, p, w in entries)


TRIANGLE_CATALOG = _catalog(_simplex_tables.TRIANGLE)
TETRAHEDRON_CATALOG = _catalog(_simplex_tables.TETRAHEDRON)
# pyramids mirror the tetrahedron index range
PYRAMID_MAX_INDEX = len(TETRAHEDRON_CATALOG) - 1


def max_index(kind: CellKind) -> int:
    kind = CellKind(kind)
    if kind is CellKind.BOX:
        return BOX_MAX_INDEX
    if kind is CellKind.TRIANGLE:
        return len(TRIANGLE_CATALOG) - 1
    if kind is CellKind.TETRAHEDRON:
        return len(TETRAHEDRON_CATALOG) - 1
    return PYRAMID_MAX_INDEX


def rule_degree(kind: CellKind, index: int) -> int:
    kind = CellKind(kind)
    _check_index(kind, index)
    if kind is CellKind.TRIANGLE:
        return TRIANGLE_CATALOG[index][0]
    if kind is CellKind.TETRAHEDRON:
        return TETRAHEDRON_CATALOG[index][0]
    return 2 * index + 1


def rule_size(kind: CellKind, index: int, dim: int = 3) -> int:
    """Number of points of rule ``index`` without building it."""
    kind = CellKind(kind)
    _check_index(kind, index)
    if kind is CellKind.BOX:
        return (index + 1) ** dim
    if kind is CellKind.TRIANGLE:
        return len(TRIANGLE_CATALOG[index][2])
    if kind is CellKind.TETRAHEDRON:
        return len(TETRAHEDRON_CATALOG[index][2])
    return (index + 1) ** 3


def _check_index(kind, index):
    if index < 0:
        raise InvalidArgumentError(f"negative quadrature index {index}")
    if index > max_index(kind):
        raise SequenceDepletedError(f"{kind.value} rule sequence has no index {index}")


def index_for_degree(kind: CellKind, degree: int) -> int:
    """Lowest index whose rule is exact for ``degree`` (clamped at the top entry).

    This is how a uniform Gauss *order* maps onto the per-kind sequences:
    boxes and pyramids need ``ceil((degree+1)/2)`` points per direction.
    """
    kind = CellKind(kind)
    degree = max(int(degree), 0)
    if kind in (CellKind.BOX, CellKind.PYRAMID):
        return min(degree // 2, max_index(kind))
    catalog = TRIANGLE_CATALOG if kind is CellKind.TRIANGLE else TETRAHEDRON_CATALOG
    for i, (deg, _, _) in enumerate(catalog):
        if deg >= degree:
            return i
    return len(catalog) - 1


def simplex_rule(kind: CellKind, index: int, cell: SimplexCell) -> Rule:
    """Catalog rule ``index`` mapped onto a triangle, tetrahedron or pyramid."""
    kind = CellKind(kind)
    _check_index(kind, index)
    v = np.asarray(cell.vertices, dtype=float)
    vol = cell.volume
    if not vol > 0:
        raise InvalidArgumentError("cell has non-positive volume")
    if kind is CellKind.PYRAMID:
        ref, wt = _pyramid_reference(index + 1)
        return Rule(_map_pyramid(ref, v), wt * 3.0 * vol, 2 * index + 1)
    catalog = TRIANGLE_CATALOG if kind is CellKind.TRIANGLE else TETRAHEDRON_CATALOG
    deg, bary, w = catalog[index]
    return Rule(bary @ v, w * vol, deg)


@lru_cache(maxsize=None)
def _pyramid_reference(n):
    """Conical product on the unit cube ``(u, v, w)``; weights include ``(1-w)^2``."""
    x, wx = _gauss_1d(n)
    z, wz = _gauss_jacobi_1d(n)
    u, v, w = (g.ravel() for g in np.meshgrid(x, x, z, indexing="ij"))
    wt = np.einsum("i,j,k->ijk", wx, wx, wz).ravel()
    return np.stack([u, v, w], axis=-1), wt


def _map_pyramid(ref, v):
    # x = (1-w) (b0 + u e1 + v e2) + w apex, with base vertices (b0, b1, b2, b3)
    b0, e1, e2, apex = v[0], v[1] - v[0], v[3] - v[0], v[4]
    u, s, w = ref[:, :1], ref[:, 1:2], ref[:, 2:3]
    return (1.0 - w) * (b0 + u * e1 + s * e2) + w * apex


def cell_rule(subcell, index: int, box_kind=BoxRuleKind.GAUSS) -> Rule:
    if subcell.kind is CellKind.BOX:
        if index > BOX_MAX_INDEX:
            raise SequenceDepletedError(f"box rule sequence has no index {index}")
        return box_rule(box_kind, index + 1, subcell.cell)
    return simplex_rule(subcell.kind, index, subcell.cell)


# ---------------------------------------------------------------- schemes

@dataclass(frozen=True, eq=False)
class QuadratureScheme:
    """Weighted point set of a whole partition, sliced per sub-cell."""

    points: np.ndarray
    weights: np.ndarray
    offsets: np.ndarray  # per_cell(i) = offsets[i]:offsets[i+1]

    @property
    def total(self) -> int:
        return len(self.weights)

    def per_cell(self, cell_id: int) -> slice:
        return slice(int(self.offsets[cell_id]), int(self.offsets[cell_id + 1]))

    @property
    def cell_ids(self) -> np.ndarray:
        return np.repeat(np.arange(len(self.offsets) - 1), np.diff(self.offsets))

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.points)))


def _concat(rules, dim):
    counts = [len(r) for r in rules]
    offsets = np.concatenate([[0], np.cumsum(counts)]).astype(int)
    if rules:
        pts = np.vstack([r.points for r in rules])
        wts = np.concatenate([r.weights for r in rules])
    else:
        pts, wts = np.zeros((0, dim)), np.zeros(0)
    return QuadratureScheme(pts, wts, offsets)


def _as_indices(p: Partition, idx) -> np.ndarray:
    m = len(p.subcells)
    if isinstance(idx, dict):
        missing = [i for i in range(m) if i not in idx]
        if missing:
            raise InvalidArgumentError(f"no quadrature index for sub-cells {missing[:5]}")
        idx = [idx[i] for i in range(m)]
    idx = np.asarray(idx, dtype=int)
    if idx.shape != (m,):
        raise InvalidArgumentError(f"index list has length {idx.size}, partition has {m} sub-cells")
    return idx


def scheme_size(p: Partition, idx) -> int:
    idx = _as_indices(p, idx)
    return int(sum(rule_size(s.kind, int(i), p.dim) for s, i in zip(p.subcells, idx)))


def assemble_scheme(p: Partition, idx, box_kind=BoxRuleKind.GAUSS) -> QuadratureScheme:
    """Concatenate the per-sub-cell rules selected by the index list ``idx``."""
    idx = _as_indices(p, idx)
    rules = [cell_rule(s, int(i), box_kind) for s, i in zip(p.subcells, idx)]
    return _concat(rules, p.dim)


def uniform_degree_indices(p: Partition, degree: int) -> np.ndarray:
    """Index list giving every sub-cell the Gauss order ``degree``."""
    return np.array([index_for_degree(s.kind, degree) for s in p.subcells], dtype=int)


# ---------------------------------------------------------------- reference (oracle) rules

def collapsed_points(d: int, target_degree: int) -> int:
    """Per-direction point count of the collapsed-coordinate rules."""
    return math.ceil((target_degree + d) / 2) + 1


@lru_cache(maxsize=None)
def _duffy_reference(d, n):
    """Collapsed Gauss rule on the unit simplex (cartesian reference coordinates)."""
    x, w = _gauss_1d(n)
    g = np.meshgrid(*([x] * d), indexing="ij")
    wg = np.meshgrid(*([w] * d), indexing="ij")
    u = [a.ravel() for a in g]
    wt = np.prod([a.ravel() for a in wg], axis=0)
    if d == 2:
        pts = np.stack([u[0], u[1] * (1 - u[0])], axis=-1)
        wt = wt * (1 - u[0])
    else:
        pts = np.stack([u[0], u[1] * (1 - u[0]), u[2] * (1 - u[0]) * (1 - u[1])], axis=-1)
        wt = wt * (1 - u[0]) ** 2 * (1 - u[1])
    return pts, wt


@lru_cache(maxsize=None)
def _pyramid_oracle_reference(n):
    x, wx = _gauss_1d(n)
    u, v, w = (g.ravel() for g in np.meshgrid(x, x, x, indexing="ij"))
    wt = np.einsum("i,j,k->ijk", wx, wx, wx).ravel() * (1 - w) ** 2
    return np.stack([u, v, w], axis=-1), wt


def reference_rule(subcell, target_degree: int) -> Rule:
    """A rule exact for total degree ``target_degree`` built independently of the catalogs."""
    cell = subcell.cell
    d = len(np.asarray(cell.origin if subcell.kind is CellKind.BOX else cell.vertices[0]))
    if subcell.kind is CellKind.BOX:
        n = max(1, math.ceil((target_degree + 1) / 2))
        x, w = _gauss_1d(n)
        ref, wt = _tensor(x, w, d)
        return Rule(np.asarray(cell.origin) + cell.size * ref, wt * cell.volume, target_degree)
    n = collapsed_points(d, target_degree)
    v = np.asarray(cell.vertices, dtype=float)
    if subcell.kind is CellKind.PYRAMID:
        ref, wt = _pyramid_oracle_reference(n)
        return Rule(_map_pyramid(ref, v), wt * 3.0 * cell.volume, target_degree)
    ref, wt = _duffy_reference(d, n)
    jac = v[1:] - v[0]
    return Rule(v[0] + ref @ jac, wt * math.factorial(d) * cell.volume, target_degree)


def reference_scheme(p: Partition, target_degree: int) -> QuadratureScheme:
    if target_degree < 0:
        raise InvalidArgumentError("target degree must be >= 0")
    return _concat([reference_rule(s, target_degree) for s in p.subcells], p.dim)


def scheme_to_csv(p: Partition, scheme: QuadratureScheme) -> str:
    """Rows ``cell_id, level, kind, x1..xd, weight`` in cell order."""
    buf = io.StringIO()
    buf.write("# cutcell-quad v1 quadrature scheme\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["cell_id", "level", "kind"] + [f"x{j + 1}" for j in range(p.dim)] + ["weight"])
    for c, s in enumerate(p.subcells):
        sl = scheme.per_cell(c)
        for x, wt in zip(scheme.points[sl], scheme.weights[sl]):
            w.writerow([c, s.level, s.kind.value] + [repr(float(v)) for v in x] + [repr(float(wt))])
    return buf.getvalue()
