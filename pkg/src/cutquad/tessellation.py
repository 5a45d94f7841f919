"""Midpoint tessellation of a trimmed leaf cell.

The level set is only known at the cell vertices. Every further value is a
linear (along edges and centre-to-vertex diagonals) or multilinear (cell and
face centres) interpolation of those samples, so the construction is exact
for affine fields.

2D: each edge is split at its zero point, a midpoint is placed at the mean
of the zero points found on the four centre-to-vertex diagonals, and every
edge piece is extruded to that midpoint, giving triangles.

3D: the 2D procedure runs on each of the six faces; the cell midpoint is the
mean of the zero points on the eight centre-to-vertex diagonals. Untrimmed
faces are extruded to the midpoint as pyramids, face triangles as
tetrahedra.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCutError, InvalidArgumentError, NotCutError
from .geometry import ZERO_TOL, BoxCell, is_positive


class CellKind(enum.Enum):
    BOX = "box"
    TRIANGLE = "triangle"
    TETRAHEDRON = "tetrahedron"
    PYRAMID = "pyramid"


@dataclass(frozen=True, eq=False)
class SimplexCell:
    """A triangle, tetrahedron or square-based pyramid.

    Pyramid vertices are ``(b0, b1, b2, b3, apex)`` with the base given in
    cyclic order and ``b2 = b1 + b3 - b0`` (parallelogram base).
    """

    kind: CellKind
    vertices: np.ndarray
    level: int

    @property
    def volume(self) -> float:
        return simplex_volume(self.kind, self.vertices)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "level": self.level,
                "vertices": np.asarray(self.vertices).tolist()}


def simplex_volume(kind: CellKind, v) -> float:
    """Signed volume, positive for the orientation produced by this module."""
    v = np.asarray(v, dtype=float)
    if kind is CellKind.TRIANGLE:
        return 0.5 * np.linalg.det(v[1:3] - v[0])
    if kind is CellKind.TETRAHEDRON:
        return np.linalg.det(v[1:4] - v[0]) / 6.0
    if kind is CellKind.PYRAMID:
        return np.linalg.det(np.array([v[1] - v[0], v[3] - v[0], v[4] - v[0]])) / 3.0
    raise InvalidArgumentError(f"not a simplex kind: {kind}")


@dataclass(frozen=True, eq=False)
class TessellationResult:
    interior_cells: list
    exterior_cells: list
    boundary_facets: np.ndarray  # (n, d, d): segments in 2D, triangles in 3D
    midpoint: np.ndarray

    def interior_volume(self) -> float:
        return float(sum(c.volume for c in self.interior_cells))

    def exterior_volume(self) -> float:
        return float(sum(c.volume for c in self.exterior_cells))


def _zero_point(pa, pb, fa, fb):
    t = fa / (fa - fb)
    return pa + t * (pb - pa)


# cyclic (counter-clockwise) order of the unit square corners, lexicographic indices
_SQUARE_LOOP = (0, 2, 3, 1)


def _face_procedure(corners, values, tol):
    """Run the 2D procedure on a quadrilateral given in cyclic order.

    Returns ``(pieces, edge_zeros, midpoint, trimmed)`` where ``pieces`` is a
    list of ``(a, b, positive)`` edge pieces in loop order and
    ``edge_zeros`` the edge zero points in loop order.
    """
    pos = is_positive(values, tol)
    if pos.all() or not pos.any():
        pieces = [(corners[i], corners[(i + 1) % 4], bool(pos[0])) for i in range(4)]
        return pieces, [], None, False

    centre = corners.mean(axis=0)
    fc = float(np.mean(values))
    pc = fc >= -tol

    pieces, edge_zeros = [], []
    for i in range(4):
        j = (i + 1) % 4
        if pos[i] == pos[j]:
            pieces.append((corners[i], corners[j], bool(pos[i])))
        else:
            z = _zero_point(corners[i], corners[j], values[i], values[j])
            edge_zeros.append(z)
            pieces.append((corners[i], z, bool(pos[i])))
            pieces.append((z, corners[j], bool(pos[j])))

    diag = [_zero_point(centre, corners[i], fc, values[i]) for i in range(4) if pos[i] != pc]
    if diag:
        mid = np.mean(diag, axis=0)
    else:
        # corner sliver where the centre shares the sign of every corner but one
        mid = np.mean(edge_zeros, axis=0)
    return pieces, edge_zeros, mid, True


def _check_cut(values, n, tol):
    values = np.asarray(values, dtype=float)
    if values.shape != (n,):
        raise InvalidArgumentError(f"expected {n} vertex values, got shape {values.shape}")
    if np.isnan(values).any():
        raise InvalidArgumentError("NaN vertex value")
    pos = is_positive(values, tol)
    if pos.all() or not pos.any():
        raise NotCutError("vertex values do not change sign")
    return values


def _length_tol(cell):
    return 1e-13 * cell.size


def tessellate_2d(vertex_values, cell: BoxCell, zero_tol: float = ZERO_TOL,
                  level: int | None = None) -> TessellationResult:
    """Tessellate a cut square into positive and negative triangles."""
    if cell.dim != 2:
        raise InvalidArgumentError("tessellate_2d needs a 2D cell")
    values = _check_cut(vertex_values, 4, zero_tol)
    level = cell.level + 1 if level is None else level
    verts = cell.vertices()
    loop = list(_SQUARE_LOOP)
    pieces, edge_zeros, mid, _ = _face_procedure(verts[loop], values[loop], zero_tol)

    area_tol = _length_tol(cell) * cell.size
    inside, outside = [], []
    for a, b, positive in pieces:
        tri = np.array([a, b, mid])
        area = simplex_volume(CellKind.TRIANGLE, tri)
        if area <= area_tol:
            if area < -area_tol:
                raise DegenerateCutError("midpoint outside the cell; negative triangle")
            continue
        (inside if positive else outside).append(SimplexCell(CellKind.TRIANGLE, tri, level))
    facets = np.array([[z, mid] for z in edge_zeros]).reshape(-1, 2, 2)
    return TessellationResult(inside, outside, facets, mid)


def _cube_faces():
    """Faces of the unit cube as lexicographic vertex-index loops, outward CCW."""
    faces = []
    for axis in range(3):
        p, q = [a for a in range(3) if a != axis]
        for side in (0, 1):
            loop = []
            for bp, bq in ((0, 0), (1, 0), (1, 1), (0, 1)):
                bits = [0, 0, 0]
                bits[axis], bits[p], bits[q] = side, bp, bq
                loop.append(4 * bits[0] + 2 * bits[1] + bits[2])
            # e_p x e_q = +e_axis for (p, q) in cyclic order; orient outward
            cyclic = (p - axis) % 3 == 1
            outward_positive = (side == 1)
            if cyclic != outward_positive:
                loop = [loop[0], loop[3], loop[2], loop[1]]
            faces.append(tuple(loop))
    return tuple(faces)


_CUBE_FACES = _cube_faces()


def tessellate_3d(vertex_values, cell: BoxCell, zero_tol: float = ZERO_TOL,
                  level: int | None = None) -> TessellationResult:
    """Tessellate a cut cube into tetrahedra and pyramids on both sides."""
    if cell.dim != 3:
        raise InvalidArgumentError("tessellate_3d needs a 3D cell")
    values = _check_cut(vertex_values, 8, zero_tol)
    level = cell.level + 1 if level is None else level
    verts = cell.vertices()
    pos = is_positive(values, zero_tol)

    centre = cell.center
    fc = float(values.mean())
    pc = fc >= -zero_tol
    diag = [_zero_point(centre, verts[i], fc, values[i]) for i in range(8) if pos[i] != pc]
    if diag:
        mid = np.mean(diag, axis=0)
    else:
        edge_zeros = []
        for i in range(8):
            for bit in (4, 2, 1):
                j = i | bit
                if j != i and pos[i] != pos[j]:
                    edge_zeros.append(_zero_point(verts[i], verts[j], values[i], values[j]))
        mid = np.mean(edge_zeros, axis=0)

    vol_tol = _length_tol(cell) * cell.size ** 2
    inside, outside, facets = [], [], []

    def add(kind, v, positive):
        vol = simplex_volume(kind, v)
        if vol <= vol_tol:
            if vol < -vol_tol:
                raise DegenerateCutError("midpoint outside the cell; negative volume")
            return
        (inside if positive else outside).append(SimplexCell(kind, v, level))

    for loop in _CUBE_FACES:
        corners = verts[list(loop)]
        pieces, edge_zeros, fmid, trimmed = _face_procedure(corners, values[list(loop)], zero_tol)
        if not trimmed:
            # reversed loop so that the base normal points towards the apex
            base = corners[[0, 3, 2, 1]]
            add(CellKind.PYRAMID, np.vstack([base, mid]), bool(pos[loop[0]]))
            continue
        for a, b, positive in pieces:
            add(CellKind.TETRAHEDRON, np.array([a, fmid, b, mid]), positive)
        facets.extend(np.array([z, fmid, mid]) for z in edge_zeros)

    facets = np.array(facets).reshape(-1, 3, 3)
    return TessellationResult(inside, outside, facets, mid)


def tessellate(vertex_values, cell: BoxCell, zero_tol: float = ZERO_TOL,
               level: int | None = None) -> TessellationResult:
    if cell.dim == 2:
        return tessellate_2d(vertex_values, cell, zero_tol, level)
    return tessellate_3d(vertex_values, cell, zero_tol, level)


def facet_measure(facets) -> float:
    """Total length (2D segments) or area (3D triangles) of boundary facets."""
    f = np.asarray(facets, dtype=float)
    if f.size == 0:
        return 0.0
    if f.shape[1] == 2:
        return float(np.linalg.norm(f[:, 1] - f[:, 0], axis=1).sum())
    cross = np.cross(f[:, 1] - f[:, 0], f[:, 2] - f[:, 0])
    return float(0.5 * np.linalg.norm(cross, axis=1).sum())
