"""Recursive bisection of a cut element with tessellation at the deepest level."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvalidArgumentError
from .geometry import (ZERO_TOL, BoxCell, Classification, LevelSetField,
                       classify_cell, is_positive)
from .tessellation import CellKind, SimplexCell, facet_measure, tessellate

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SubCell:
    """One integrable cell of a partition: a preserved box or a tessellated cell."""

    id: int
    level: int
    kind: CellKind
    cell: object  # BoxCell or SimplexCell
    parent: int | None = None  # index into Partition.cut_leaves for tessellated cells

    @property
    def volume(self) -> float:
        return self.cell.volume


@dataclass(frozen=True, eq=False)
class Partition:
    """Octree partition of one element.

    ``levels[l]`` holds the boxes preserved at level ``l`` (level 0 only for
    an untrimmed element). Cut leaves at ``max_depth`` are never integrated;
    their interior parts appear in ``tessellated`` at level ``max_depth + 1``.
    """

    element: BoxCell
    max_depth: int
    levels: dict
    cut_leaves: list
    tessellated: list
    boundary_facets: np.ndarray
    tess_parent: list = field(default_factory=list)  # cut-leaf index per tessellated cell
    field_spec: dict = field(default_factory=dict)
    outside: bool = False  # element entirely outside: empty partition

    @property
    def dim(self) -> int:
        return self.element.dim

    @cached_property
    def subcells(self) -> list:
        """Integrable cells in deterministic order: boxes by level, then tessellated."""
        out = []
        for lvl in sorted(self.levels):
            for box in self.levels[lvl]:
                out.append(SubCell(len(out), lvl, CellKind.BOX, box))
        for parent, cell in zip(self.tess_parent, self.tessellated):
            out.append(SubCell(len(out), cell.level, cell.kind, cell, parent))
        return out

    @cached_property
    def subcell_levels(self) -> np.ndarray:
        return np.array([s.level for s in self.subcells], dtype=int)

    def __len__(self):
        return len(self.subcells)

    def to_dict(self) -> dict:
        return {
            "max_depth": self.max_depth,
            "element": self.element.to_dict(),
            "geometry": self.field_spec,
            "levels": [{"level": lvl, "boxes": [{"origin": list(b.origin), "size": b.size}
                                                for b in boxes]}
                       for lvl, boxes in sorted(self.levels.items())],
            "cut_leaves": [{"origin": list(b.origin), "size": b.size} for b in self.cut_leaves],
            "tessellated": [{"kind": c.kind.value, "vertices": np.asarray(c.vertices).tolist()}
                            for c in self.tessellated],
            "boundary_facets": np.asarray(self.boundary_facets).tolist(),
        }


def partition_element(field: LevelSetField, element: BoxCell, max_depth: int,
                      zero_tol: float | None = None) -> Partition:
    """Bisect ``element`` ``max_depth`` times and tessellate the cut leaves."""
    if max_depth < 1:
        raise InvalidArgumentError(f"max_depth must be >= 1, got {max_depth}")
    if field.dim != element.dim:
        raise InvalidArgumentError("field and element dimensions differ")
    tol = ZERO_TOL * element.size if zero_tol is None else zero_tol
    spec = dict(field.spec)

    top = classify_cell(field, element, tol)
    if top.classification is Classification.INSIDE:
        return _make(element, max_depth, {0: [element]}, [], [], [], spec)
    if top.classification is Classification.OUTSIDE:
        log.warning("element %s lies outside the domain; empty partition", element.origin)
        return _make(element, max_depth, {}, [], [], [], spec, outside=True)

    levels = {lvl: [] for lvl in range(1, max_depth + 1)}
    leaves = []
    frontier = [element]
    for lvl in range(1, max_depth + 1):
        nxt = []
        for parent in frontier:
            for child in parent.children():
                cls = classify_cell(field, child, tol).classification
                if cls is Classification.INSIDE:
                    levels[lvl].append(child)
                elif cls is Classification.CUT:
                    nxt.append(child)
        frontier = nxt
    leaves = frontier

    tess, facets, kept_leaves = [], [], []
    for leaf in leaves:
        values = field(leaf.vertices())
        pos = is_positive(values, tol)
        if not pos.any():
            # negative at every vertex: the linear model sees no interior
            continue
        idx = len(kept_leaves)
        kept_leaves.append(leaf)
        if pos.all():
            # sign change only at the centre sample; the vertex-based model
            # sees a fully interior cell, tiled by extrusion to the centre
            cells = _fan_to_centre(leaf, max_depth + 1)
        else:
            res = tessellate(values, leaf, tol, level=max_depth + 1)
            cells = res.interior_cells
            facets.extend(res.boundary_facets)
        tess.extend((idx, c) for c in cells)
    d = element.dim
    facets = np.array(facets).reshape(-1, d, d)
    return _make(element, max_depth, levels, kept_leaves, tess, facets, spec)


def _make(element, max_depth, levels, leaves, tess_parents, facets, spec, outside=False):
    d = element.dim
    return Partition(element, max_depth, levels, list(leaves), [c for _, c in tess_parents],
                     np.asarray(facets, dtype=float).reshape(-1, d, d),
                     [i for i, _ in tess_parents], spec, outside)


def _fan_to_centre(leaf: BoxCell, level: int) -> list:
    verts = leaf.vertices()
    c = leaf.center
    if leaf.dim == 2:
        loop = verts[[0, 2, 3, 1]]
        return [SimplexCell(CellKind.TRIANGLE, np.array([loop[i], loop[(i + 1) % 4], c]), level)
                for i in range(4)]
    from .tessellation import _CUBE_FACES
    return [SimplexCell(CellKind.PYRAMID, np.vstack([verts[[f[0], f[3], f[2], f[1]]], c]), level)
            for f in _CUBE_FACES]


def partition_volume(p: Partition) -> float:
    return float(sum(s.volume for s in p.subcells))


@dataclass(frozen=True)
class Census:
    preserved: dict  # level -> m+ count
    cut_leaves: int  # m0 at max depth
    tessellated: int
    by_kind: dict

    @property
    def total(self) -> int:
        return sum(self.preserved.values()) + self.tessellated


def subcell_census(p: Partition) -> Census:
    preserved = {lvl: len(boxes) for lvl, boxes in sorted(p.levels.items())}
    kinds = Counter(s.kind.value for s in p.subcells)
    return Census(preserved, len(p.cut_leaves), len(p.tessellated), dict(kinds))


def boundary_measure(p: Partition) -> float:
    return facet_measure(p.boundary_facets)
