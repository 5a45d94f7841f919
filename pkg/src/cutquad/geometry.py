"""Level-set fields, axis-aligned box cells and sign classification.

Sign convention: a level-set value > 0 marks the interior of the domain and
< 0 the exterior. Values with ``|F| <= zero_tol`` count as interior
everywhere (classification and tessellation use the same rule).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidArgumentError, InvalidGeometryError

#: relative zero tolerance, multiplied by the element size
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class LevelSetField:
    """A scalar field on ``R^dim``.

    ``func`` takes an array of shape ``(..., dim)`` and returns an array of
    shape ``(...)``. ``spec`` is an optional JSON-able description used by the
    CLI and the partition export.
    """

    func: Callable[[np.ndarray], np.ndarray]
    dim: int
    spec: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise InvalidArgumentError(f"dimension must be 2 or 3, got {self.dim}")

    def __call__(self, points) -> np.ndarray:
        x = np.asarray(points, dtype=float)
        if x.shape[-1] != self.dim:
            raise InvalidArgumentError(
                f"expected points with trailing dimension {self.dim}, got {x.shape}")
        return np.asarray(self.func(x), dtype=float)

    # method-style alias
    eval = __call__


def make_ellipsoid_exclusion(r1, r2, phi=0.0, d=2) -> LevelSetField:
    """Field that is negative inside an ellipsoid centred at the origin.

    The major semi-axis ``r1`` lies in the x1-x2 plane along the direction
    ``(cos phi, sin phi)`` (``phi`` in degrees, counter-clockwise from x1, so
    for ``0 < phi < 90`` it points into the unit element); all other
    semi-axes equal ``r2``.
    """
    if not (r1 > 0 and r2 > 0):
        raise InvalidArgumentError(f"radii must be positive, got r1={r1}, r2={r2}")
    if d not in (2, 3):
        raise InvalidArgumentError(f"dimension must be 2 or 3, got {d}")
    angle = np.deg2rad(phi)
    c, s = np.cos(angle), np.sin(angle)
    r1, r2 = float(r1), float(r2)

    def ellipsoid(x):
        xb1 = x[..., 0] * c + x[..., 1] * s
        xb2 = -x[..., 0] * s + x[..., 1] * c
        val = (xb1 / r1) ** 2 + (xb2 / r2) ** 2
        for k in range(2, x.shape[-1]):
            val = val + (x[..., k] / r2) ** 2
        return val - 1.0

    spec = {"kind": "ellipsoid", "r1": r1, "r2": r2, "phi_deg": float(phi), "dim": d}
    return LevelSetField(ellipsoid, d, spec)


def make_halfspace(normal, offset, d=None) -> LevelSetField:
    """Affine field ``normal . x - offset`` (positive where ``normal . x > offset``)."""
    n = np.asarray(normal, dtype=float)
    d = len(n) if d is None else d
    offset = float(offset)
    spec = {"kind": "halfspace", "normal": n.tolist(), "offset": offset, "dim": d}
    return LevelSetField(lambda x: x @ n - offset, d, spec)


def make_constant(value, d) -> LevelSetField:
    value = float(value)
    return LevelSetField(lambda x: np.full(x.shape[:-1], value), d,
                         {"kind": "constant", "value": value, "dim": d})


def field_from_spec(spec: dict) -> LevelSetField:
    """Build a field from its JSON description (see ``LevelSetField.spec``)."""
    kind = spec.get("kind")
    if kind == "ellipsoid":
        r1 = spec["r1"]
        return make_ellipsoid_exclusion(r1, spec.get("r2", r1), spec.get("phi_deg", 0.0),
                                        spec.get("dim", 2))
    if kind == "halfspace":
        return make_halfspace(spec["normal"], spec["offset"], spec.get("dim"))
    if kind == "constant":
        return make_constant(spec["value"], spec["dim"])
    raise InvalidArgumentError(f"unknown geometry kind {kind!r}")


@dataclass(frozen=True)
class BoxCell:
    """Axis-aligned cube ``origin + [0, size]^d`` at octree level ``level``."""

    level: int
    origin: tuple
    size: float

    def __post_init__(self):
        if not self.size > 0:
            raise InvalidArgumentError(f"cell size must be positive, got {self.size}")
        if self.level < 0:
            raise InvalidArgumentError(f"negative level {self.level}")
        object.__setattr__(self, "origin", tuple(float(o) for o in self.origin))

    @property
    def dim(self) -> int:
        return len(self.origin)

    @property
    def volume(self) -> float:
        return self.size ** self.dim

    @property
    def center(self) -> np.ndarray:
        return np.asarray(self.origin) + 0.5 * self.size

    def vertices(self) -> np.ndarray:
        """The ``2^d`` corners in lexicographic order (x1 varies slowest)."""
        return np.asarray(self.origin) + self.size * unit_cube_vertices(self.dim)

    def children(self) -> list:
        """The ``2^d`` congruent children, lexicographic by origin."""
        h = self.size / 2
        return [BoxCell(self.level + 1, tuple(np.asarray(self.origin) + h * np.asarray(b)), h)
                for b in itertools.product((0, 1), repeat=self.dim)]

    def to_dict(self) -> dict:
        return {"level": self.level, "origin": list(self.origin), "size": self.size}


def unit_cube_vertices(d: int) -> np.ndarray:
    return np.array(list(itertools.product((0.0, 1.0), repeat=d)))


class Classification(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    CUT = "cut"


@dataclass(frozen=True)
class SignPattern:
    values: np.ndarray  # vertex values, lexicographic order
    center_value: float
    classification: Classification

    @property
    def is_cut(self) -> bool:
        return self.classification is Classification.CUT


def classify_values(samples: Sequence[float], zero_tol: float = ZERO_TOL) -> Classification:
    s = np.asarray(samples, dtype=float)
    if np.isnan(s).any():
        raise InvalidGeometryError("level-set evaluation returned NaN")
    if np.all(s > zero_tol):
        return Classification.INSIDE
    if np.all(s < -zero_tol):
        return Classification.OUTSIDE
    return Classification.CUT


def classify_cell(field: LevelSetField, cell: BoxCell, zero_tol: float | None = None) -> SignPattern:
    """Sample ``field`` at the vertices and centre of ``cell`` and classify it."""
    if zero_tol is None:
        zero_tol = ZERO_TOL
    pts = np.vstack([cell.vertices(), cell.center[None, :]])
    vals = field(pts)
    return SignPattern(vals[:-1], float(vals[-1]), classify_values(vals, zero_tol))


def is_positive(values, zero_tol: float = ZERO_TOL) -> np.ndarray:
    """Sign rule used downstream: values within ``zero_tol`` of zero count as positive."""
    return np.asarray(values) >= -zero_tol
