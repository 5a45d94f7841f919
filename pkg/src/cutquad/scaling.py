"""Scaling relations for sub-cell and point counts of octree partitions.

For an element of size ``h`` cut by a surface of measure ``S`` the surface
fraction is ``eta_S = S / (s_bar h^(d-1))``, with ``s_bar`` the average cut
measure of a randomly cut unit cube. Below the level

    l_hat = ceil(log2(eta_S) / (1 - d))

the interface sits in a single sub-cell; above it the number of cut cells
grows like ``eta_S 2^(l (d-1))``.

``s_bar`` and the tessellation multiplier ``t_bar`` (interior cells per
tessellated leaf) are estimated by cutting the unit cube with random planes
and running the tessellation on the affine field. Planes are drawn from the
motion-invariant measure (uniform normal direction, offset uniform over the
cube's extent along the normal), which is the measure under which a surface
of measure ``S`` meets ``S / (s_bar h^(d-1))`` cells on average. For this
measure ``s_bar`` is known exactly (volume over mean width: pi/4 in 2D, 2/3 in
3D), which the tests use to check the sampler.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .geometry import BoxCell, is_positive
from .octree import Partition, boundary_measure, partition_volume, subcell_census
from .quadrature import index_for_degree, rule_size, scheme_size, uniform_degree_indices
from .tessellation import CellKind, facet_measure, tessellate

V_BAR = 0.5

#: Monte Carlo calibration (``calibrate(d, samples=20000, seed=12345)``)
CALIBRATION = {
    2: {"s_bar": 0.7946694614166622, "t_bar": 2.9956, "kinds": {"triangle": 2.9956},
        "samples": 20000, "seed": 12345},
    3: {"s_bar": 0.6707196129770018, "t_bar": 12.95125,
        "kinds": {"pyramid": 1.0011, "tetrahedron": 11.95015},
        "samples": 20000, "seed": 12345},
}


@dataclass(frozen=True)
class Calibration:
    s_bar: float  # mean cut measure of the unit cube
    t_bar: float  # mean number of interior tessellated cells per cut cube
    kinds: dict  # mean number of interior cells per kind
    samples: int
    seed: int

    def q_tes(self, degree: int) -> float:
        """Mean points per tessellated cell for a uniform Gauss degree."""
        n = sum(c * rule_size(CellKind(k), index_for_degree(CellKind(k), degree))
                for k, c in self.kinds.items())
        return n / self.t_bar


def calibrate(d: int, samples: int = 20000, seed: int = 12345) -> Calibration:
    """Estimate ``s_bar`` and ``t_bar`` from random plane cuts of the unit cube."""
    if d not in (2, 3):
        raise InvalidArgumentError(f"dimension must be 2 or 3, got {d}")
    rng = np.random.default_rng(seed)
    cube = BoxCell(0, (0.0,) * d, 1.0)
    verts = cube.vertices()
    s_tot, t_tot, kinds, n = 0.0, 0, {}, 0
    while n < samples:
        normal = rng.normal(size=d)
        normal /= np.linalg.norm(normal)
        proj = verts @ normal
        values = proj - rng.uniform(proj.min(), proj.max())
        pos = is_positive(values)
        if pos.all() or not pos.any():
            continue
        res = tessellate(values, cube, level=1)
        s_tot += facet_measure(res.boundary_facets)
        t_tot += len(res.interior_cells)
        for c in res.interior_cells:
            kinds[c.kind.value] = kinds.get(c.kind.value, 0) + 1
        n += 1
    return Calibration(s_tot / n, t_tot / n, {k: v / n for k, v in sorted(kinds.items())},
                       samples, seed)


_CACHE = {}


def calibration(d: int) -> Calibration:
    """Stored calibration constants for dimension ``d``."""
    entry = CALIBRATION[d]
    if entry["s_bar"] is not None:
        return Calibration(entry["s_bar"], entry["t_bar"], entry["kinds"],
                           entry["samples"], entry["seed"])
    if d not in _CACHE:
        _CACHE[d] = calibrate(d, entry["samples"], entry["seed"])
    return _CACHE[d]


@dataclass(frozen=True)
class ScalingInputs:
    d: int
    rho_max: int
    eta_s: float
    eta: float
    q_bar: tuple  # points per sub-cell for levels 1..rho_max+1
    t_bar: float

    def __post_init__(self):
        if self.d not in (2, 3):
            raise InvalidArgumentError(f"dimension must be 2 or 3, got {self.d}")
        if self.rho_max < 1:
            raise InvalidArgumentError(f"depth must be >= 1, got {self.rho_max}")
        if not self.eta_s > 0:
            raise InvalidArgumentError("surface fraction must be positive")
        if not 0 < self.eta < 1:
            raise InvalidArgumentError("volume fraction must lie in (0, 1)")
        if len(self.q_bar) != self.rho_max + 1:
            raise InvalidArgumentError("q_bar needs one entry per level 1..rho_max+1")

    @property
    def l_hat(self) -> int:
        """Localization level, clamped to at least 1."""
        return max(1, math.ceil(math.log2(self.eta_s) / (1 - self.d)))


@dataclass(frozen=True)
class CountPrediction:
    m0: dict  # level -> intersected cells
    m_plus: dict  # level -> preserved cells
    n: dict  # level -> points, including rho_max+1
    total: float


def predict_counts(inp: ScalingInputs) -> CountPrediction:
    d, rho, es, lh = inp.d, inp.rho_max, inp.eta_s, inp.l_hat
    m0, mp, n = {}, {}, {}
    for lvl in range(1, rho + 1):
        m0[lvl] = 1.0 if lvl < lh else es * 2.0 ** (lvl * (d - 1))
        if lvl <= lh:
            mp[lvl] = 0.0 if inp.eta <= 0.5 else 2.0 ** d - 1
        else:
            mp[lvl] = es * 2.0 ** (lvl * (d - 1) - 1)
        n[lvl] = inp.q_bar[lvl - 1] * mp[lvl]
    n[rho + 1] = inp.q_bar[rho] * inp.t_bar * es * 2.0 ** (rho * (d - 1))
    return CountPrediction(m0, mp, n, float(sum(n.values())))


def asymptotic_points(d: int, rho_max: int, eta_s: float, q_line: int, q_tes: float,
                      t_bar: float) -> float:
    """Equal-order total ``eta_S (q_tes t_bar + q_line^d / (2 - 2^(2-d))) 2^(rho (d-1))``."""
    if rho_max < 1:
        raise InvalidArgumentError(f"depth must be >= 1, got {rho_max}")
    return eta_s * (q_tes * t_bar + q_line ** d / (2 - 2.0 ** (2 - d))) * 2.0 ** (rho_max * (d - 1))


def measure_surface_fraction(p: Partition, s_bar: float | None = None):
    """Return ``(eta_S, eta)`` of a partition."""
    h = p.element.size
    s_bar = calibration(p.dim).s_bar if s_bar is None else s_bar
    S = boundary_measure(p)
    eta = partition_volume(p) / p.element.volume
    return S / (s_bar * h ** (p.dim - 1)), eta


def equal_order_inputs(p: Partition, degree: int, cal: Calibration | None = None) -> ScalingInputs:
    """Scaling inputs for a uniform Gauss degree on the partition's geometry."""
    cal = calibration(p.dim) if cal is None else cal
    es, eta = measure_surface_fraction(p, cal.s_bar)
    q_line = index_for_degree(CellKind.BOX, degree) + 1
    q_bar = (q_line ** p.dim,) * p.max_depth + (cal.q_tes(degree),)
    return ScalingInputs(p.dim, p.max_depth, es, eta, q_bar, cal.t_bar)


def measured_counts(p: Partition, degree: int) -> dict:
    """Measured per-level counts under a uniform Gauss degree."""
    c = subcell_census(p)
    idx = uniform_degree_indices(p, degree)
    n = {}
    for s, i in zip(p.subcells, idx):
        n[s.level] = n.get(s.level, 0) + rule_size(s.kind, int(i), p.dim)
    return {"m0": c.cut_leaves, "m_plus": c.preserved, "n": n, "total": scheme_size(p, idx)}


def comparison_csv(p: Partition, degree: int, cal: Calibration | None = None) -> str:
    """Predicted against measured counts per level."""
    pred = predict_counts(equal_order_inputs(p, degree, cal))
    meas = measured_counts(p, degree)
    buf = io.StringIO()
    buf.write("# cutcell-quad v1 scaling comparison\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["level", "m_plus_pred", "m_plus_meas", "n_pred", "n_meas"])
    for lvl in range(1, p.max_depth + 2):
        w.writerow([lvl, pred.m_plus.get(lvl, ""), meas["m_plus"].get(lvl, ""),
                    pred.n.get(lvl, 0.0), meas["n"].get(lvl, 0)])
    w.writerow(["total", "", "", pred.total, meas["total"]])
    return buf.getvalue()
