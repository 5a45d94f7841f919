"""Greedy distribution of integration points over the sub-cells of a cut element.

Starting from the one-point rule on every sub-cell, each iteration computes
the worst polynomial of the current scheme, localizes its error to the
sub-cells, divides by the point cost of the next rule and raises the index of
the best sub-cell (SubCell marking) or of every sub-cell on the best octree
level (Level marking).
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .error_estimator import (ExactData, PolynomialSpace, exact_data, factorize,
                              indicators, localized_errors, scheme_cell_moments,
                              worst_case_error)
from .errors import InvalidArgumentError
from .octree import Partition
from .quadrature import (BoxRuleKind, assemble_scheme, cell_rule, index_for_degree,
                         max_index, rule_size)


class Marking(enum.Enum):
    SUBCELL = "subcell"
    LEVEL = "level"


class Termination(enum.Enum):
    BUDGET_REACHED = "BudgetReached"
    TARGET_REACHED = "TargetReached"
    DEPLETED = "Depleted"
    EXACT = "Exact"  # error vanished before the budget was reached
    MAX_ITER = "MaxIterations"


@dataclass
class Step:
    iteration: int
    total_points: int
    e_total: float
    marked_cells: list = field(default_factory=list)  # cells raised after this step
    marked_level: int | None = None
    idx: np.ndarray | None = None


@dataclass
class OptimizationTrace:
    steps: list
    final_idx: np.ndarray
    termination: Termination
    marking: Marking

    @property
    def points(self) -> np.ndarray:
        return np.array([s.total_points for s in self.steps])

    @property
    def errors(self) -> np.ndarray:
        return np.array([s.e_total for s in self.steps])

    @property
    def iterations(self) -> int:
        """Number of marking steps performed."""
        return len(self.steps) - 1

    def error_at(self, points: int) -> float:
        """Error of the last scheme with at most ``points`` points."""
        ok = self.points <= points
        if not ok.any():
            return float("nan")
        return float(self.errors[np.flatnonzero(ok)[-1]])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# cutcell-quad v1 optimization trace\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["iteration", "points", "error", "marked"])
        for s in self.steps:
            if s.marked_level is not None:
                marked = f"level:{s.marked_level}"
            else:
                marked = " ".join(str(c) for c in s.marked_cells)
            w.writerow([s.iteration, s.total_points, repr(s.e_total), marked])
        return buf.getvalue()


class _CellMoments:
    """Per-cell approximate moments, cached by (cell, index)."""

    def __init__(self, p, space, box_kind):
        self.p, self.space, self.box_kind = p, space, BoxRuleKind(box_kind)
        self.cache = {}

    def __call__(self, cell_id, index):
        key = (cell_id, index)
        if key not in self.cache:
            r = cell_rule(self.p.subcells[cell_id], index, self.box_kind)
            self.cache[key] = r.weights @ self.space.evaluate(r.points, self.p.element)
        return self.cache[key]


def _select_cell(R, depleted, levels):
    live = np.flatnonzero(~depleted)
    best = R[live].max()
    cand = live[R[live] == best]
    # ties: lowest level, then lowest id
    return int(cand[np.lexsort((cand, levels[cand]))[0]])


def _select_level(R, depleted, levels):
    best, best_level = -1.0, None
    for lvl in np.unique(levels):
        mask = (levels == lvl) & ~depleted
        if not mask.any():
            continue
        total = R[mask].sum()
        if total > best:
            best, best_level = total, int(lvl)
    return best_level


def optimize(p: Partition, space: PolynomialSpace, budget: int | None = None,
             target_error: float | None = None, marking=Marking.SUBCELL,
             exact: ExactData | None = None, box_kind=BoxRuleKind.GAUSS,
             max_iter: int = 100_000, keep_idx: bool = False) -> OptimizationTrace:
    """Run the greedy optimization until the budget, the target error or depletion."""
    if not p.subcells:
        raise InvalidArgumentError("empty partition: nothing to optimize")
    if budget is None and target_error is None:
        raise InvalidArgumentError("give a point budget or a target error")
    marking = Marking(marking)
    exact = exact_data(p, space) if exact is None else exact
    F = factorize(exact.gramian)
    levels = p.subcell_levels
    m, d = len(p.subcells), p.dim
    kinds = [s.kind for s in p.subcells]
    moments = _CellMoments(p, space, box_kind)

    idx = np.zeros(m, dtype=int)
    approx = np.array([moments(c, 0) for c in range(m)])
    total = sum(rule_size(kinds[c], 0, d) for c in range(m))
    steps = []
    termination = Termination.MAX_ITER
    for it in range(max_iter + 1):
        e, v = worst_case_error(exact.xi, approx.sum(axis=0), F)
        step = Step(it, int(total), e, idx=idx.copy() if keep_idx else None)
        steps.append(step)
        if budget is not None and total >= budget:
            termination = Termination.BUDGET_REACHED
            break
        if target_error is not None and e <= target_error:
            termination = Termination.TARGET_REACHED
            break
        if v is None:
            termination = Termination.EXACT
            break
        per_cell = localized_errors(exact.cell_moments, approx, v)
        R, depleted = indicators(p, per_cell, idx)
        if depleted.all():
            termination = Termination.DEPLETED
            break
        if it == max_iter:
            break
        if marking is Marking.SUBCELL:
            marked = [_select_cell(R, depleted, levels)]
        else:
            lvl = _select_level(R, depleted, levels)
            step.marked_level = lvl
            marked = [int(c) for c in np.flatnonzero((levels == lvl) & ~depleted)]
        step.marked_cells = marked
        for c in marked:
            total += rule_size(kinds[c], idx[c] + 1, d) - rule_size(kinds[c], idx[c], d)
            idx[c] += 1
            approx[c] = moments(c, idx[c])
    return OptimizationTrace(steps, idx, termination, marking)


# ---------------------------------------------------------------- baselines

@dataclass(frozen=True)
class SweepPoint:
    order: int  # uniform index or Gauss degree
    total_points: int
    e_total: float


def uniform_indices(p: Partition, order: int, by: str = "degree") -> np.ndarray:
    """Index list giving every sub-cell the same rule index or Gauss degree.

    ``by="index"`` clamps simplex indices at the top of their catalogs;
    ``by="degree"`` picks per kind the cheapest rule exact for ``order``.
    """
    if by == "index":
        return np.array([min(order, max_index(s.kind)) for s in p.subcells], dtype=int)
    if by == "degree":
        return np.array([index_for_degree(s.kind, order) for s in p.subcells], dtype=int)
    raise InvalidArgumentError(f"unknown sweep kind {by!r}")


def scheme_error(p: Partition, space: PolynomialSpace, idx, exact: ExactData,
                 box_kind=BoxRuleKind.GAUSS):
    scheme = assemble_scheme(p, idx, box_kind)
    xi_bar = scheme_cell_moments(p, space, scheme).sum(axis=0)
    e, _ = worst_case_error(exact.xi, xi_bar, exact.gramian)
    return scheme.total, e


def equal_order_sweep(p: Partition, space: PolynomialSpace, box_kind=BoxRuleKind.GAUSS,
                      max_order: int = 8, by: str = "degree",
                      exact: ExactData | None = None) -> list:
    """Error of the same rule on every sub-cell, for order ``0..max_order``."""
    exact = exact_data(p, space) if exact is None else exact
    out = []
    for q in range(max_order + 1):
        total, e = scheme_error(p, space, uniform_indices(p, q, by), exact, box_kind)
        out.append(SweepPoint(q, total, e))
    return out


class Strategy(enum.Enum):
    A = "A"  # minimal lowering
    B = "B"  # uniform lowering


def rule_of_thumb_degrees(max_depth: int, strategy, k_max: int) -> list:
    """Gauss degrees for levels ``1..max_depth+1``.

    A: ``k_max`` on level 1, two less on every further level, floored at 0.
    B: linear from ``k_max`` on level 1 to 0 on level ``max_depth``, rounded
    down to even degrees, 0 on the tessellation level.
    """
    if k_max < 0:
        raise InvalidArgumentError("k_max must be >= 0")
    if max_depth < 1:
        raise InvalidArgumentError("max_depth must be >= 1")
    strategy = Strategy(strategy)
    if strategy is Strategy.A:
        return [max(k_max - 2 * (lvl - 1), 0) for lvl in range(1, max_depth + 2)]
    if max_depth == 1:
        return [k_max, 0]
    out = []
    for lvl in range(1, max_depth + 1):
        deg = math.floor(k_max * (max_depth - lvl) / (max_depth - 1))
        out.append(deg - deg % 2)
    return out + [0]


def rule_of_thumb(p: Partition, strategy, k_max: int) -> np.ndarray:
    """Index list realizing :func:`rule_of_thumb_degrees` (level 0 gets ``k_max``)."""
    degrees = rule_of_thumb_degrees(p.max_depth, strategy, k_max)
    out = []
    for s in p.subcells:
        deg = k_max if s.level == 0 else degrees[s.level - 1]
        out.append(index_for_degree(s.kind, deg))
    return np.array(out, dtype=int)


# ---------------------------------------------------------------- several elements

@dataclass
class GlobalStep:
    iteration: int
    total_points: int
    errors: list  # per element

    @property
    def e_sum(self) -> float:
        return float(sum(self.errors))


def optimize_global(partitions, space: PolynomialSpace, budget: int,
                    marking=Marking.LEVEL, max_iter: int = 100_000):
    """Greedy marking across elements with summed indicators.

    Element errors are not weighted by any operator constant; the sum of the
    element errors is only a proxy for the global error.
    """
    marking = Marking(marking)
    parts = [p for p in partitions if p.subcells]
    if not parts:
        raise InvalidArgumentError("no element with sub-cells")
    data = [exact_data(p, space) for p in parts]
    facs = [factorize(x.gramian) for x in data]
    movers = [_CellMoments(p, space, BoxRuleKind.GAUSS) for p in parts]
    idx = [np.zeros(len(p.subcells), dtype=int) for p in parts]
    approx = [np.array([mv(c, 0) for c in range(len(p.subcells))]) for p, mv in zip(parts, movers)]
    steps = []
    for it in range(max_iter + 1):
        total = sum(rule_size(s.kind, int(i), p.dim)
                    for p, ix in zip(parts, idx) for s, i in zip(p.subcells, ix))
        res = [worst_case_error(x.xi, a.sum(axis=0), f) for x, a, f in zip(data, approx, facs)]
        steps.append(GlobalStep(it, int(total), [e for e, _ in res]))
        if total >= budget or it == max_iter:
            break
        Rs, deps = [], []
        for p, x, a, (e, v), ix in zip(parts, data, approx, res, idx):
            R, dep = indicators(p, localized_errors(x.cell_moments, a, v), ix)
            Rs.append(R)
            deps.append(dep)
        if all(dep.all() for dep in deps):
            break
        if marking is Marking.SUBCELL:
            best = max(((R[c], -p.subcell_levels[c], -j, -c) for j, (p, R, dep) in
                        enumerate(zip(parts, Rs, deps)) for c in np.flatnonzero(~dep)))
            marked = [(-best[2], -best[3])]
        else:
            lv = {}
            for p, R, dep in zip(parts, Rs, deps):
                for lvl in np.unique(p.subcell_levels[~dep]):
                    mask = (p.subcell_levels == lvl) & ~dep
                    lv[int(lvl)] = lv.get(int(lvl), 0.0) + R[mask].sum()
            lvl = min(lv, key=lambda l: (-lv[l], l))
            marked = [(j, int(c)) for j, (p, dep) in enumerate(zip(parts, deps))
                      for c in np.flatnonzero((p.subcell_levels == lvl) & ~dep)]
        for j, c in marked:
            idx[j][c] += 1
            approx[j][c] = movers[j](c, idx[j][c])
    return steps, idx
