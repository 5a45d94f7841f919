"""Octree cut-cell quadrature with worst-case error driven point distribution."""

from .error_estimator import (DEFAULT_K, ErrorReport, ExactData, Norm, PolynomialSpace,
                              evaluate_scheme, exact_data, exact_moments, gramian,
                              indicators, localized_errors, worst_case_error)
from .errors import (ConditioningError, CutQuadError, DegenerateCutError, InvalidArgumentError,
                     InvalidGeometryError, NotCutError, SequenceDepletedError)
from .geometry import (BoxCell, Classification, LevelSetField, classify_cell, field_from_spec,
                       make_ellipsoid_exclusion, make_halfspace)
from .octree import Partition, partition_element, partition_volume, subcell_census
from .optimizer import (Marking, OptimizationTrace, Strategy, equal_order_sweep, optimize,
                        rule_of_thumb, rule_of_thumb_degrees)
from .quadrature import (BoxRuleKind, QuadratureScheme, assemble_scheme, box_rule, gauss_1d,
                         reference_scheme, simplex_rule)
from .tessellation import CellKind, SimplexCell, tessellate

__version__ = "0.1.0"
