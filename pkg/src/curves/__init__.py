"""
Curvas: tablas supersingulares, ley de grupo y especializaciones.
"""

from .group_law import WeierstrassGroup, has_exact_order, x_ladder, x_multiple
from .specializer import (
    CurveSpec,
    Specializer,
    classify,
    count_points,
    frobenius_data,
    frobenius_unit_root,
    make_curve,
    torsion_tower,
    twist,
)
from .supersingular import (
    BComparison,
    FssRoutes,
    SupersingularTable,
    compare_B_with_fss,
    e3_e4,
    fss_poly,
    fss_routes,
    hasse_poly,
    supersingular_j_set,
    supersingular_table,
)

__all__ = [
    "WeierstrassGroup",
    "has_exact_order",
    "x_ladder",
    "x_multiple",
    "CurveSpec",
    "Specializer",
    "classify",
    "count_points",
    "frobenius_data",
    "frobenius_unit_root",
    "make_curve",
    "torsion_tower",
    "twist",
    "BComparison",
    "FssRoutes",
    "SupersingularTable",
    "compare_B_with_fss",
    "e3_e4",
    "fss_poly",
    "fss_routes",
    "hasse_poly",
    "supersingular_j_set",
    "supersingular_table",
]
