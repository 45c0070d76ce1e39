"""
Motor de polinomios de división y formas de Frobenius (θ, η).
"""

from .division_poly import (
    DivPolyTable,
    SigmaPoly,
    division_poly,
    get_table,
    mult_by_m_x,
    reduce_mod_p,
    reset_tables,
    sigma_poly,
)
from .frobenius_form import (
    CRelation,
    EtaData,
    ThetaData,
    check_budget,
    check_c_relation,
    estimate_size,
    extract_eta,
    extract_theta,
)

__all__ = [
    "DivPolyTable",
    "SigmaPoly",
    "division_poly",
    "get_table",
    "mult_by_m_x",
    "reduce_mod_p",
    "reset_tables",
    "sigma_poly",
    "CRelation",
    "EtaData",
    "ThetaData",
    "check_budget",
    "check_c_relation",
    "estimate_size",
    "extract_eta",
    "extract_theta",
]
