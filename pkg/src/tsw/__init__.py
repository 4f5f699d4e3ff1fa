"""Exact surgery formulas for refined torsion and Seiberg-Witten invariants.

The package computes, from a framed oriented link in an integral
homology sphere together with the Conway polynomials of its sublinks,
the refined Reidemeister torsion, the refined Alexander polynomial and
the Seiberg-Witten function of the surgered 3-manifold, all in exact
arithmetic.
"""

__version__ = "0.1.0"

from .linkdata import (ConwayTable, FramedLink, canonical_charge,
                       conway_table_validate, nabla_normalized,
                       split_coefficients, validate_charge)
from .diagram import (builtin_link, builtin_links, diagram_table,
                      fox_alexander, parse_pd, skein_conway)
from .surgery import (cross_check, delta, duality_check, det0,
                      euler_classes, orientation_sign, surgered_homology,
                      tau, tau_character)
from .sw import (sw_all, sw_split_table, sw_value, torsion_duality_check,
                 torsion_function)

__all__ = [
    "ConwayTable", "FramedLink", "canonical_charge",
    "conway_table_validate", "nabla_normalized", "split_coefficients",
    "validate_charge", "builtin_link", "builtin_links", "diagram_table",
    "fox_alexander", "parse_pd", "skein_conway", "cross_check", "delta",
    "duality_check", "det0", "euler_classes", "orientation_sign",
    "surgered_homology", "tau", "tau_character", "sw_all",
    "sw_split_table", "sw_value", "torsion_duality_check",
    "torsion_function",
]
