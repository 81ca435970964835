"""Subspace codes, rank-metric codes and q-analog designs over finite fields."""

from .errors import CapExceeded, ParseError, QSpaceError
from .gf import Extension, FieldElement, FieldSpec, field_new, gf, parse_descriptor
from .subspace import (
    Subspace,
    SubspaceCode,
    d_G,
    d_I,
    d_S,
    dual,
    enumerate_grassmannian,
    enumerate_projective,
    gaussian_binomial,
    intersection_dim,
    min_distance,
    rref,
    span,
)
from .rank_metric import FDRMCode, FerrersDiagram, RankCode, d_R, fdrm_construct, gabidulin, lift, lift_code
from .construct import (
    SkeletonCode,
    augment_greedy,
    choose_Q,
    cyclic_orbit_code,
    lifted_mrd_code,
    multilevel,
    partial_spread,
    puncture_code,
    spread,
)
from .bounds import BoundResult, best_bounds, emit_table
from .designs import complements_census, coverage, cover_check, verify_std
from .projections import EquationSystem, build_system, feasibility_report, solve

__version__ = "0.1.0"

__all__ = [
    "BoundResult", "CapExceeded", "EquationSystem", "Extension", "FDRMCode", "FerrersDiagram",
    "FieldElement", "FieldSpec", "ParseError", "QSpaceError", "RankCode", "SkeletonCode", "Subspace",
    "SubspaceCode", "augment_greedy", "best_bounds", "build_system", "choose_Q", "complements_census",
    "cover_check", "coverage", "cyclic_orbit_code", "d_G", "d_I", "d_R", "d_S", "dual", "emit_table",
    "enumerate_grassmannian", "enumerate_projective", "fdrm_construct", "feasibility_report",
    "field_new", "gabidulin", "gaussian_binomial", "gf", "intersection_dim", "lift", "lift_code",
    "lifted_mrd_code", "min_distance", "multilevel", "parse_descriptor", "partial_spread",
    "puncture_code", "rref", "solve", "span", "spread", "verify_std",
]
