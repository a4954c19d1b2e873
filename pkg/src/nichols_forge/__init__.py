"""Exact computations with pointed Hopf algebras of diagonal type."""

from __future__ import annotations

from .abgroup import Bicharacter, GroupSpec, GroupTooLarge, Subgroup
from .double import DoubleEngine, PointedEngine, build, central_grouplikes, kernel_conditions_report, fl_setup, center_split_report
from .ideals import QuotientEngine, ThinIdealDatum, dichotomy_report, enumerate_thin, quotient_build, validate
from .pairing import DegreeOverflow, NicholsBasis, nichols_dims, tau_words
from .scalars import CyclotomicNumber, make, root_of_unity
from .triangular import (
    Carrier,
    GelakiDatum,
    build_HD,
    canonical_rmatrix,
    enumerate_structures,
    minimality_check,
    validate_gelaki,
    verify_quasitriangular,
    verify_triangular,
)
from .yd import DoubleDatum

__all__ = [
    "Bicharacter",
    "Carrier",
    "CyclotomicNumber",
    "DegreeOverflow",
    "DoubleDatum",
    "DoubleEngine",
    "GelakiDatum",
    "GroupSpec",
    "GroupTooLarge",
    "NicholsBasis",
    "PointedEngine",
    "QuotientEngine",
    "Subgroup",
    "ThinIdealDatum",
    "build",
    "build_HD",
    "canonical_rmatrix",
    "central_grouplikes",
    "kernel_conditions_report",
    "dichotomy_report",
    "enumerate_structures",
    "enumerate_thin",
    "fl_setup",
    "make",
    "minimality_check",
    "nichols_dims",
    "quotient_build",
    "root_of_unity",
    "tau_words",
    "center_split_report",
    "validate",
    "validate_gelaki",
    "verify_quasitriangular",
    "verify_triangular",
]
