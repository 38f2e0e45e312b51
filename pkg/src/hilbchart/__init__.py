"""Hilbert-scheme charts as ideals in the entries of commuting matrices."""

from .charts import (
    AlgebraPresentation,
    ChartIdeal,
    ChartSpec,
    SectionBeta,
    adjoin_variable_chart,
    build_chart,
    generic_chart_normal_form,
    kernel_membership,
)
from .errors import InconclusiveError, PreconditionError, ResourceError
from .groebner import GroebnerBasis, eliminate, groebner_basis, is_free_on, normal_form, solved_form
from .ring import GF, QQ, ParseError, Polynomial, PolyRing, Var

__all__ = [
    "AlgebraPresentation",
    "ChartIdeal",
    "ChartSpec",
    "GF",
    "GroebnerBasis",
    "InconclusiveError",
    "ParseError",
    "PolyRing",
    "Polynomial",
    "PreconditionError",
    "QQ",
    "ResourceError",
    "SectionBeta",
    "Var",
    "adjoin_variable_chart",
    "build_chart",
    "eliminate",
    "generic_chart_normal_form",
    "groebner_basis",
    "is_free_on",
    "kernel_membership",
    "normal_form",
    "solved_form",
]
