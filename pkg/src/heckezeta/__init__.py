"""Twisted Selberg zeta functions of Hecke triangle groups via transfer operators."""

from .errors import (BracketError, ContourError, HeckeError, NotHyperbolicError,
                     NumericalRegimeError, ParameterError, PoleError, RegimeError,
                     ResourceLimitError)
from .group import (GroupWord, MoebiusMap, UnitaryRep, character_rep, enumerate_primitive_classes,
                    geodesic_length, hull_endpoint, induce_from_index2, sign_rep, trivial_rep)
from .transfer import DiscretizationParams, build_closed, build_direct, fredholm_det
from .zeta import ZetaQuery, euler_product, factorization_check, growth_scan, zeta_eval

__version__ = "0.1.0"
