"""Exact construction and certification of self-complementary strongly
regular Cayley graphs over finite abelian groups."""

__version__ = "0.1.0"

from .groups import AbelianGroup, GroupAutomorphism, parse_group_spec
from .fields import FiniteField, make_field
from .graphs import DenseGraph, SrgParams, check_srg, complement, diameter
from .cayley import ConnectionSet, build_cayley, validate_connection_set
from .families import davis, paley, paley_type_order_feasible, peisert
from .iso import are_isomorphic, is_self_complementary

__all__ = [
    "AbelianGroup",
    "GroupAutomorphism",
    "parse_group_spec",
    "FiniteField",
    "make_field",
    "DenseGraph",
    "SrgParams",
    "check_srg",
    "complement",
    "diameter",
    "ConnectionSet",
    "build_cayley",
    "validate_connection_set",
    "paley",
    "peisert",
    "davis",
    "paley_type_order_feasible",
    "are_isomorphic",
    "is_self_complementary",
    "__version__",
]
