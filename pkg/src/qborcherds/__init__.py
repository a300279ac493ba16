"""Exact computer algebra for quantized Borcherds superalgebras."""

from .algebra import Algebra, AlgebraElement, TensorElement
from .center import casimir_rank1, harish_chandra, is_central, xi_z_lambda
from .datum import CartanDatum, parse_weight, sample_datum
from .errors import DatumAxiomError, DepthExceeded, DomainError, NotExhausted, ParseError
from .halves import Registry
from .killing import KillingForm
from .modules import build_irreducible, build_verma, character_formula
from .rmatrix import RMatrix, r_operator, ybe_check
from .scalars import RationalFunction

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "AlgebraElement",
    "TensorElement",
    "CartanDatum",
    "RationalFunction",
    "Registry",
    "KillingForm",
    "RMatrix",
    "build_verma",
    "build_irreducible",
    "character_formula",
    "casimir_rank1",
    "is_central",
    "harish_chandra",
    "xi_z_lambda",
    "r_operator",
    "ybe_check",
    "parse_weight",
    "sample_datum",
    "DatumAxiomError",
    "DepthExceeded",
    "DomainError",
    "NotExhausted",
    "ParseError",
]
