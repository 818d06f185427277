"""Rational homotopy sectional-category invariants of Sullivan models.

Exact computations over Q: cohomology of CDGAs and DG modules, Poincaré
duality data, explicit module retractions of CDGA morphisms, and the
invariants nil ker ∪, e₀, htc and mtc built on them.
"""

from .cdga import (
    CdgaMorphism,
    DegreewiseIdeal,
    FreeCDGA,
    ModelError,
    Poly,
    QuotientCDGA,
    SullivanModel,
    TensorSquare,
    ideal_power_basis,
    quotient_by_ideal,
    tensor_square,
    word_length_quotient,
)
from .cohomology import cohomology, induced_map, is_injective_on_H
from .invariants import (
    htc,
    inequality_audit,
    mtc_attempt,
    nil_ker,
    nil_ker_cup,
    toomer_e0,
    verify_theorem,
)
from .modelfile import emit_model, load_model, parse_model
from .poincare import build_duality_morphisms, choose_omega_complement, detect_pd
from .retraction import (
    build_homotopy_retraction,
    lift_retraction,
    semifree_factorization,
    surjective_trick,
    verify_retraction,
)

__version__ = "0.1.0"

__all__ = [
    "cohomology",
    "induced_map",
    "is_injective_on_H",
    "emit_model",
    "load_model",
    "parse_model",
    "build_duality_morphisms",
    "choose_omega_complement",
    "detect_pd",
    "CdgaMorphism",
    "DegreewiseIdeal",
    "FreeCDGA",
    "ModelError",
    "Poly",
    "QuotientCDGA",
    "SullivanModel",
    "TensorSquare",
    "ideal_power_basis",
    "quotient_by_ideal",
    "tensor_square",
    "word_length_quotient",
    "htc",
    "inequality_audit",
    "mtc_attempt",
    "nil_ker",
    "nil_ker_cup",
    "toomer_e0",
    "verify_theorem",
    "build_homotopy_retraction",
    "lift_retraction",
    "semifree_factorization",
    "surjective_trick",
    "verify_retraction",
]
