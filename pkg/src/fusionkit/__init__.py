"""Fusion rings, their gradings and modular data, with exact arithmetic throughout."""
from .constructors import (
    GTYWitness,
    fibonacci_ring,
    group_ring,
    is_generalized_TY,
    ising_ring,
    tambara_yamagami_ring,
    trivial_ring,
    zq_extension_witness,
)
from .exactnum import AlgebraicReal, Cyclotomic
from .groups import FiniteGroup, abelian_group, cyclic, parse_group
from .modular import (
    MetricGroup,
    ModularData,
    ising_modular_data,
    modular_product,
    muger_center,
    muger_centralizer,
    pointed_modular_from_metric_group,
    quadratic_forms,
    semion_modular_data,
    validate_modular,
    verlinde_coefficients,
)
from .ring import (
    FusionRing,
    Integrality,
    TypeSignature,
    Violation,
    classify_integrality,
    fpdim_object,
    fpdim_ring,
    fpdims,
    fusion_matrix,
    is_commutative,
    is_pointed,
    type_signature,
    validate,
)
from .structure import (
    Grading,
    GradingError,
    Subring,
    adjoint_subring,
    all_subrings,
    commutator_subring,
    deligne_product,
    factorizations,
    faithful_gradings,
    gradings_by_group,
    nilpotency_series,
    orbit_stabilizer,
    pointed_part,
    universal_grading,
)

__version__ = "0.1.0"
