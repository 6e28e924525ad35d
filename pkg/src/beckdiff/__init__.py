"""Beck modules, Beck torsors and Kähler differentials, checked by computation.

The package decides formal unramifiedness of finitely presented algebras
through the vanishing of the module of Kähler differentials, and
cross-checks that verdict against lifting problems for Beck torsors on
finite rings and finite groups.
"""

from .beck import (
    BeckModule,
    KahlerModule,
    TorsorCandidate,
    adjunction_cardinalities,
    kahler,
    lift_check,
    pullback_module,
    torsor_fiber_bijection,
    trivial_extension,
    unramified_check,
    verify_torsor,
)
from .exactnum import GF, QQ, ZZ, Scalar
from .fpalg import (
    AlgebraHom,
    AlgebraPresentation,
    FiniteModule,
    FiniteRingTable,
    HomSet,
    TableMap,
    enumerate_homs,
    integer_ring_mod,
    kernel_of_surjection,
    product_ring,
    to_finite_table,
)
from .grpbeck import (
    FiniteGroupTable,
    GModuleTable,
    GroupExtensionCandidate,
    enumerate_group_homs,
    group_kahler_rank,
    group_lift_check,
    semidirect_product,
    validate_group,
    verify_group_torsor,
)
from .modgb import FpModulePresentation, FreeModuleElement, is_zero_module, module_buchberger, module_normal_form
from .polyring import (
    DegRevLex,
    Lex,
    Limits,
    Polynomial,
    PositionOverTerm,
    buchberger,
    jacobian,
    limits_scope,
    normal_form,
    parse_poly,
    quotient_basis,
)

__version__ = "0.1.0"
