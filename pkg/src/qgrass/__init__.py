"""qgrass: exact Grassmannian combinatorics over small finite fields.

Regular and irregular plane sets, twisted bilinear forms, semilinear maps,
transformation classification, and an exhaustive desk-scale verification
harness, all over GF(q) with q <= 16.
"""

from .gf import Field, Automorphism, field, SUPPORTED_ORDERS, UnsupportedOrderError
from .linalg import Mat, EchelonBasis, ShapeError, SingularMatrixError
from .grassmann import (
    GrassmannMap,
    Grassmannian,
    PlaneSet,
    Space,
    Subspace,
    TooLargeError,
    distance,
    gaussian_binomial,
    geodesic,
    incidence_set,
    join,
    maximal_adjacent_families,
    meet,
)
from .forms import (
    BilinearForm,
    FormPredicates,
    ReflexiveClass,
    SymplecticBasis,
    annihilator,
    classify_reflexive,
    dot_form,
    form_map,
    form_predicates,
    orth_complement,
    restricted_gram,
    singular_restriction_planes,
    standard_symplectic,
    symplectic_basis,
)
from .maps import SemilinearMap, induced_map, induces, pullback_form
from .regularity import (
    AxisProfile,
    AxisRecord,
    CoordinateSystem,
    NotRegularError,
    all_coordinate_systems,
    associated_systems,
    degree,
    exactness_threshold,
    hypergraph_view,
    is_exact,
    is_maximal_regular,
    is_regular,
    profile,
    restrict,
)
from .irregularity import (
    Characteristics,
    DeficientConstruction,
    DeficientDualConstruction,
    NotIrregularError,
    Similarity,
    are_similar,
    characteristics,
    complete_to_maximal_irregular,
    completion_witness,
    contains_maximal_regular,
    deficient_irregular,
    deficient_irregular_dual,
    is_irregular,
    is_maximal_irregular,
    planes_cohyperplanar,
    planes_meeting,
    restricted_status,
)
from .reconstruction import (
    AutomorphismMismatchError,
    ClassificationResult,
    NotDistancePreservingError,
    NotIndependencePreservingError,
    NotRegularTransformationError,
    chow_classify,
    ftpg_reconstruct,
    is_distance_preserving,
    is_independence_preserving,
    is_regular_transformation,
    regular_classify,
)

__version__ = "0.1.0"
