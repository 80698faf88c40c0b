"""Exact-arithmetic constructions and classification of the birational
involutions of the projective plane: de Jonquieres involutions of every
degree, the Geiser involution on 7 general points and the Bertini involution
on 8, together with the Picard-lattice computations (minimality test,
exceptional-class enumeration, structure labels) behind the classification.
"""

from .errors import ExtractionError, IndeterminacyError, ValidationError
from .exactpoly import (
    BForm,
    HPoly,
    Rat,
    bform_discriminant,
    bform_gcd,
    hpoly_eval,
    hpoly_gcd,
    is_squarefree,
    kernel_basis,
    matrix_rank,
    resultant,
    resultant_univariate,
)
from .projmaps import (
    INF,
    ProjPoint,
    RationalMap,
    compose,
    conjugate,
    cross_ratio,
    harmonic_conjugate,
    is_identity,
    is_involution,
)
from .involutions import (
    BertiniInvolution,
    DJData,
    GeiserInvolution,
    InvolutionRecord,
    PointConfig,
    bertini_eval,
    cubic_system,
    dj_from_conic,
    dj_involution,
    geiser_eval,
    geiser_fixed_sextic,
    make_dj_instance,
    make_point_config,
    sample_points,
    sextic_system,
    singular_fibre_count,
    validate_dj,
)
from .fixedcurve import (
    FixedCurveInvariant,
    classify_involution,
    fixed_locus,
    invariant_of,
    plane_genus,
)
from .picard import (
    ConicBundleModel,
    LatticeInvolution,
    PicLattice,
    anti_reflection_in_k,
    classify_pair,
    elementary_transformation,
    exceptional_classes,
    exceptional_classes_bruteforce,
    fixed_rank,
    is_minimal,
    make_lattice,
    quadric_lattice,
    reflection_through,
    swap_involution,
)
from . import configs

__version__ = "0.1.0"
