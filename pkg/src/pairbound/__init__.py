"""Well-conditioned 2x2 submatrices of n x 2 orthonormal-column matrices.

Every ``A`` with ``A^T A = I`` has two rows whose 2x2 submatrix ``A_ij``
satisfies ``||A_ij^{-1}||_2 <= sqrt(n)``, with equality only for a
three-cluster family.  This package certifies such a pair, builds and
recognizes the equality family, and checks the spectral facts behind the
bound.
"""

from . import _backend
from .errors import (
    ClosureError,
    CompositionError,
    ConvergenceError,
    DegenerateDirectionError,
    DegeneratePerimeterError,
    DimensionError,
    InvariantViolation,
    NegativityError,
    OrthonormalityError,
    PairboundError,
    RankDeficiencyError,
)
from .extremal import (
    ClusterStructure,
    PolygonInstance,
    construct_extremal,
    detect_equality,
    polygon_defect,
    polygon_equality_classify,
)
from .selector import (
    PairCertificate,
    ProofPath,
    brute_force_best,
    certify_pair,
    gram_lambda2,
    pair_condition_lhs,
)
from .spectral import (
    SymMatrix,
    SymmetricSpectrum,
    build_G,
    build_M,
    eigen,
    support_components,
)
from .stiefel import (
    RowSquares,
    StiefelMatrix,
    reorthonormalize,
    rotate_right,
    row_squares,
    sample_haar,
    validate,
)
from .vec2kernels import (
    Mat2,
    Svd2,
    Vec2,
    right_singular_direction,
    sigma2_of_pair,
    sigma2_sq_polygon,
    sqrt_principal,
    square,
    svd2,
)

__version__ = "0.1.0"
BACKEND = _backend.NAME
