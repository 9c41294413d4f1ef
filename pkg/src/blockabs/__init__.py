"""Closed-form absolute values, positive parts and support projections of
Hermitian 2x2 block matrices, and J-projections in finite-dimensional Krein
spaces.

Submodules
----------
densela
    Dense linear algebra kernel and eigendecomposition oracles.
absval
    ``|Q|`` for ``Q = [[lam I, B], [B*, mu I]]``.
support
    Positive parts and support projections of ``[[lam I, B], [B*, 0]]``.
krein
    Symmetries ``J`` with ``E = J E* J``, minimal positive symmetry, the
    J-projection onto a subspace and the positive/negative split.
testgen
    Seeded random generators.
cli
    Command-line front end (``blockabs``).
"""

from .absval import BlockSymm, CaseTag, abs_qlm, abs_unit_block, case_of, sqrt_2x2, sqrt_shifted_block
from .densela import DEFAULT_TOL, Tolerance, abs_oracle, pos_part_oracle, neg_part_oracle, support_projection_oracle
from .errors import (
    DimensionError,
    InvalidPairError,
    KernelError,
    NoJProjectionError,
    NotCommutingError,
    NotFiniteError,
    NotHermitianError,
    NotIdempotentError,
    NotJProjectionError,
    NotPartialIsometryError,
    NotPositiveError,
    NotSymmetryError,
    PreconditionError,
    RankInstabilityError,
    SingularError,
)
from .krein import (
    CanonicalIdempotent,
    build_symmetry,
    canonical_form,
    decompose_pos_neg,
    extract_symmetry_pair,
    is_j_positive,
    is_j_projection,
    min_symmetry,
    positivity_via_min_symmetry,
    positivity_via_sandwich,
    projection_from_subspace,
)
from .support import (
    SLambda,
    neg_part_s1,
    neg_part_slambda,
    pos_part_e_plus_estar,
    pos_part_slambda,
    supp_commuting_pair,
    supp_sqrt_block,
    supp_neg_part,
    supp_neg_part_s1,
    supp_pos_e_plus_estar,
    supp_pos_part,
    supp_s1,
    supp_slambda,
    transport_support,
)
from .testgen import GenConfig, MatrixGenerator

__version__ = "0.1.0"
