"""
J-projections
=============

An idempotent E is a J-projection when E = J E* J for a symmetry J
(J = J* = J^-1).  E is J-positive when JE >= 0.  This script walks through
the smallest symmetry that makes E positive, the two positivity tests, the
projection attached to a subspace and the split E = Q + R.
"""

import numpy as np

from blockabs import (
    GenConfig,
    MatrixGenerator,
    NoJProjectionError,
    build_symmetry,
    canonical_form,
    decompose_pos_neg,
    is_j_positive,
    min_symmetry,
    positivity_via_min_symmetry,
    positivity_via_sandwich,
    projection_from_subspace,
)
from blockabs.densela import loewner_geq

np.set_printoptions(precision=4, suppress=True)
g = MatrixGenerator(GenConfig(seed=7, dim_range=(4, 6)))

# An oblique idempotent.
E = g.gen_idempotent(5, 2)
c = canonical_form(E)
print("rank", c.rank, " ||E1|| =", np.linalg.norm(c.E1, 2))

# The smallest symmetry with JE >= 0.
Jmin = min_symmetry(E)
print("J_min is a symmetry:", np.allclose(Jmin @ Jmin, np.eye(5)))
print("J_min E >= 0:", is_j_positive(E, Jmin))

# Any other positive symmetry for E dominates J_min.
j1, j2 = g.gen_admissible_symmetry_pair(c, positive=True)
J = build_symmetry(c, j1, j2)
print("another positive J >= J_min:", loewner_geq(J, Jmin))

# For a mixed-sign J each test returns (JE >= 0, criterion); the two entries agree.
E2, J2 = g.gen_j_projection_pair(5, 3)
print("positivity tests:", positivity_via_min_symmetry(E2, J2), positivity_via_sandwich(E2, J2))

# E2 splits into a J-positive and a J-negative idempotent.
Q, R = decompose_pos_neg(E2, J2)
print("ranks of Q, R:", np.linalg.matrix_rank(Q, 1e-8), np.linalg.matrix_rank(R, 1e-8))
print("QR = 0:", np.allclose(Q @ R, 0), " Q + R = E:", np.allclose(Q + R, E2))

# The J-projection onto a subspace exists iff J compressed to it is invertible.
M = np.array([[1.0], [0.0]])
house = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2)
print(projection_from_subspace(M, house).real)
try:
    projection_from_subspace(M, np.array([[0.0, 1.0], [1.0, 0.0]]))
except NoJProjectionError as exc:
    print("swap:", exc)
