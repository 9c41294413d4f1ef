"""
Absolute value of a Hermitian block matrix
==========================================

Q = [[lam I, B], [B*, mu I]] has a closed-form absolute value |Q| whose
shape depends on how lam * mu compares with ||B||^2.  This walk-through
builds one example per regime and checks each against a brute-force
eigendecomposition.
"""

import numpy as np

from blockabs import BlockSymm, CaseTag, abs_oracle, abs_qlm

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(0)

# A 3x2 block, so H has dimension 3 and K dimension 2.
B = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
norm_sq = np.linalg.norm(B, 2) ** 2
print(f"||B||^2 = {norm_sq:.4f}")

# One (lam, mu) pair per regime.
pairs = {
    "both zero": (0.0, 0.0),
    "lam only": (1.5, 0.0),
    "mu only": (0.0, -0.7),
    "lam mu above ||B||^2": (2.0, norm_sq),
    "lam mu negative": (1.0, -2.0),
    "lam mu inside (0, ||B||^2)": (1.0, 0.4 * norm_sq),
}

for label, (lam, mu) in pairs.items():
    q = BlockSymm(lam, mu, B)
    absq, tag = abs_qlm(q)
    dev = np.linalg.norm(absq - abs_oracle(q.matrix()))
    print(f"{label:28s} -> {tag!s:20s} deviation from oracle {dev:.1e}")

# The closed form is exact up to rounding, and |Q|^2 = Q^2.
absq, _ = abs_qlm(BlockSymm(1.0, 0.4 * norm_sq, B))
q = BlockSymm(1.0, 0.4 * norm_sq, B).matrix()
print("||Q|^2 - Q^2| =", np.linalg.norm(absq @ absq - q @ q))

# Scaling: |Q(lam, mu, B)| = |lam| |Q(1, mu/lam, B/lam)|.
lam, mu = -2.5, -0.3
left, _ = abs_qlm(BlockSymm(lam, mu, B))
right, _ = abs_qlm(BlockSymm(1.0, mu / lam, B / lam))
print("scaling law holds:", np.allclose(left, abs(lam) * right))

# The scalar example: [[1, 1], [1, 0]] has |Q| = [[3, 1], [1, 2]] / sqrt(5).
absq, tag = abs_qlm(BlockSymm(1.0, 0.0, [[1.0]]))
assert tag is CaseTag.LambdaOnly
print(absq.real * np.sqrt(5))
