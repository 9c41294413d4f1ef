"""
Positive parts and support projections
======================================

For S = [[lam I, B], [B*, 0]] the positive part S+, the negative part S-
and the projections onto their ranges all have closed forms.  A rank
deficient B is used on purpose: the formulas must respect N(B).
"""

import numpy as np

from blockabs import (
    SLambda,
    neg_part_oracle,
    pos_part_oracle,
    pos_part_slambda,
    supp_neg_part,
    supp_pos_e_plus_estar,
    supp_pos_part,
    supp_slambda,
    support_projection_oracle,
)

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(1)

# rank 1, 3x2
B = np.outer(rng.standard_normal(3), rng.standard_normal(2)).astype(complex)

for lam in (-1.0, 0.0, 2.0):
    s = SLambda(lam, B)
    m = s.matrix()
    errs = [
        np.abs(pos_part_slambda(s) - pos_part_oracle(m)).max(),
        np.abs(supp_slambda(s) - support_projection_oracle(m)).max(),
        np.abs(supp_pos_part(s) - support_projection_oracle(pos_part_oracle(m))).max(),
        np.abs(supp_neg_part(s) - support_projection_oracle(neg_part_oracle(m))).max(),
    ]
    print(f"lam={lam:+.1f}  worst entry error {max(errs):.1e}")

# The support of S+ always has rank dim H for lam > 0, and rank(B) otherwise.
for lam in (-1.0, 0.0, 2.0):
    p = supp_pos_part(SLambda(lam, B))
    print(f"lam={lam:+.1f}  rank of P(S+) = {round(np.trace(p).real)}")

# An idempotent E = [[I, E1], [0, 0]] has E + E* = [[2I, E1], [E1*, 0]],
# which is the same family with lam = 2.  For E1 = 1 the support of
# (E + E*)+ is the line through (1 + sqrt 2, 1).
p = supp_pos_e_plus_estar([[1.0]])
v = np.array([1 + np.sqrt(2), 1.0])
print(p.real)
print(np.outer(v, v) / (v @ v))
