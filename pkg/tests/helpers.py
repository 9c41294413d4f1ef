"""Instance generators and comparison helpers shared by the tests."""

import numpy as np

from blockabs.absval import BlockSymm, CaseTag
from blockabs.densela import adjoint, fro
from blockabs.testgen import GenConfig, MatrixGenerator


def gen(seed, **kw):
    kw.setdefault("dim_range", (1, 6))
    return MatrixGenerator(GenConfig(seed=seed, **kw))


def entrywise_rel(x, y):
    """``max |x - y| / (1 + max |y|)``."""
    x, y = np.asarray(x), np.asarray(y)
    if x.size == 0:
        return 0.0
    return float(np.max(np.abs(x - y)) / (1.0 + np.max(np.abs(y))))


def rel(x, y, scale=None):
    scale = y if scale is None else scale
    return fro(np.asarray(x) - np.asarray(y)) / (1.0 + fro(scale))


def random_b(g, m=None, k=None):
    """Random ``m x k`` block; a third of the draws are rank deficient."""
    m = g.dim() if m is None else m
    k = g.dim() if k is None else k
    u = g.rng.random()
    if u < 1 / 3 and min(m, k) > 1:
        r = int(g.rng.integers(1, min(m, k)))
        return g.gen_matrix(m, r) @ g.gen_matrix(r, k)
    if u < 0.4:
        return np.zeros((m, k), dtype=complex)
    return g.gen_matrix(m, k)


def _nonzero(g, lo=0.1, hi=3.0):
    return float(g.rng.choice([-1.0, 1.0]) * g.rng.uniform(lo, hi))


def random_block_symm(g, tag):
    """A ``BlockSymm`` that falls in the case `tag`."""
    while True:
        b = random_b(g)
        nsq = np.linalg.norm(b, 2) ** 2
        if tag is CaseTag.BothZero:
            return BlockSymm(0.0, 0.0, b)
        if tag is CaseTag.LambdaOnly:
            return BlockSymm(_nonzero(g), 0.0, b)
        if tag is CaseTag.MuOnly:
            return BlockSymm(0.0, _nonzero(g), b)
        lam = _nonzero(g)
        if tag is CaseTag.ProductNegative:
            return BlockSymm(lam, -np.sign(lam) * abs(_nonzero(g)), b)
        if tag is CaseTag.ProductAboveNormSq:
            # occasionally sit exactly on the boundary lam mu = ||B||^2
            factor = 1.0 if g.rng.random() < 0.15 else g.rng.uniform(1.0, 3.0)
            mu = nsq * factor / lam if nsq > 0 else np.sign(lam) * abs(_nonzero(g))
            return BlockSymm(lam, mu, b)
        if tag is CaseTag.ProductInsideNormSq:
            if nsq < 1e-6:
                continue
            return BlockSymm(lam, nsq * g.rng.uniform(0.02, 0.98) / lam, b)
        raise ValueError(tag)


def random_lambda(g, sign):
    return 0.0 if sign == 0 else sign * float(g.rng.uniform(0.1, 3.0))


def orthonormal_complement(m):
    u, _, _ = np.linalg.svd(m)
    return u[:, m.shape[1]:]


def is_projector(p, tol):
    return fro(p @ p - p) <= tol * (1 + fro(p)) and fro(p - adjoint(p)) <= tol * (1 + fro(p))
