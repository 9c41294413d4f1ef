"""Seeded random generators for property tests and the ``gen`` command.

A :class:`MatrixGenerator` owns its own :class:`numpy.random.Generator`, so
two generators built from the same :class:`GenConfig` produce identical
streams.  Generators are not meant to be shared between threads; create one
per thread.
"""

from dataclasses import dataclass

import numpy as np

from .densela import DEFAULT_TOL, adjoint, block, fro
from .errors import InvalidPairError, PreconditionError
from .krein import CanonicalIdempotent, build_symmetry, canonical_form

__all__ = [
    "GenConfig",
    "MatrixGenerator",
    "gen_matrix",
    "gen_idempotent",
    "gen_admissible_symmetry_pair",
]


@dataclass(frozen=True)
class GenConfig:
    """Parameters of a generator.

    Attributes
    ----------
    seed : int
    dim_range : tuple of int
        Inclusive ``(min, max)`` for randomly drawn dimensions; ``1 <= min
        <= max <= 64``.
    magnitude : float
        Real and imaginary parts of generated entries lie in
        ``[-magnitude, magnitude]``.
    complex_enabled : bool
        If False, generated matrices are real (stored as complex).
    e1_cap : float
        Largest singular value allowed in the corner ``E1`` of a generated
        idempotent; keeps ``(I + E1 E1*)^{-1/2}`` well conditioned.
    e1_floor : float
        Smallest nonzero singular value of ``E1``.  Nonzero singular values
        are kept away from 0 so rank decisions on ``E1`` are clear cut.
    zero_prob : float
        Probability that each singular value of ``E1`` is exactly zero.
    """

    seed: int = 0
    dim_range: tuple = (1, 6)
    magnitude: float = 1.0
    complex_enabled: bool = True
    e1_cap: float = 10.0
    e1_floor: float = 0.2
    zero_prob: float = 0.25

    def __post_init__(self):
        lo, hi = self.dim_range
        if not (1 <= lo <= hi <= 64):
            raise PreconditionError(f"dim_range must satisfy 1 <= min <= max <= 64, got {self.dim_range}")
        if not self.magnitude > 0:
            raise PreconditionError("magnitude must be positive")
        if not 0 < self.e1_floor <= self.e1_cap:
            raise PreconditionError("need 0 < e1_floor <= e1_cap")
        if not 0 <= self.zero_prob <= 1:
            raise PreconditionError("zero_prob must lie in [0, 1]")


class MatrixGenerator:
    """Deterministic source of random test matrices.

    Examples
    --------
    >>> g1, g2 = MatrixGenerator(GenConfig(seed=7)), MatrixGenerator(GenConfig(seed=7))
    >>> bool(np.array_equal(g1.gen_matrix(3, 2), g2.gen_matrix(3, 2)))
    True
    """

    def __init__(self, cfg=None, tol=DEFAULT_TOL):
        self.cfg = GenConfig() if cfg is None else cfg
        self.tol = tol
        self.rng = np.random.default_rng(self.cfg.seed)

    def dim(self):
        lo, hi = self.cfg.dim_range
        return int(self.rng.integers(lo, hi + 1))

    def gen_matrix(self, rows, cols, magnitude=None):
        mag = self.cfg.magnitude if magnitude is None else magnitude
        out = self.rng.uniform(-mag, mag, (rows, cols)).astype(complex)
        if self.cfg.complex_enabled:
            out += 1j * self.rng.uniform(-mag, mag, (rows, cols))
        return out

    def gen_unitary(self, n):
        """Haar-distributed unitary (orthogonal if complex is disabled)."""
        if n == 0:
            return np.zeros((0, 0), dtype=complex)
        z = self.rng.standard_normal((n, n)).astype(complex)
        if self.cfg.complex_enabled:
            z += 1j * self.rng.standard_normal((n, n))
        q, r = np.linalg.qr(z)
        d = np.diagonal(r)
        return q * (d / np.abs(d))

    def gen_subspace(self, n, r):
        """``n x r`` matrix with orthonormal columns."""
        return self.gen_unitary(n)[:, :r]

    def gen_symmetry(self, n, n_minus=None):
        """Random symmetry ``U diag(+-1) U*``; ``n_minus`` fixes the number of -1's."""
        if n_minus is None:
            signs = self.rng.choice([-1.0, 1.0], size=n)
        else:
            signs = np.array([-1.0] * n_minus + [1.0] * (n - n_minus))
        u = self.gen_unitary(n)
        j = (u * signs) @ adjoint(u)
        return (j + adjoint(j)) / 2

    def gen_psd(self, n, rank=None):
        rank = n if rank is None else rank
        x = self.gen_matrix(n, rank)
        return x @ adjoint(x)

    def gen_corner(self, rows, cols):
        """``E1`` with singular values in ``[e1_floor, e1_cap]`` or exactly 0.

        Singular values occasionally repeat, to exercise clustered spectra.
        """
        p = min(rows, cols)
        hi = min(self.cfg.e1_cap, max(self.cfg.e1_floor, 3 * self.cfg.magnitude))
        sv = self.rng.uniform(self.cfg.e1_floor, hi, p)
        if p > 1 and self.rng.random() < 0.2:
            sv[1] = sv[0]
        sv[self.rng.random(p) < self.cfg.zero_prob] = 0.0
        u = self.gen_unitary(rows)[:, :p]
        v = self.gen_unitary(cols)[:, :p]
        return (u * sv) @ adjoint(v)

    def gen_idempotent(self, dim, rank):
        """``W [[I, E1], [0, 0]] W*`` with a random unitary ``W``."""
        if not 0 <= rank <= dim:
            raise PreconditionError(f"need 0 <= rank <= dim, got rank={rank}, dim={dim}")
        s = dim - rank
        e1 = self.gen_corner(rank, s)
        core = block([[np.eye(rank), e1], [np.zeros((s, rank)), np.zeros((s, s))]])
        w = self.gen_unitary(dim)
        return w @ core @ adjoint(w)

    def gen_admissible_symmetry_pair(self, c, positive=False, cluster_rtol=1e-8):
        """Random ``(J1, J2)`` with ``J1 E1 + E1 J2 = 0`` for ``c.E1``.

        With ``E1 = U diag(sv) V*``, each cluster of equal nonzero singular
        values gets one sign ``eps``: ``J1`` is ``eps`` on the matching left
        singular vectors and ``J2`` is ``-eps`` on the right ones.  ``N(E1*)``
        and ``N(E1)`` receive free random symmetries.  ``positive=True``
        forces ``J1 = I``.
        """
        if not isinstance(c, CanonicalIdempotent):
            c = canonical_form(c, self.tol)
        e1 = c.E1
        r, s = e1.shape
        if r == 0 or s == 0:
            j1 = np.eye(r, dtype=complex) if positive else self.gen_symmetry(r)
            return j1, self.gen_symmetry(s)
        u, sv, vh = np.linalg.svd(e1)
        v = adjoint(vh)
        nz = sv > cluster_rtol * max(sv[0], 1.0)
        p = int(nz.sum())
        signs = np.ones(p)
        start = 0
        while start < p:
            stop = start + 1
            while stop < p and sv[stop - 1] - sv[stop] <= cluster_rtol * sv[start]:
                stop += 1
            if not positive:
                signs[start:stop] = self.rng.choice([-1.0, 1.0])
            start = stop
        up, u0 = u[:, :p], u[:, p:]
        vp, v0 = v[:, :p], v[:, p:]
        free1 = np.eye(r - p) if positive else self.gen_symmetry(r - p)
        free2 = self.gen_symmetry(s - p)
        j1 = (up * signs) @ adjoint(up) + u0 @ free1 @ adjoint(u0)
        j2 = -(vp * signs) @ adjoint(vp) + v0 @ free2 @ adjoint(v0)
        j1, j2 = (j1 + adjoint(j1)) / 2, (j2 + adjoint(j2)) / 2
        if fro(j1 @ e1 + e1 @ j2) > self.tol.compare_tol * (1.0 + fro(e1)):
            raise InvalidPairError("singular values too close to separate; draw another E")
        return j1, j2

    def gen_j_projection_pair(self, dim=None, rank=None, positive=False):
        """Random idempotent ``E`` and a symmetry ``J`` with ``E = J E* J``."""
        dim = self.dim() if dim is None else dim
        rank = int(self.rng.integers(0, dim + 1)) if rank is None else rank
        e = self.gen_idempotent(dim, rank)
        c = canonical_form(e, self.tol)
        j1, j2 = self.gen_admissible_symmetry_pair(c, positive=positive)
        return e, build_symmetry(c, j1, j2, self.tol)


# One-shot helpers: each call starts a fresh generator from cfg.seed.


def gen_matrix(cfg, rows, cols):
    """Random ``rows x cols`` matrix; identical output for identical `cfg`."""
    return MatrixGenerator(cfg).gen_matrix(rows, cols)


def gen_idempotent(cfg, dim, rank):
    return MatrixGenerator(cfg).gen_idempotent(dim, rank)


def gen_admissible_symmetry_pair(c, cfg, positive=False):
    return MatrixGenerator(cfg).gen_admissible_symmetry_pair(c, positive=positive)
