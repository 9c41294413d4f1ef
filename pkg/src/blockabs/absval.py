"""Absolute values of the block operator matrices ``Q = [[lam I, B], [B*, mu I]]``.

The closed forms are evaluated in the original ``H (+) K`` coordinates.
Where the derivation only identifies ``|Q|`` up to unitary equivalence, the
conjugating unitaries are assembled explicitly and applied, so the result is
the actual matrix ``|Q|`` and can be compared entrywise with
:func:`blockabs.densela.abs_oracle`.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .densela import (
    DEFAULT_TOL,
    abs_rect,
    adjoint,
    as_matrix,
    block,
    herm_inv,
    max_eig,
    min_eig,
    polar_partial_isometry,
    psd_sqrt,
    range_basis,
    spectral_norm,
    spectral_split,
)
from .errors import NotPositiveError, PreconditionError

__all__ = [
    "BlockSymm",
    "CaseTag",
    "sqrt_2x2",
    "sqrt_shifted_block",
    "abs_unit_block",
    "abs_qlm",
    "case_of",
]


class CaseTag(enum.Enum):
    """Which closed form applies to ``|Q_{lam,mu}|``."""

    BothZero = "BothZero"  # lam = mu = 0
    LambdaOnly = "LambdaOnly"  # lam != 0, mu = 0
    MuOnly = "MuOnly"  # lam = 0, mu != 0
    ProductAboveNormSq = "ProductAboveNormSq"  # lam mu >= ||B||^2, lam mu > 0
    ProductNegative = "ProductNegative"  # lam mu < 0
    ProductInsideNormSq = "ProductInsideNormSq"  # 0 < lam mu < ||B||^2

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BlockSymm:
    """The triple ``(lam, mu, B)`` standing for ``[[lam I, B], [B*, mu I]]``.

    ``B`` has shape ``(dim H, dim K)``.
    """

    lam: float
    mu: float
    B: np.ndarray

    def __post_init__(self):
        lam, mu = float(self.lam), float(self.mu)
        if not (np.isfinite(lam) and np.isfinite(mu)):
            raise PreconditionError("lam and mu must be finite")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "B", as_matrix(self.B, "B"))

    @property
    def dims(self):
        return self.B.shape

    def matrix(self):
        """Materialize ``Q`` as a dense ``(m + k) x (m + k)`` matrix."""
        m, k = self.B.shape
        return block([
            [self.lam * np.eye(m), self.B],
            [adjoint(self.B), self.mu * np.eye(k)],
        ])

    def norm_sq(self):
        return spectral_norm(self.B) ** 2


def _herm(a):
    return (a + adjoint(a)) / 2


def _below(x, threshold, tol):
    """``x <= threshold`` with the relative and absolute ``rank_tol`` slack."""
    return x <= threshold * (1.0 + tol.rank_tol) + tol.rank_tol


def sqrt_2x2(b, mu):
    """Square root of ``[[1 + b, (1 + mu) sqrt(b)], [sqrt(b) (1 + mu), mu^2 + b]]``.

    Parameters
    ----------
    b : float
        Strictly positive.
    mu : float

    Returns
    -------
    (2, 2) ndarray of float

    Examples
    --------
    >>> sqrt_2x2(1.0, 2.0)
    array([[1., 1.],
           [1., 2.]])
    """
    b, mu = float(b), float(mu)
    if not b > 0:
        raise PreconditionError(f"b must be positive, got {b!r}")
    rb = np.sqrt(b)
    if mu >= b:
        return np.array([[1.0, rb], [rb, mu]])
    t = np.sqrt(mu * mu - 2 * mu + 4 * b + 1)
    return np.array([
        [2 * b - mu + 1, (1 + mu) * rb],
        [rb * (1 + mu), mu * mu - mu + 2 * b],
    ]) / t


def _t_branch(a, mu, tol):
    """Blocks of the ``T^{-1}`` form of ``M^{1/2}``, ``T = ((mu-1)^2 I + 4A)^{1/2}``.

    Valid whenever ``mu <= 0`` or ``A >= mu I``.
    """
    n = a.shape[0]
    eye = np.eye(n)
    t = psd_sqrt((mu - 1) ** 2 * eye + 4 * a, tol)
    t_inv = herm_inv(t, tol, "T")
    top = _herm(t_inv @ (2 * a - mu * eye + eye))
    off = _herm((1 + mu) * t_inv @ psd_sqrt(a, tol))
    bottom = _herm(t_inv @ ((mu * mu - mu) * eye + 2 * a))
    return top, off, bottom


def sqrt_shifted_block(a, mu, tol=DEFAULT_TOL):
    """Square root of ``M = [[I + A, (1+mu) A^{1/2}], [(1+mu) A^{1/2}, mu^2 I + A]]``.

    Three regimes, by where `mu` sits relative to the spectrum of the psd
    matrix `A`:

    * ``mu >= ||A||``: ``[[I, A^{1/2}], [A^{1/2}, mu I]]``.
    * ``mu <= 0``: the ``T^{-1}`` form with ``T = ((mu-1)^2 I + 4A)^{1/2}``.
    * otherwise the space is split into the spectral subspaces of ``A`` at
      ``mu``, the first form is used on ``[0, mu]`` and the ``T^{-1}`` form
      on ``(mu, ||A||]``, and the four blocks are permuted back into
      ``H (+) H`` order.

    Returns
    -------
    (2n, 2n) ndarray
    """
    a = as_matrix(a, "A")
    mu = float(mu)
    n = a.shape[0]
    if n and min_eig(a, tol) < -tol.psd_tol:
        raise NotPositiveError("A must be positive semidefinite")
    a = _herm(a)
    norm_a = max(max_eig(a, tol), 0.0) if n else 0.0
    eye = np.eye(n)

    if _below(norm_a, mu, tol):
        return block([[eye, psd_sqrt(a, tol)], [psd_sqrt(a, tol), mu * eye]])
    if mu <= 0:
        top, off, bottom = _t_branch(a, mu, tol)
        return block([[top, off], [off, bottom]])

    split = spectral_split(a, mu, tol)
    n1, n2 = split.a1.shape[0], split.a2.shape[0]
    i1 = np.eye(n1)
    a1_half = psd_sqrt(split.a1, tol)
    top2, off2, bottom2 = _t_branch(split.a2, mu, tol)
    z12, z21 = np.zeros((n1, n2)), np.zeros((n2, n1))
    # order H1, H2, H1, H2
    inner = block([
        [i1, z12, a1_half, z12],
        [z21, top2, z21, off2],
        [a1_half, z12, mu * i1, z12],
        [z21, off2, z21, bottom2],
    ])
    lo, hi = split.basis_low, split.basis_high
    zl, zh = np.zeros_like(lo), np.zeros_like(hi)
    frame = block([[lo, hi, zl, zh], [zl, zh, lo, hi]])
    return _herm(frame @ inner @ adjoint(frame))


def _unit_block_nonpositive(b, mu, tol):
    m, k = b.shape
    im, ik = np.eye(m), np.eye(k)
    bb, btb = b @ adjoint(b), adjoint(b) @ b
    t_inv = herm_inv(psd_sqrt((mu - 1) ** 2 * im + 4 * bb, tol), tol, "T")
    s_inv = herm_inv(psd_sqrt((mu - 1) ** 2 * ik + 4 * btb, tol), tol, "S")
    top = _herm(t_inv @ (2 * bb - mu * im + im))
    off = (1 + mu) * t_inv @ b
    bottom = _herm(s_inv @ ((mu * mu - mu) * ik + 2 * btb))
    return block([[top, off], [adjoint(off), bottom]])


def abs_unit_block(b, mu, tol=DEFAULT_TOL):
    """``|[[I, B], [B*, mu I]]|`` in ``H (+) K`` coordinates.

    For ``0 < mu < ||B||^2`` the operator is reduced to the part
    ``B~ : N(B)^perp -> closure R(B)``; ``R(B)^perp`` contributes ``I`` and
    ``N(B)`` contributes ``|mu| I``.  With ``B* = V (B B*)^{1/2}`` the
    isometry ``X = diag(I, V)`` from ``R(B) (+) R(B)`` onto
    ``R(B) (+) N(B)^perp`` carries ``[[I, A^{1/2}], [A^{1/2}, mu I]]``,
    ``A = B~ B~*``, onto the reduced block, so the reduced absolute value
    is ``X sqrt_shifted_block(A, mu) X*``.
    """
    b = as_matrix(b, "B")
    mu = float(mu)
    m, k = b.shape
    norm_sq = spectral_norm(b) ** 2

    if _below(norm_sq, mu, tol):
        return block([[np.eye(m), b], [adjoint(b), mu * np.eye(k)]])
    if mu <= 0:
        return _unit_block_nonpositive(b, mu, tol)

    v = polar_partial_isometry(b, tol)
    # basis of closure R(B) taken from V*V so it matches V's initial space exactly
    ur = range_basis(v.initial_projection, tol)
    vr = v.matrix @ ur
    a_red = _herm(adjoint(ur) @ b @ adjoint(b) @ ur)
    r = ur.shape[1]
    x = block([[ur, np.zeros((m, r))], [np.zeros((k, r)), vr]])
    core = x @ sqrt_shifted_block(a_red, mu, tol) @ adjoint(x)
    rest = block([
        [np.eye(m) - ur @ adjoint(ur), np.zeros((m, k))],
        [np.zeros((k, m)), abs(mu) * (np.eye(k) - vr @ adjoint(vr))],
    ])
    return _herm(core + rest)


def case_of(q, tol=DEFAULT_TOL):
    """Dispatch tag for ``|Q_{lam,mu}|``.

    Zero tests on ``lam`` and ``mu`` are exact.  ``lam mu = ||B||^2`` (within
    ``rank_tol``) counts as :attr:`CaseTag.ProductAboveNormSq`; ``B = 0``
    with ``lam mu > 0`` does too.
    """
    lam, mu = q.lam, q.mu
    if lam == 0 and mu == 0:
        return CaseTag.BothZero
    if mu == 0:
        return CaseTag.LambdaOnly
    if lam == 0:
        return CaseTag.MuOnly
    p = lam * mu
    if p < 0:
        return CaseTag.ProductNegative
    # ||B/lam||^2 <= (mu/lam) with the unit-block slack, times lam^2
    if q.norm_sq() <= p * (1.0 + tol.rank_tol) + tol.rank_tol * lam * lam:
        return CaseTag.ProductAboveNormSq
    return CaseTag.ProductInsideNormSq


def _abs_lambda_only(lam, b, tol):
    m, k = b.shape
    t = psd_sqrt(lam * lam * np.eye(m) + 4 * b @ adjoint(b), tol)
    t_inv = herm_inv(t, tol, "T")
    top = _herm((t + lam * lam * t_inv) / 2)
    off = lam * t_inv @ b
    bottom = _herm(2 * adjoint(b) @ t_inv @ b)
    return block([[top, off], [adjoint(off), bottom]])


def _abs_mu_only_closed_form(mu, b, tol=DEFAULT_TOL):
    """Direct ``lam = 0`` formula with ``S = (mu^2 I + 4 B*B)^{1/2}``."""
    m, k = b.shape
    s = psd_sqrt(mu * mu * np.eye(k) + 4 * adjoint(b) @ b, tol)
    s_inv = herm_inv(s, tol, "S")
    top = _herm(2 * b @ s_inv @ adjoint(b))
    off = mu * b @ s_inv
    bottom = _herm((s + mu * mu * s_inv) / 2)
    return block([[top, off], [adjoint(off), bottom]])


def _abs_product_negative(lam, mu, b, tol):
    m, k = b.shape
    im, ik = np.eye(m), np.eye(k)
    bb, btb = b @ adjoint(b), adjoint(b) @ b
    d2 = (mu - lam) ** 2
    t_inv = herm_inv(psd_sqrt(d2 * im + 4 * bb, tol), tol, "T")
    s_inv = herm_inv(psd_sqrt(d2 * ik + 4 * btb, tol), tol, "S")
    top = _herm(t_inv @ (2 * bb - lam * mu * im + lam * lam * im))
    off = (lam + mu) * t_inv @ b
    bottom = _herm(s_inv @ (mu * mu * ik - lam * mu * ik + 2 * btb))
    return block([[top, off], [adjoint(off), bottom]])


def _swap_blocks(r, k):
    """Conjugate a ``K (+) H`` matrix by the block swap to ``H (+) K``."""
    return block([[r[k:, k:], r[k:, :k]], [r[:k, k:], r[:k, :k]]])


def abs_qlm(q, tol=DEFAULT_TOL):
    """Absolute value of ``Q_{lam,mu}`` and the case used to compute it.

    Parameters
    ----------
    q : BlockSymm
    tol : Tolerance

    Returns
    -------
    absq : ndarray
        ``|Q|`` in ``H (+) K`` coordinates.
    tag : CaseTag

    Examples
    --------
    >>> absq, tag = abs_qlm(BlockSymm(2.0, 1.0, [[1.0]]))
    >>> tag, absq.real
    (<CaseTag.ProductAboveNormSq: 'ProductAboveNormSq'>, array([[2., 1.],
           [1., 1.]]))
    """
    tag = case_of(q, tol)
    lam, mu, b = q.lam, q.mu, q.B
    m, k = b.shape

    if tag is CaseTag.BothZero:
        z = np.zeros((m, k))
        out = block([[abs_rect(adjoint(b)), z], [z.T, abs_rect(b)]])
    elif tag is CaseTag.LambdaOnly:
        out = _abs_lambda_only(lam, b, tol)
    elif tag is CaseTag.MuOnly:
        # |[[0, B], [B*, mu]]| is the swap of |[[mu, B*], [B, 0]]|
        out = _swap_blocks(_abs_lambda_only(mu, adjoint(b), tol), k)
    elif tag is CaseTag.ProductAboveNormSq:
        out = np.sign(lam) * q.matrix()
    elif tag is CaseTag.ProductNegative:
        out = _abs_product_negative(lam, mu, b, tol)
    else:
        out = abs(lam) * abs_unit_block(b / lam, mu / lam, tol)
    return _herm(out), tag
