"""Positive parts and support projections of ``S_lam = [[lam I, B], [B*, 0]]``.

Also the structured support projections these rest on (``[[I, 2A^{1/2}],
[2A^{1/2}, 4A]]`` and its commuting generalization), transport of support
projections along a partial isometry, and the idempotent specialization
``E + E* = [[2I, E1], [E1*, 0]]``.

In every formula ``V`` is the partial isometry with ``B* = V (B B*)^{1/2}``
from :func:`blockabs.densela.polar_partial_isometry`; ``P_B = V* V`` and
``P_{B*} = V V*`` are read off it, so the two range projections are
consistent with each other by construction.
"""

from dataclasses import dataclass

import numpy as np

from .densela import (
    DEFAULT_TOL,
    PartialIsometry,
    abs_rect,
    adjoint,
    as_hermitian,
    as_matrix,
    block,
    fro,
    herm_inv,
    min_eig,
    polar_partial_isometry,
    psd_sqrt,
    support_projection_oracle,
)
from .errors import (
    DimensionError,
    NotCommutingError,
    NotPartialIsometryError,
    NotPositiveError,
    PreconditionError,
    SingularError,
)

__all__ = [
    "SLambda",
    "supp_sqrt_block",
    "supp_commuting_pair",
    "transport_support",
    "pos_part_slambda",
    "neg_part_slambda",
    "neg_part_s1",
    "supp_slambda",
    "supp_s1",
    "supp_pos_part",
    "supp_neg_part",
    "supp_neg_part_s1",
    "pos_part_e_plus_estar",
    "supp_pos_e_plus_estar",
]


def _herm(a):
    return (a + adjoint(a)) / 2


@dataclass(frozen=True)
class SLambda:
    """``S_lam = [[lam I, B], [B*, 0]]`` given by ``lam`` and ``B``."""

    lam: float
    B: np.ndarray

    def __post_init__(self):
        lam = float(self.lam)
        if not np.isfinite(lam):
            raise PreconditionError("lam must be finite")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "B", as_matrix(self.B, "B"))

    def matrix(self):
        m, k = self.B.shape
        return block([[self.lam * np.eye(m), self.B], [adjoint(self.B), np.zeros((k, k))]])


def _as_psd(a, tol, name):
    a = as_hermitian(a, tol, name)
    if a.shape[0] and min_eig(a, tol) < -tol.psd_tol:
        raise NotPositiveError(f"{name} must be positive semidefinite")
    return a


def supp_sqrt_block(a, tol=DEFAULT_TOL):
    """Support projection of ``[[I, 2A^{1/2}], [2A^{1/2}, 4A]]`` for psd `A`.

    A 1x1 ``A = [[a]]`` gives the scalar projector
    ``[[1, 2 sqrt(a)], [2 sqrt(a), 4a]] / (1 + 4a)``.
    """
    a = _as_psd(a, tol, "A")
    n = a.shape[0]
    inv = herm_inv(np.eye(n) + 4 * a, tol, "I + 4A")
    off = _herm(2 * psd_sqrt(a, tol) @ inv)
    return block([[inv, off], [off, _herm(4 * a @ inv)]])


def supp_commuting_pair(a, bc, tol=DEFAULT_TOL):
    """Support projection of ``[[C^2, 2A^{1/2} C], [2A^{1/2} C, 4A]]``.

    `a` is psd; `bc` (``C``) is positive definite and commutes with `a`.
    """
    a = _as_psd(a, tol, "A")
    bc = _as_psd(bc, tol, "C")
    if a.shape != bc.shape:
        raise DimensionError(f"A and C shapes differ: {a.shape} vs {bc.shape}")
    if fro(a @ bc - bc @ a) > tol.compare_tol * (1.0 + fro(a) * fro(bc)):
        raise NotCommutingError("A and C do not commute")
    if bc.shape[0] and min_eig(bc, tol) <= tol.rank_tol:
        raise SingularError("C must be invertible")
    c2 = bc @ bc
    inv = herm_inv(c2 + 4 * a, tol, "C^2 + 4A")
    off = _herm(2 * psd_sqrt(a, tol) @ bc @ inv)
    return block([[_herm(c2 @ inv), off], [off, _herm(4 * a @ inv)]])


def transport_support(g, u, tol=DEFAULT_TOL):
    """``P_F = U P_G U*`` for ``F = U G U*``.

    Parameters
    ----------
    g : (n, n) array_like
        Hermitian.
    u : PartialIsometry or (p, n) array_like
        Must satisfy ``U U* U = U`` and ``U* U G = G``.
    """
    g = as_hermitian(g, tol, "G")
    u = as_matrix(u.matrix if isinstance(u, PartialIsometry) else u, "U")
    if u.shape[1] != g.shape[0]:
        raise DimensionError(f"U has {u.shape[1]} columns but G is {g.shape[0]}x{g.shape[0]}")
    if fro(u @ adjoint(u) @ u - u) > tol.compare_tol * (1.0 + fro(u)):
        raise NotPartialIsometryError("U is not a partial isometry")
    if fro(adjoint(u) @ u @ g - g) > tol.compare_tol * (1.0 + fro(g)):
        raise NotPartialIsometryError("U*U G != G: G is not supported on U's initial space")
    return _herm(u @ support_projection_oracle(g, tol) @ adjoint(u))


def _t_lambda(lam, b, tol):
    m = b.shape[0]
    t = psd_sqrt(lam * lam * np.eye(m) + 4 * b @ adjoint(b), tol)
    return t, herm_inv(t, tol, "T")


def pos_part_slambda(s, tol=DEFAULT_TOL):
    """Positive part ``S_lam^+``.

    ``lam != 0`` uses ``T = (lam^2 I + 4 B B*)^{1/2}``;
    ``lam = 0`` gives ``[[|B*|, B], [B*, |B|]] / 2``.
    """
    lam, b = s.lam, s.B
    m, k = b.shape
    if lam == 0:
        return _herm(block([[abs_rect(adjoint(b)), b], [adjoint(b), abs_rect(b)]]) / 2)
    t, t_inv = _t_lambda(lam, b, tol)
    top = _herm((t + lam * lam * t_inv + 2 * lam * np.eye(m)) / 2)
    off = b + lam * t_inv @ b
    bottom = _herm(2 * adjoint(b) @ t_inv @ b)
    return _herm(block([[top, off], [adjoint(off), bottom]]) / 2)


def neg_part_slambda(s, tol=DEFAULT_TOL):
    """Negative part ``S_lam^- = S_lam^+ - S_lam``."""
    return _herm(pos_part_slambda(s, tol) - s.matrix())


def neg_part_s1(b, tol=DEFAULT_TOL):
    """Negative part of ``S_1 = [[I, B], [B*, 0]]``, ``T = (I + 4BB*)^{1/2}``."""
    b = as_matrix(b, "B")
    m = b.shape[0]
    im = np.eye(m)
    t, t_inv = _t_lambda(1.0, b, tol)
    top = _herm((t + t_inv - 2 * im) / 4)
    off = (t_inv - im) @ b / 2
    bottom = _herm(adjoint(b) @ t_inv @ b)
    return block([[top, off], [adjoint(off), bottom]])


def supp_s1(b, tol=DEFAULT_TOL):
    """Support projection of ``S_1``: ``diag(I, P_{B*})``."""
    b = as_matrix(b, "B")
    m, k = b.shape
    v = polar_partial_isometry(b, tol)
    return block([[np.eye(m), np.zeros((m, k))], [np.zeros((k, m)), v.final_projection]])


def supp_slambda(s, tol=DEFAULT_TOL):
    """Support projection of ``S_lam`` for any ``lam``.

    ``lam != 0`` reduces to ``S_1`` with ``B / lam`` (same range, so
    ``diag(I, P_{B*})``); ``lam = 0`` gives ``diag(P_B, P_{B*})``.
    """
    if s.lam != 0:
        return supp_s1(s.B, tol)
    m, k = s.B.shape
    v = polar_partial_isometry(s.B, tol)
    return block([[v.initial_projection, np.zeros((m, k))], [np.zeros((k, m)), v.final_projection]])


def supp_pos_part(s, tol=DEFAULT_TOL):
    """Support projection of ``S_lam^+``.

    Three forms by the sign of ``lam``; ``lam < 0`` and ``lam = 0`` involve
    ``V`` and are valid for singular ``B``.
    """
    lam, b = s.lam, s.B
    m, k = b.shape
    v = polar_partial_isometry(b, tol)
    if lam == 0:
        vm = v.matrix
        return _herm(block([[v.initial_projection, adjoint(vm)], [vm, v.final_projection]]) / 2)
    t, t_inv = _t_lambda(lam, b, tol)
    top = _herm((np.eye(m) + lam * t_inv) / 2)
    off = t_inv @ b
    if lam > 0:
        # T >= lam I, so lam I + T >= 2 lam I
        shifted_inv = herm_inv(lam * np.eye(m) + t, tol, "lam I + T")
        bottom = 2 * adjoint(b) @ t_inv @ shifted_inv @ b
    else:
        vm = v.matrix
        bottom = vm @ (np.eye(m) - lam * t_inv) @ adjoint(vm) / 2
    return _herm(block([[top, off], [adjoint(off), _herm(bottom)]]))


def supp_neg_part_s1(b, tol=DEFAULT_TOL):
    """Support projection of ``S_1^-``."""
    b = as_matrix(b, "B")
    m = b.shape[0]
    im = np.eye(m)
    _, t_inv = _t_lambda(1.0, b, tol)
    vm = polar_partial_isometry(b, tol).matrix
    top = _herm((im - t_inv) / 2)
    off = -t_inv @ b
    bottom = _herm(vm @ (t_inv + im) @ adjoint(vm) / 2)
    return block([[top, off], [adjoint(off), bottom]])


def supp_neg_part(s, tol=DEFAULT_TOL):
    """Support projection of ``S_lam^-`` as ``P_{S_lam} - P_{S_lam^+}``."""
    return _herm(supp_slambda(s, tol) - supp_pos_part(s, tol))


def _e1_t(e1, tol):
    r = e1.shape[0]
    t = psd_sqrt(np.eye(r) + e1 @ adjoint(e1), tol)
    return t, herm_inv(t, tol, "T")


def pos_part_e_plus_estar(e1, tol=DEFAULT_TOL):
    """``(E + E*)^+`` in ``R(E) (+) R(E)^perp`` coordinates, ``T = (I + E1 E1*)^{1/2}``."""
    e1 = as_matrix(e1, "E1")
    r = e1.shape[0]
    ir = np.eye(r)
    t, t_inv = _e1_t(e1, tol)
    top = _herm(t + t_inv + 2 * ir)
    off = (ir + t_inv) @ e1
    bottom = _herm(adjoint(e1) @ t_inv @ e1)
    return block([[top, off], [adjoint(off), bottom]]) / 2


def supp_pos_e_plus_estar(e1, tol=DEFAULT_TOL):
    """Support projection of ``(E + E*)^+`` in ``R(E) (+) R(E)^perp`` coordinates."""
    e1 = as_matrix(e1, "E1")
    r = e1.shape[0]
    ir = np.eye(r)
    t, t_inv = _e1_t(e1, tol)
    top = _herm(ir + t_inv)
    off = t_inv @ e1
    bottom = _herm(adjoint(e1) @ herm_inv(t + t @ t, tol, "T + T^2") @ e1)
    return block([[top, off], [adjoint(off), bottom]]) / 2
