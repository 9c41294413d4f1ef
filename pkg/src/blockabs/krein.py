"""J-projections: symmetries ``J`` for which an idempotent ``E`` satisfies ``E = J E* J``.

Every idempotent is written in the unitary frame ``W = [range | complement]``
as ``W* E W = [[I, E1], [0, 0]]``.  In that frame a symmetry making ``E`` a
J-projection is determined by a pair of symmetries ``J1`` on ``R(E)`` and
``J2`` on ``R(E)^perp`` with ``J1 E1 + E1 J2 = 0``::

    J = [[J1 T^-1,       J1 T^-1 E1],
         [E1* T^-1 J1,   J2 S^-1   ]],   T = (I + E1 E1*)^{1/2},
                                          S = (I + E1* E1)^{1/2}

``JE >= 0`` exactly when ``J1 = I``, and the Loewner-smallest such ``J`` is
``2 P_{(E+E*)^+} - I``.
"""

from dataclasses import dataclass

import numpy as np

from .densela import (
    DEFAULT_TOL,
    adjoint,
    as_hermitian,
    as_matrix,
    block,
    complement_basis,
    fro,
    herm_eig,
    herm_inv,
    is_psd,
    loewner_geq,
    numerical_rank,
    psd_sqrt,
)
from .errors import (
    DimensionError,
    InvalidPairError,
    NoJProjectionError,
    NotIdempotentError,
    NotJProjectionError,
    NotSymmetryError,
    PreconditionError,
    RankInstabilityError,
    SingularError,
)
from .support import supp_pos_e_plus_estar

__all__ = [
    "CanonicalIdempotent",
    "as_idempotent",
    "as_symmetry",
    "canonical_form",
    "build_symmetry",
    "extract_symmetry_pair",
    "is_j_projection",
    "is_j_positive",
    "j_positive_structural",
    "min_symmetry",
    "positivity_via_min_symmetry",
    "positivity_via_sandwich",
    "trivial_intersection",
    "projection_from_subspace",
    "decompose_pos_neg",
]


def _herm(a):
    return (a + adjoint(a)) / 2


def as_idempotent(e, tol=DEFAULT_TOL):
    """Validate ``E^2 = E`` within ``compare_tol * (1 + ||E||_F^2)``."""
    e = as_matrix(e, "E")
    if e.shape[0] != e.shape[1]:
        raise DimensionError(f"E must be square, got shape {e.shape}")
    if fro(e @ e - e) > tol.compare_tol * (1.0 + fro(e) ** 2):
        raise NotIdempotentError("E is not idempotent")
    return e


def as_symmetry(j, tol=DEFAULT_TOL, name="J"):
    """Validate ``J = J*`` and ``J^2 = I``; return the symmetrized matrix."""
    j = as_hermitian(j, tol, name)
    n = j.shape[0]
    if fro(j @ j - np.eye(n)) > tol.compare_tol * (1.0 + fro(j) ** 2):
        raise NotSymmetryError(f"{name} is not a symmetry (J^2 != I)")
    return j


@dataclass(frozen=True)
class CanonicalIdempotent:
    """An idempotent in the frame ``R(E) (+) R(E)^perp``.

    Attributes
    ----------
    W : ndarray
        Unitary; the first ``rank`` columns span ``R(E)``.
    E1 : ndarray
        ``rank x (n - rank)`` corner with ``W* E W = [[I, E1], [0, 0]]``.
    rank : int
    """

    W: np.ndarray
    E1: np.ndarray
    rank: int

    @property
    def dim(self):
        return self.W.shape[0]

    @property
    def range_basis(self):
        return self.W[:, : self.rank]

    @property
    def complement_basis(self):
        return self.W[:, self.rank :]

    def block_form(self):
        r, s = self.E1.shape
        return block([[np.eye(r), self.E1], [np.zeros((s, r)), np.zeros((s, s))]])

    def to_original(self, x):
        """Map a matrix given in the canonical frame back: ``W x W*``."""
        return self.W @ x @ adjoint(self.W)

    def to_canonical(self, x):
        return adjoint(self.W) @ x @ self.W

    def reconstruct(self):
        return self.to_original(self.block_form())


def canonical_form(e, tol=DEFAULT_TOL):
    """Frame an idempotent as ``[[I, E1], [0, 0]]``.

    The range basis comes from the left singular vectors of ``E``.  The
    nonzero singular values of an idempotent are at least 1, so a singular
    value strictly between the rank threshold and 1/2 means the rank cannot
    be decided and :class:`RankInstabilityError` is raised.
    """
    e = as_idempotent(e, tol)
    n = e.shape[0]
    if n == 0:
        return CanonicalIdempotent(np.zeros((0, 0), dtype=complex), np.zeros((0, 0), dtype=complex), 0)
    u, s, _ = np.linalg.svd(e)
    cutoff = tol.rank_tol * max(s[0], 1.0)
    r = int(np.count_nonzero(s > cutoff))
    if r and s[r - 1] < 0.5:
        raise RankInstabilityError(f"singular value {s[r - 1]:.3e} lies inside the rank gap")
    if r != round(float(np.trace(e).real)):
        raise RankInstabilityError(f"rank {r} disagrees with trace {np.trace(e).real:.6f}")
    w = u
    x = adjoint(w) @ e @ w
    scale = tol.compare_tol * (1.0 + fro(e) ** 2)
    if fro(x[r:, :]) > scale or fro(x[:r, :r] - np.eye(r)) > scale:
        raise NotIdempotentError("E does not reduce to [[I, E1], [0, 0]]")
    return CanonicalIdempotent(w, x[:r, r:].copy(), r)


def _inv_sqrt_shift(x, tol):
    """``(I + X X*)^{-1/2}``."""
    return herm_inv(psd_sqrt(np.eye(x.shape[0]) + x @ adjoint(x), tol), tol)


def _canonical_symmetry(e1, j1, j2, tol):
    t_inv = _inv_sqrt_shift(e1, tol)
    s_inv = _inv_sqrt_shift(adjoint(e1), tol)
    top = j1 @ t_inv
    return _herm(block([[top, top @ e1], [adjoint(e1) @ adjoint(top), j2 @ s_inv]]))


def build_symmetry(c, j1, j2, tol=DEFAULT_TOL):
    """Symmetry ``J`` making ``E`` a J-projection, from the pair ``(J1, J2)``.

    Parameters
    ----------
    c : CanonicalIdempotent
    j1 : array_like
        Symmetry on ``R(E)`` (``rank x rank``, in the frame's coordinates).
    j2 : array_like
        Symmetry on ``R(E)^perp``.

    Raises
    ------
    InvalidPairError
        If ``J1 E1 + E1 J2 != 0``.

    Examples
    --------
    >>> c = canonical_form([[1, 1], [0, 0]])
    >>> (build_symmetry(c, [[1]], [[-1]]).real * np.sqrt(2)).round(12)
    array([[ 1.,  1.],
           [ 1., -1.]])
    """
    r, s = c.E1.shape
    j1 = as_symmetry(j1, tol, "J1")
    j2 = as_symmetry(j2, tol, "J2")
    if j1.shape != (r, r) or j2.shape != (s, s):
        raise DimensionError(f"J1, J2 must be {r}x{r} and {s}x{s}, got {j1.shape} and {j2.shape}")
    if fro(j1 @ c.E1 + c.E1 @ j2) > tol.compare_tol * (1.0 + fro(c.E1)):
        raise InvalidPairError("J1 E1 + E1 J2 != 0")
    return _herm(c.to_original(_canonical_symmetry(c.E1, j1, j2, tol)))


def _sign_part(q, tol, name):
    """``Q |Q|^{-1}`` for an invertible Hermitian ``Q``."""
    if q.shape[0] == 0:
        return q
    eig = herm_eig(q, tol)
    if np.min(np.abs(eig.eigenvalues)) <= tol.rank_tol:
        raise SingularError(f"{name} block is singular; J is not of the required form")
    return _herm(eig.reconstruct(np.sign))


def _require_j_projection(e, j, tol):
    e = as_idempotent(e, tol)
    j = as_symmetry(j, tol)
    if e.shape != j.shape:
        raise DimensionError(f"E is {e.shape} but J is {j.shape}")
    if not is_j_projection(e, j, tol):
        raise NotJProjectionError("E is not a J-projection for this J")
    return e, j


def extract_symmetry_pair(e, j, tol=DEFAULT_TOL):
    """Recover ``(J1, J2)`` from a symmetry ``J`` for which ``E`` is a J-projection.

    ``J1`` and ``J2`` are the unitary polar factors of the diagonal blocks of
    ``W* J W``.

    Returns
    -------
    j1, j2 : ndarray
    c : CanonicalIdempotent
    """
    e, j = _require_j_projection(e, j, tol)
    c = canonical_form(e, tol)
    jc = c.to_canonical(j)
    r = c.rank
    return _sign_part(jc[:r, :r], tol, "(1,1)"), _sign_part(jc[r:, r:], tol, "(2,2)"), c


def is_j_projection(e, j, tol=DEFAULT_TOL):
    """True iff ``||E - J E* J||_F <= compare_tol * (1 + ||E||_F)``."""
    e = as_matrix(e, "E")
    j = as_matrix(j, "J")
    if e.shape != j.shape:
        raise DimensionError(f"E is {e.shape} but J is {j.shape}")
    return fro(e - j @ adjoint(e) @ j) <= tol.compare_tol * (1.0 + fro(e))


def is_j_positive(e, j, tol=DEFAULT_TOL):
    """True iff ``JE`` is Hermitian and positive semidefinite."""
    e = as_matrix(e, "E")
    j = as_matrix(j, "J")
    if e.shape != j.shape:
        raise DimensionError(f"E is {e.shape} but J is {j.shape}")
    je = j @ e
    if fro(je - adjoint(je)) > tol.compare_tol * (1.0 + fro(je)):
        return False
    return is_psd(_herm(je), tol)


def j_positive_structural(e, j, tol=DEFAULT_TOL):
    """Positivity read off the frame: a J-projection is J-positive iff ``J1 = I``."""
    if not is_j_projection(e, j, tol):
        return False
    j1, _, c = extract_symmetry_pair(e, j, tol)
    return fro(j1 - np.eye(c.rank)) <= tol.compare_tol


def min_symmetry(e, tol=DEFAULT_TOL):
    """Loewner-smallest symmetry ``J`` with ``JE >= 0``: ``2 P_{(E+E*)^+} - I``.

    Examples
    --------
    >>> (min_symmetry([[1, 1], [0, 0]]).real * np.sqrt(2)).round(12)
    array([[ 1.,  1.],
           [ 1., -1.]])
    """
    c = canonical_form(e, tol)
    p = supp_pos_e_plus_estar(c.E1, tol)
    return _herm(c.to_original(2 * p - np.eye(c.dim)))


def trivial_intersection(x, y, tol=DEFAULT_TOL):
    """True iff ``span(x)`` and ``span(y)`` meet only in 0 (orthonormal columns)."""
    x = as_matrix(x)
    y = as_matrix(y)
    return numerical_rank(np.hstack([x, y]), tol) == x.shape[1] + y.shape[1]


def positivity_via_min_symmetry(e, j, tol=DEFAULT_TOL):
    """``(JE >= 0, J >= 2 P_{(E+E*)^+} - I)``; the two always agree."""
    e, j = _require_j_projection(e, j, tol)
    return is_j_positive(e, j, tol), loewner_geq(j, min_symmetry(e, tol), tol)


def positivity_via_sandwich(e, j, tol=DEFAULT_TOL):
    """``(JE >= 0, (J+I)E(J+I) >= 0 and R(E) & R(I-J) = {0})``; the two always agree."""
    e, j = _require_j_projection(e, j, tol)
    n = e.shape[0]
    jp = j + np.eye(n)
    sandwich = jp @ e @ jp
    eig = herm_eig(j, tol)
    minus_space = eig.vectors[:, eig.eigenvalues < 0]
    c = canonical_form(e, tol)
    rhs = is_psd(_herm(sandwich), tol) and trivial_intersection(c.range_basis, minus_space, tol)
    return is_j_positive(e, j, tol), rhs


def projection_from_subspace(m_basis, j, tol=DEFAULT_TOL):
    """The unique J-projection with range ``span(m_basis)``.

    With ``N`` an orthonormal basis of the complement, ``Q11 = M* J M`` and
    ``Q12 = M* J N``, the result is ``[M N] [[I, Q11^{-1} Q12], [0, 0]] [M N]*``.

    Raises
    ------
    NoJProjectionError
        If the compression ``Q11`` is singular (no such projection exists).
    """
    mb = as_matrix(m_basis, "M")
    j = as_symmetry(j, tol)
    n, r = mb.shape
    if j.shape != (n, n):
        raise DimensionError(f"M has {n} rows but J is {j.shape}")
    if fro(adjoint(mb) @ mb - np.eye(r)) > tol.compare_tol * (1.0 + r):
        raise PreconditionError("M must have orthonormal columns")
    if not 0 < r < n:
        raise PreconditionError(f"subspace must be non-trivial, got dimension {r} in {n}")
    nb = complement_basis(mb)
    q11 = _herm(adjoint(mb) @ j @ mb)
    q12 = adjoint(mb) @ j @ nb
    w = herm_eig(q11, tol).eigenvalues
    if np.min(np.abs(w)) <= tol.rank_tol:
        raise NoJProjectionError(f"compression of J to M is singular (min |eig| = {np.min(np.abs(w)):.3e})")
    e1 = np.linalg.solve(q11, q12)
    return mb @ (adjoint(mb) + e1 @ adjoint(nb))


def decompose_pos_neg(e, j, tol=DEFAULT_TOL):
    """Split a J-projection as ``E = Q + R`` with ``Q`` J-positive and ``R`` J-negative.

    In the canonical frame ``Q = [[P, P E1], [0, 0]]`` and
    ``R = [[I - P, (I - P) E1], [0, 0]]`` with ``P = (I + J1) / 2``.

    Returns
    -------
    q, r : ndarray
    """
    j1, _, c = extract_symmetry_pair(e, j, tol)
    rk, s = c.E1.shape
    zeros = np.zeros((s, rk + s))
    plus = (np.eye(rk) + j1) / 2
    minus = (np.eye(rk) - j1) / 2
    q = c.to_original(np.vstack([np.hstack([plus, plus @ c.E1]), zeros]))
    r = c.to_original(np.vstack([np.hstack([minus, minus @ c.E1]), zeros]))
    return q, r
