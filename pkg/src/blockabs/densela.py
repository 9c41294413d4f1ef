"""Dense complex linear algebra kernel.

Everything here works on plain :class:`numpy.ndarray` objects of complex
dtype.  The functions play two roles: they are the building blocks of the
structured formulas in :mod:`blockabs.absval`, :mod:`blockabs.support` and
:mod:`blockabs.krein`, and they are the brute-force eigendecomposition
oracle those formulas are checked against.

Numerical conventions
---------------------
* Rank decisions keep singular values (or eigenvalue magnitudes) above
  ``rank_tol * largest``.
* Hermitian inputs are symmetrized to ``(A + A*) / 2``; an asymmetry larger
  than ``herm_tol * (1 + ||A||_F)`` is an error.
* Matrix comparisons use the Frobenius norm relative to ``1 + ||scale||_F``
  (see :func:`rel_dev`).
* Semidefiniteness tests compare the smallest eigenvalue against
  ``-psd_tol``.
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    DimensionError,
    KernelError,
    NotFiniteError,
    NotHermitianError,
    NotPositiveError,
    PreconditionError,
    SingularError,
)

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "EigenDecomposition",
    "PartialIsometry",
    "SpectralSplit",
    "as_matrix",
    "as_hermitian",
    "adjoint",
    "fro",
    "rel_dev",
    "herm_eig",
    "herm_apply",
    "herm_inv",
    "psd_sqrt",
    "abs_rect",
    "min_eig",
    "max_eig",
    "is_psd",
    "abs_oracle",
    "pos_part_oracle",
    "neg_part_oracle",
    "support_projection_oracle",
    "polar_partial_isometry",
    "range_basis",
    "complement_basis",
    "numerical_rank",
    "spectral_norm",
    "spectral_split",
    "loewner_geq",
    "block",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds shared by every routine in the package.

    Attributes
    ----------
    herm_tol : float
        Allowed relative asymmetry of a matrix declared Hermitian.
    rank_tol : float
        Relative threshold (to the largest singular value) for rank and
        range decisions; also the margin for case boundaries.
    psd_tol : float
        Absolute slack on the smallest eigenvalue in positivity tests.
    compare_tol : float
        Relative Frobenius tolerance for matrix equalities.
    """

    herm_tol: float = 1e-10
    rank_tol: float = 1e-10
    psd_tol: float = 1e-9
    compare_tol: float = 1e-8

    def __post_init__(self):
        for name in ("herm_tol", "rank_tol", "psd_tol", "compare_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")

    def with_(self, **changes):
        """Return a copy with some thresholds replaced."""
        return replace(self, **changes)


DEFAULT_TOL = Tolerance()


def as_matrix(a, name="matrix"):
    """Convert `a` to a finite 2-D complex array.

    Scalars become 1x1 matrices.  Empty dimensions are allowed.
    """
    arr = np.asarray(a)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    arr = arr.astype(complex, copy=True)
    if not np.all(np.isfinite(arr)):
        raise NotFiniteError(f"{name} has non-finite entries")
    return arr


def adjoint(a):
    return np.conj(np.swapaxes(a, -1, -2))


def fro(a):
    return float(np.linalg.norm(a)) if np.size(a) else 0.0


def rel_dev(x, y, scale=None):
    """Relative Frobenius deviation ``||x - y||_F / (1 + ||scale||_F)``.

    `scale` defaults to `y`.
    """
    if np.shape(x) != np.shape(y):
        raise DimensionError(f"cannot compare shapes {np.shape(x)} and {np.shape(y)}")
    scale = y if scale is None else scale
    return fro(np.asarray(x) - np.asarray(y)) / (1.0 + fro(scale))


def _herm(a):
    return (a + adjoint(a)) / 2


def as_hermitian(a, tol=DEFAULT_TOL, name="matrix"):
    """Validate `a` as Hermitian and return its symmetrized copy.

    Raises
    ------
    DimensionError
        If `a` is not square.
    NotHermitianError
        If ``||a - a*||_F > herm_tol * (1 + ||a||_F)``.
    """
    arr = as_matrix(a, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    asym = fro(arr - adjoint(arr))
    if asym > tol.herm_tol * (1.0 + fro(arr)):
        raise NotHermitianError(f"{name} is not Hermitian (||A - A*||_F = {asym:.3e})")
    return _herm(arr)


def block(rows):
    """Assemble a block matrix, tolerating blocks with zero rows or columns."""
    return np.block([[np.asarray(b, dtype=complex) for b in row] for row in rows])


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in ascending order and matching orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    vectors: np.ndarray

    def reconstruct(self, f=None):
        """Return ``V diag(f(w)) V*`` (``f`` defaults to the identity)."""
        w = self.eigenvalues if f is None else f(self.eigenvalues)
        return (self.vectors * w) @ adjoint(self.vectors)


def herm_eig(a, tol=DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Examples
    --------
    >>> herm_eig([[2, 1], [1, 0]]).eigenvalues.round(6)
    array([-0.414214,  2.414214])
    """
    a = as_hermitian(a, tol)
    if a.shape[0] == 0:
        return EigenDecomposition(np.zeros(0), np.zeros((0, 0), dtype=complex))
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise KernelError(f"Hermitian eigensolver failed: {exc}") from exc
    return EigenDecomposition(w, v)


def herm_apply(a, f, tol=DEFAULT_TOL):
    """Apply the scalar function `f` to a Hermitian matrix through its spectrum."""
    return _herm(herm_eig(a, tol).reconstruct(f))


def min_eig(a, tol=DEFAULT_TOL):
    w = herm_eig(a, tol).eigenvalues
    return float(w[0]) if w.size else np.inf


def max_eig(a, tol=DEFAULT_TOL):
    w = herm_eig(a, tol).eigenvalues
    return float(w[-1]) if w.size else -np.inf


def is_psd(a, tol=DEFAULT_TOL):
    return min_eig(a, tol) >= -tol.psd_tol


def herm_inv(a, tol=DEFAULT_TOL, name="matrix"):
    """Inverse of a positive definite matrix, asserting ``min eig > rank_tol``."""
    eig = herm_eig(a, tol)
    if eig.eigenvalues.size and eig.eigenvalues[0] <= tol.rank_tol:
        raise SingularError(f"{name} is not invertible (min eigenvalue {eig.eigenvalues[0]:.3e})")
    return _herm(eig.reconstruct(np.reciprocal))


def psd_sqrt(a, tol=DEFAULT_TOL):
    """Positive square root of a positive semidefinite matrix.

    Eigenvalues in ``[-psd_tol, 0)`` are clamped to zero, and so are those
    at the eigensolver's noise floor ``10 n eps ||A||``: a computed
    eigenvalue of size ``eps`` would otherwise turn into ``sqrt(eps)``.

    Raises
    ------
    NotPositiveError
        If an eigenvalue is below ``-psd_tol``.
    """
    eig = herm_eig(a, tol)
    w = eig.eigenvalues
    if w.size and w[0] < -tol.psd_tol:
        raise NotPositiveError(f"matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    floor = 10 * w.size * np.finfo(float).eps * (np.max(np.abs(w)) if w.size else 0.0)
    return _herm(eig.reconstruct(lambda x: np.sqrt(np.where(x > floor, x, 0.0))))


def abs_rect(b):
    """``|B| = (B* B)^{1/2}`` for a rectangular `B`, from its SVD.

    Going through the singular values avoids the ``sqrt(eps)`` loss that
    :func:`psd_sqrt` of a singular ``B* B`` would incur.
    """
    b = as_matrix(b, "B")
    k = b.shape[1]
    if b.size == 0:
        return np.zeros((k, k), dtype=complex)
    _, s, wh = np.linalg.svd(b, full_matrices=False)
    return _herm((adjoint(wh) * s) @ wh)


def abs_oracle(m, tol=DEFAULT_TOL):
    """``|M| = V diag(|w|) V*`` for Hermitian `M`."""
    return herm_apply(m, np.abs, tol)


def pos_part_oracle(a, tol=DEFAULT_TOL):
    """Positive part ``(|A| + A) / 2`` built from the nonnegative eigenvalues."""
    return herm_apply(a, lambda w: np.clip(w, 0.0, None), tol)


def neg_part_oracle(a, tol=DEFAULT_TOL):
    """Negative part ``(|A| - A) / 2``."""
    return herm_apply(a, lambda w: np.clip(-w, 0.0, None), tol)


def _kept(values, tol):
    """Mask of magnitudes above ``rank_tol`` times the largest magnitude."""
    mags = np.abs(values)
    if mags.size == 0:
        return np.zeros(0, dtype=bool)
    top = mags.max()
    if top == 0.0:
        return np.zeros(mags.shape, dtype=bool)
    return mags > tol.rank_tol * top


def support_projection_oracle(a, tol=DEFAULT_TOL):
    """Orthogonal projection onto the range of a Hermitian matrix.

    Examples
    --------
    >>> support_projection_oracle([[1, 1], [1, 1]]).real
    array([[0.5, 0.5],
           [0.5, 0.5]])
    """
    eig = herm_eig(a, tol)
    v = eig.vectors[:, _kept(eig.eigenvalues, tol)]
    return _herm(v @ adjoint(v))


def numerical_rank(x, tol=DEFAULT_TOL):
    x = as_matrix(x)
    if x.size == 0:
        return 0
    return int(np.count_nonzero(_kept(np.linalg.svd(x, compute_uv=False), tol)))


def spectral_norm(x):
    x = np.asarray(x)
    if x.size == 0:
        return 0.0
    return float(np.linalg.svd(x, compute_uv=False)[0])


def range_basis(x, tol=DEFAULT_TOL):
    """Orthonormal basis (as columns) of the column space of `x`."""
    x = as_matrix(x)
    if x.size == 0:
        return np.zeros((x.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(x, full_matrices=False)
    return u[:, _kept(s, tol)]


def complement_basis(q):
    """Orthonormal basis of the orthogonal complement of ``span(q)``.

    `q` must have orthonormal columns.
    """
    q = as_matrix(q)
    n, r = q.shape
    if r == 0:
        return np.eye(n, dtype=complex)
    if r == n:
        return np.zeros((n, 0), dtype=complex)
    u, _, _ = np.linalg.svd(q, full_matrices=True)
    return u[:, r:]


@dataclass(frozen=True)
class PartialIsometry:
    """A partial isometry ``V`` together with the dimension of its initial space."""

    matrix: np.ndarray
    initial_rank: int

    @property
    def initial_projection(self):
        """``V* V``, the projection onto the initial space."""
        return _herm(adjoint(self.matrix) @ self.matrix)

    @property
    def final_projection(self):
        """``V V*``, the projection onto the final space."""
        return _herm(self.matrix @ adjoint(self.matrix))

    @property
    def H(self):
        return adjoint(self.matrix)


def polar_partial_isometry(b, tol=DEFAULT_TOL):
    """Partial isometry ``V`` with ``B* = V (B B*)^{1/2}``.

    For ``B`` of shape ``(m, k)`` the result is ``(k, m)``.  ``V`` is built
    only from singular directions with ``sigma > rank_tol * sigma_max``, so
    its final space is the closure of ``R(B*)``, its initial space is the
    closure of ``R(B)``, and it vanishes on ``R(B)^perp``.

    Examples
    --------
    >>> polar_partial_isometry([[0, 3]]).matrix.real
    array([[0.],
           [1.]])
    """
    b = as_matrix(b, "B")
    m, k = b.shape
    if b.size == 0:
        return PartialIsometry(np.zeros((k, m), dtype=complex), 0)
    u, s, wh = np.linalg.svd(b, full_matrices=False)
    keep = _kept(s, tol)
    # B = U S W*  =>  B* = (W U*) (U S U*)
    v = adjoint(wh[keep]) @ adjoint(u[:, keep])
    return PartialIsometry(v, int(keep.sum()))


@dataclass(frozen=True)
class SpectralSplit:
    """Eigenspace grouping of a psd matrix at a threshold.

    ``basis_low`` spans the eigenvectors with eigenvalue in ``[0, mu]`` and
    ``basis_high`` those in ``(mu, ||A||]``; ``a1`` and ``a2`` are the
    compressions of ``A`` to these bases.
    """

    threshold: float
    basis_low: np.ndarray
    basis_high: np.ndarray
    a1: np.ndarray
    a2: np.ndarray


def spectral_split(a, mu, tol=DEFAULT_TOL):
    """Split a psd matrix into its spectral subspaces below and above `mu`.

    Eigenvalues ``<= mu * (1 + rank_tol) + rank_tol`` count as low, so a
    tie at the threshold lands in the closed interval ``[0, mu]``.
    """
    if not mu > 0:
        raise PreconditionError(f"threshold must be positive, got {mu!r}")
    eig = herm_eig(a, tol)
    w, v = eig.eigenvalues, eig.vectors
    if w.size and w[0] < -tol.psd_tol:
        raise NotPositiveError(f"matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    low = w <= mu * (1.0 + tol.rank_tol) + tol.rank_tol
    vl, vh = v[:, low], v[:, ~low]
    a = _herm(as_matrix(a))
    return SpectralSplit(
        threshold=float(mu),
        basis_low=vl,
        basis_high=vh,
        a1=_herm(adjoint(vl) @ a @ vl),
        a2=_herm(adjoint(vh) @ a @ vh),
    )


def loewner_geq(a, b, tol=DEFAULT_TOL):
    """True iff ``A - B`` is positive semidefinite up to ``psd_tol``."""
    a = as_hermitian(a, tol, "A")
    b = as_hermitian(b, tol, "B")
    if a.shape != b.shape:
        raise DimensionError(f"cannot compare shapes {a.shape} and {b.shape}")
    return is_psd(a - b, tol)
