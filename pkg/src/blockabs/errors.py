"""Exception hierarchy.

Every error raised for a violated precondition derives from
:class:`PreconditionError`; the command line maps those to exit code 2.
"""

import numpy as np


class PreconditionError(ValueError):
    """An input does not satisfy the documented precondition."""


class DimensionError(PreconditionError):
    """Operand shapes are incompatible."""


class NotFiniteError(PreconditionError):
    """A matrix contains NaN or Inf entries."""


class NotHermitianError(PreconditionError):
    """A matrix is not self-adjoint within ``herm_tol``."""


class NotPositiveError(PreconditionError):
    """A matrix has an eigenvalue below ``-psd_tol``."""


class SingularError(PreconditionError):
    """An operator that must be inverted is (numerically) singular."""


class NotCommutingError(PreconditionError):
    """Two operators required to commute do not."""


class NotPartialIsometryError(PreconditionError):
    """A matrix fails ``V V* V = V``, or does not fix the required range."""


class NotIdempotentError(PreconditionError):
    """A matrix fails ``E^2 = E``."""


class NotSymmetryError(PreconditionError):
    """A matrix fails ``J = J* = J^{-1}``."""


class RankInstabilityError(PreconditionError):
    """A singular value sits too close to the rank threshold to decide rank."""


class InvalidPairError(PreconditionError):
    """A pair of symmetries violates ``J1 E1 + E1 J2 = 0``."""


class NotJProjectionError(PreconditionError):
    """An idempotent is not a J-projection for the given symmetry."""


class NoJProjectionError(PreconditionError):
    """No J-projection exists with the prescribed range."""


class KernelError(np.linalg.LinAlgError):
    """The underlying LAPACK routine failed to converge."""
