"""Exception hierarchy.  Every failure mode raised by the library is a
subclass of EnriquesLabError, so callers (notably the CLI) can map the whole
family onto exit codes."""


class EnriquesLabError(Exception):
    """Base class for all library errors."""


# --- lattice construction / invariants ---

class NonSymmetric(EnriquesLabError):
    """Gram matrix is not symmetric."""


class NonIntegral(EnriquesLabError):
    """Gram matrix entry is not an integer."""


class UnknownName(EnriquesLabError):
    """Unrecognized standard-lattice or registry name."""


class ZeroScale(EnriquesLabError):
    """Rescaling by zero."""


class Degenerate(EnriquesLabError):
    """Operation requires a nondegenerate lattice."""


class NotASublattice(EnriquesLabError):
    """Basis rows are linearly dependent."""


# --- enumeration ---

class NotNegativeDefinite(EnriquesLabError):
    """Short-vector enumeration needs a negative definite lattice."""


class EnumerationBudgetExceeded(EnriquesLabError):
    """Node cap hit during enumeration."""


# --- isometries and groups ---

class NotOrthogonal(EnriquesLabError):
    """Matrix does not preserve the bilinear form."""


class NotUnimodular(EnriquesLabError):
    """Matrix determinant is not +-1."""


class OrderCapExceeded(EnriquesLabError):
    """Group closure (or decomposition) passed the configured order cap."""


class NotFiniteOrder(EnriquesLabError):
    """No power of the matrix up to the cap equals the identity."""


# --- covering models ---

class NotDivisible(EnriquesLabError):
    """Restricted Gram matrix is not divisible by the covering index."""


class TransferMismatch(EnriquesLabError):
    """Transfer composite failed to equal d * identity."""

    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class BadParameters(EnriquesLabError):
    """Built-in model parameters out of range."""


# --- realization ---

class NoInvariantPlaneFound(EnriquesLabError):
    """Iteration budget exhausted without an invariant positive 3-plane.

    Existence is guaranteed for a finite group on a signature-(3, q)
    lattice, so seeing this signals a bug or a non-finite input.
    """


class PlaneNotInvariant(EnriquesLabError):
    """Supplied 3-plane is not preserved by the group."""


class WrongNorm(EnriquesLabError):
    """Vector does not have self-pairing -2."""


class NoCommonLine(EnriquesLabError):
    """No shared fixed line: a commutation precondition was violated."""


# --- periods / twistor ---

class IdentityInput(EnriquesLabError):
    """Rotation input was the identity; the invariant line is not unique."""


class NotUnitNorm(EnriquesLabError):
    """Vector does not have self-pairing 1."""


class NotInPlane(EnriquesLabError):
    """Vector does not lie in the given plane."""


class NotRationalPeriod(EnriquesLabError):
    """The twistor 2-plane admits no Gaussian-rational isotropic vector.

    A plane with Gram determinant that is not a rational square has no
    exact x + iy representative with (w, w) = 0; callers must pick a
    different plane basis or work with a rescaled plane.
    """


# --- fixtures ---

class UnknownFixture(EnriquesLabError):
    """Fixture name is not registered."""
