"""Exception hierarchy.

Errors are split in two families so the command line front end can map them
onto exit codes: :class:`ValidationError` for bad or unsuitable input and
:class:`NumericalError` for breakdowns that more precision or a larger
sampling order would fix.
"""


class WHFactorError(Exception):
    """Base class for all package errors."""


class ValidationError(WHFactorError):
    pass


class NumericalError(WHFactorError):
    pass


class ZeroOnCircle(ValidationError):
    """The polynomial vanishes (numerically) on a sampling contour."""


class IndexUncertain(ValidationError):
    """Quadrature for the winding number did not settle near an integer."""


class NoAnnulus(ValidationError):
    """No root-free annulus around the unit circle could be certified."""


class EllTooSmall(ValidationError):
    pass


class EpsTooLarge(ValidationError):
    pass


class SymmetryViolation(ValidationError):
    """A special-case hypothesis for delta0 fails the coefficient test."""


class NotSelfInversive(ValidationError):
    pass


class IndexOutOfWindow(ValidationError):
    pass


class RootOnCircle(ValidationError):
    pass


class RepeatedRoot(ValidationError):
    pass


class HypothesisViolated(ValidationError):
    """A perturbation-lemma hypothesis does not hold for the given inputs."""


class RankAmbiguous(NumericalError):
    """Singular values show no clear gap at the rank threshold."""


class NotInKernel(NumericalError):
    pass


class DegeneratePair(NumericalError):
    pass


class SingularSystem(NumericalError):
    pass


class TrimViolation(NumericalError):
    """A coefficient that must vanish in theory exceeds the certified accuracy."""


class EigFailure(NumericalError):
    pass


class CertificationWarning(UserWarning):
    """Emitted when an accuracy bound is reported without its hypothesis."""
