"""Exception hierarchy for trigonal34."""


class Trigonal34Error(Exception):
    """Base class for all library errors."""


class IncompatibleSeriesError(Trigonal34Error):
    """Operands live in different variable universes or weight tables."""


class ResidueError(Trigonal34Error):
    """Term-wise integration hit a t^-1 term (non-exact differential)."""


class RootBranchError(Trigonal34Error):
    """Leading monomial of a series is not an extractable n-th power."""


class ReversionError(Trigonal34Error):
    """Compositional inverse requested for a series without a unit linear term."""


class LeadingTermError(Trigonal34Error):
    """Multiplicative inverse requested for a series whose lowest-weight
    part is not a single invertible monomial."""


class SingularCurveError(Trigonal34Error):
    """Operation requires a nonsingular curve (discriminant != 0)."""


class EtaSolveError(Trigonal34Error):
    """Second-kind kernel linear system inconsistent or underdetermined
    beyond the documented gauge freedom."""


class SigmaSolveError(Trigonal34Error):
    """Sigma determination failed (inconsistent constraint system)."""


class SigmaUnderdeterminedError(SigmaSolveError):
    """Sigma constraints left free coefficients even after augmentation.

    Carries the offending grade and the list of free monomials.
    """

    def __init__(self, grade, free_monomials):
        self.grade = grade
        self.free_monomials = list(free_monomials)
        super().__init__(
            f"sigma coefficients underdetermined at lambda-grade {grade}: "
            f"free monomials {self.free_monomials}"
        )


class PeriodError(Trigonal34Error):
    """Period computation or validation failed (quadrature, homology rank,
    Legendre residual, positivity)."""


class CharacteristicError(Trigonal34Error):
    """Characteristic search returned zero or multiple candidates."""


class CalibrationError(Trigonal34Error):
    """Sigma constant calibration dispersion too large."""
