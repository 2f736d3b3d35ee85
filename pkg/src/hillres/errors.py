"""Exception taxonomy; the CLI maps these to exit codes."""


class HillresError(Exception):
    """Base class for all library errors."""


class ParseError(HillresError):
    """Potential spec file is malformed."""


class ValidationError(HillresError):
    """Potential spec parsed but violates an invariant (t <= 0, ...)."""


class NumericalError(HillresError):
    """Base for numerical failures (CLI exit code 3)."""


class StepFailure(NumericalError):
    """ODE tolerance unreachable at the requested point."""


class EdgeResolutionError(NumericalError):
    """A near-double band edge could not be separated beyond tolerance."""


class BranchTrackingError(NumericalError):
    """Quasimomentum continuation detected an untrackable branch jump."""


class DirichletSingularity(NumericalError):
    """m+/- requested at a genuine pole with no rim information."""


class BandOnlyError(NumericalError):
    """Scattering coefficients requested off the continuous spectrum."""


class GapUnresolved(NumericalError):
    """Gap requested but not resolved by the band structure."""


class ClosedGap(NumericalError):
    """Operation requires an open gap."""


class ParityViolation(NumericalError):
    """Even state count per gap failed; a root was missed."""


class WindingNonInteger(NumericalError):
    """Argument-principle winding did not settle to an integer."""


class SymmetryViolation(NumericalError):
    """Off-axis zero without its mirror across the imaginary axis."""


class AuditFailure(NumericalError):
    """Forbidden-domain audit found an offending point."""


class ConvergenceFailure(NumericalError):
    """An oracle's self-certification (grid/size doubling) failed."""


class AcceptanceFailure(HillresError):
    """A verify-mode check failed (CLI exit code 4)."""
