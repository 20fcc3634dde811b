"""
Exception Hierarchy

Every failure raised by VariPro library code derives from VariProError.
Command-line orchestrators catch VariProError at the command boundary and
turn it into exit code 1.
"""


class VariProError(Exception):
    """Base class for all VariPro errors"""


# Grid -------------------------------------------------------------------

class GridError(VariProError):
    """Invalid grid data or grid operation"""


class NegativeIntensity(GridError):
    """Poisson noise requested on an image with negative entries"""


class ShapeMismatch(GridError):
    """Two arrays that must share a shape do not"""


# Operators ----------------------------------------------------------------

class OperatorError(VariProError):
    """Invalid forward operator construction"""


class NonBinaryMask(OperatorError):
    """A mask contains values other than 0 and 1"""


class EmptyKernel(OperatorError):
    """A convolution kernel is empty or has zero mass"""


class DegenerateGeometry(OperatorError):
    """Radon offsets do not cover the image diagonal"""


# Fidelity / regularizers ----------------------------------------------------

class FidelityError(VariProError):
    """Invalid data-fidelity evaluation"""


class DomainViolation(FidelityError):
    """Evaluation point outside the domain of the fidelity (e.g. KL at v <= 0)"""


class NonSmooth(FidelityError):
    """Gradient requested for a nonsmooth fidelity"""


class RegularizerError(VariProError):
    """Invalid regularizer evaluation"""


class Unsupported(RegularizerError):
    """Operation not available for this regularizer kind"""


# Solvers ------------------------------------------------------------------

class SolverError(VariProError):
    """Iterative solver failure"""


class ConvergenceFailure(SolverError):
    """Iteration cap reached where convergence was required"""


class Diverged(SolverError):
    """Energy increased for too many consecutive iterations"""


class StepSizeViolation(SolverError):
    """Step sizes violate the convergence bound"""


class InnerSolveFailure(SolverError):
    """An inner linear or proximal subproblem could not be solved"""


# Denoisers / PnP -----------------------------------------------------------

class DenoiserError(VariProError):
    """Invalid linear denoiser"""


class SingularDenoiser(DenoiserError):
    """Denoiser spectrum touches zero, the implicit regularizer is undefined"""


class FilterDomainViolation(DenoiserError):
    """Spectral filter undefined on part of the denoiser spectrum"""


class OracleUnavailable(DenoiserError):
    """Dense oracle requested for an instance that is too large"""


# Deep equilibrium ------------------------------------------------------------

class DeqError(VariProError):
    """Fixed-point iteration failure"""


class NotContractive(DeqError):
    """Successive step ratio stayed >= 1"""


class ContractionBoundViolated(DeqError):
    """Measured contraction factor exceeds the theoretical bound"""


# Segmentation ----------------------------------------------------------------

class SegmentationError(VariProError):
    """Segmentation failure"""


class DegenerateRegion(SegmentationError):
    """One of the two phases became empty"""


# Configuration -----------------------------------------------------------------

class ConfigError(VariProError):
    """Invalid run configuration"""

    def __init__(self, message, field=None, line=None, column=None):
        self.field = field
        self.line = line
        self.column = column
        location = []
        if field:
            location.append(f"field '{field}'")
        if line is not None:
            location.append(f"line {line}" + (f", column {column}" if column is not None else ""))
        super().__init__(f"{message} ({'; '.join(location)})" if location else message)


# Experiments -------------------------------------------------------------------

class ExperimentError(VariProError):
    """A command could not write one of its outputs"""
