"""Exception types shared across the package.

Every hard failure raised by the library derives from AnalysisError so callers
(and the command line driver) can distinguish diagnosed mathematical failures
from programming errors.
"""


class AnalysisError(Exception):
    """Base class for all diagnosed failures in this package."""


# ---------------------------------------------------------------------------
# model construction / validation
# ---------------------------------------------------------------------------

class SymmetryViolation(AnalysisError):
    """A multilinear form failed its symmetry or multilinearity probe."""


class NonPositiveDiffusion(AnalysisError):
    """A diffusion matrix has a non-positive diagonal entry."""


class InvalidChemistry(AnalysisError):
    """Built-in model parameters leave the required parameter domain."""


# ---------------------------------------------------------------------------
# spectral computations
# ---------------------------------------------------------------------------

class BoundaryRoot(AnalysisError):
    """A characteristic root sits on (or keeps returning to) a search-box
    boundary even after the permitted dilations."""


class NonConvergence(AnalysisError):
    """An iterative solve (root polish, box bisection, Newton continuation)
    exhausted its iteration or depth budget."""


class NoConvergence(AnalysisError):
    """The two-parameter Newton search exhausted its iteration budget or
    stalled under step damping."""


class DegenerateJacobian(AnalysisError):
    """The Newton system for the two-parameter search is singular."""


class SimplicityFailure(AnalysisError):
    """A critical root fails its simplicity / isolation requirement."""


class HygieneFailure(AnalysisError):
    """An extra root was found too close to the imaginary axis at the
    candidate critical point."""


# ---------------------------------------------------------------------------
# eigensystem / center subspace
# ---------------------------------------------------------------------------

class NoKernel(AnalysisError):
    """A matrix expected to be singular has no numerical null vector."""


class MultiDimensionalKernel(AnalysisError):
    """A matrix expected to have a one-dimensional kernel has more."""


class UnsupportedProfile(AnalysisError):
    """The pairing between two history profiles has no closed form and no
    quadrature fallback was permitted."""


# ---------------------------------------------------------------------------
# normal form
# ---------------------------------------------------------------------------

class ResonantSolve(AnalysisError):
    """A second-order correction solve hit an unexpected singular matrix
    (a resonance beyond the two critical roots)."""


# ---------------------------------------------------------------------------
# amplitude system / classification
# ---------------------------------------------------------------------------

class DegenerateCoefficient(AnalysisError):
    """A normal-form coefficient required to be bounded away from zero is
    numerically zero, so the planar reduction is invalid."""


class SingularEpsMap(AnalysisError):
    """The linear map from raw parameters to unfolding parameters is not
    invertible, so critical lines cannot be mapped back."""


class OnBoundary(AnalysisError):
    """A requested sample point lies on (or too near) a critical line, where
    region classification is undefined."""


# ---------------------------------------------------------------------------
# simulation
# ---------------------------------------------------------------------------

class BlowUp(AnalysisError):
    """The simulated field left the trust region (norm above threshold)."""


class NonFiniteState(AnalysisError):
    """The simulated field developed NaN or Inf entries."""


# ---------------------------------------------------------------------------
# configuration / reporting
# ---------------------------------------------------------------------------

class ConfigParse(AnalysisError):
    """A model or run configuration file could not be parsed."""
