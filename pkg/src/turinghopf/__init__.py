"""Turing-Hopf interaction analysis for delayed reaction-diffusion systems.

The package locates codimension-two points where a steady spatial mode and an
oscillatory mode of a delayed reaction-diffusion system on an interval (with
no-flux boundaries) lose stability together, reduces the dynamics near such a
point to a planar amplitude system via a third-order normal form on the
center manifold, classifies the planar unfolding, predicts the inventory of
spatiotemporal patterns in each parameter region, and cross-validates the
predictions by direct simulation.

Typical flow::

    from turinghopf import (
        schnakenberg_builtin, locate, compute_normal_form,
        classify_degeneracy, reduce_pitchfork, region_inventory,
        validate_predictions,
    )

    spec = schnakenberg_builtin(1.0, 2.0, 4.0)
    cp = locate(spec, k1=1, k2=0, initial_guess=(0.2, 0.002, 1.5))
    nf = compute_normal_form(spec, cp)
    sys = reduce_pitchfork(nf)
    scoreboard = validate_predictions(spec, cp, sys)

The ``turinghopf`` command line exposes the same pipeline as six cumulative
subcommands (spectrum, locate, normalform, classify, simulate, validate).
"""

from .amplitude import (
    AmplitudeSystem,
    CriticalLine,
    Equilibrium,
    PatternPrediction,
    RegionReport,
    classify_degeneracy,
    critical_lines,
    equilibria,
    planar_jacobian,
    planar_vector_field,
    reduce_pitchfork,
    reduce_transcritical,
    region_inventory,
    region_label,
    region_samples,
)
from .basis import inner_product_table, interaction_kind
from .eigensystem import EigenQuadruple, bilinear_form, normalized_quadruple
from .errors import (
    AnalysisError,
    BlowUp,
    BoundaryRoot,
    ConfigParse,
    DegenerateCoefficient,
    DegenerateJacobian,
    HygieneFailure,
    InvalidChemistry,
    MultiDimensionalKernel,
    NoConvergence,
    NoKernel,
    NonConvergence,
    NonFiniteState,
    NonPositiveDiffusion,
    OnBoundary,
    ResonantSolve,
    SimplicityFailure,
    SingularEpsMap,
    SymmetryViolation,
    UnsupportedProfile,
)
from .locator import CriticalPoint, locate
from .model import (
    ModelSpec,
    schnakenberg_builtin,
    schnakenberg_equilibrium,
    validate,
)
from .modelfile import load_model, parse_model
from .normalform import NormalForm, compute_h, compute_normal_form, cubic_coefficients
from .report import Report, determinism_key, emit, parse
from .simulator import (
    AttractorClass,
    ReactionDiffusionSystem,
    SimConfig,
    Trajectory,
    classify_attractor,
    integrate,
    physical_system,
    schnakenberg_system,
    truncated_system,
    validate_predictions,
)
from .spectral import (
    char_matrix,
    char_matrix_context,
    det_and_derivative,
    dispersion_scan,
    find_roots_in_box,
    rightmost_real_part,
    winding_number,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # model descriptions
    "ModelSpec",
    "schnakenberg_builtin",
    "schnakenberg_equilibrium",
    "validate",
    "load_model",
    "parse_model",
    # spectra
    "char_matrix_context",
    "char_matrix",
    "det_and_derivative",
    "winding_number",
    "find_roots_in_box",
    "rightmost_real_part",
    "dispersion_scan",
    # critical point
    "CriticalPoint",
    "locate",
    # eigenvectors and normal form
    "EigenQuadruple",
    "normalized_quadruple",
    "bilinear_form",
    "inner_product_table",
    "interaction_kind",
    "NormalForm",
    "compute_h",
    "cubic_coefficients",
    "compute_normal_form",
    # planar unfolding
    "AmplitudeSystem",
    "Equilibrium",
    "PatternPrediction",
    "RegionReport",
    "CriticalLine",
    "classify_degeneracy",
    "reduce_transcritical",
    "reduce_pitchfork",
    "planar_vector_field",
    "planar_jacobian",
    "equilibria",
    "region_label",
    "region_inventory",
    "region_samples",
    "critical_lines",
    # simulation
    "ReactionDiffusionSystem",
    "SimConfig",
    "Trajectory",
    "AttractorClass",
    "integrate",
    "classify_attractor",
    "physical_system",
    "schnakenberg_system",
    "truncated_system",
    "validate_predictions",
    # reports
    "Report",
    "emit",
    "parse",
    "determinism_key",
    # errors
    "AnalysisError",
    "SymmetryViolation",
    "NonPositiveDiffusion",
    "InvalidChemistry",
    "BoundaryRoot",
    "NonConvergence",
    "NoConvergence",
    "DegenerateJacobian",
    "SimplicityFailure",
    "HygieneFailure",
    "NoKernel",
    "MultiDimensionalKernel",
    "UnsupportedProfile",
    "ResonantSolve",
    "DegenerateCoefficient",
    "SingularEpsMap",
    "OnBoundary",
    "BlowUp",
    "NonFiniteState",
    "ConfigParse",
]
