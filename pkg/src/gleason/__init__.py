"""Frame functions, density operators, and Greechie-diagram state analysis."""

from .density import (
    BadWeights,
    DensityOperator,
    NotNormalized,
    NotPositiveSemidefinite,
    Projector,
    PurityReport,
    StateVector,
    TraceNotOne,
    born_probability,
    mix,
    pure_state,
    purity,
    spectral_mixture,
)
from .frame import (
    FrameFunction,
    FrameOracle,
    NotAFrameFunction,
    NotPositive,
    NotQuantum,
    NotUnit,
    SampledReconstruction,
    Signature,
    classify,
    evaluate,
    from_density,
    reconstruct_density,
    reconstruct_form,
    reconstruct_from_samples,
    signature,
)
from .greechie import (
    Decomposition,
    DuplicateDirection,
    GreechieDiagram,
    GreechieFile,
    GreechieFormatError,
    InfeasibilityCertificate,
    InvalidRealization,
    InvalidState,
    ProbabilityAssignment,
    QuantumFeasibility,
    TwoValuedState,
    UnknownAtom,
    VectorRealization,
    Violation,
    builtin_spin_half_family,
    builtin_wright_pentagon,
    check_realization,
    convex_decomposition,
    enumerate_two_valued_states,
    is_polytope_vertex,
    parse_greechie_text,
    quantum_feasibility,
    validate_state,
)
from .numerics import (
    DEFAULT_TOL,
    DimensionMismatch,
    EigenDecomposition,
    LeastSquaresSolution,
    LinearlyDependent,
    MatrixFormatError,
    SymMatrix,
    eigh,
    format_matrix_text,
    lp_feasible,
    orthonormalize,
    parse_matrix_text,
    rank,
    solve_least_squares,
)

__version__ = "0.1.0"
