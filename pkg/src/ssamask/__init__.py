"""SSA-based trend masking for group-level disclosure control."""

from .errors import (
    DefinitionError,
    GroupingError,
    IngestionError,
    NumericalError,
    ParameterError,
    SsamaskError,
    StaleRevisionError,
    StateError,
    SynthesisError,
    UnknownSessionError,
    VerificationError,
)
from .masking import (
    MaskPlan,
    TrendSpec,
    UtilityReport,
    detect_extremes,
    evaluate_utility,
    generate_replacement_trend,
    mask_signal,
)
from .microdata import (
    GroupDefinition,
    Microfile,
    QuantitySignal,
    apply_modified_signal,
    build_quantity_signal,
    load_microfile,
    save_microfile,
)
from .ssa import (
    ComponentSet,
    Grouping,
    GroupingAdvice,
    Series,
    SpectralDecomposition,
    TrajectoryMatrix,
    advise_grouping,
    decompose,
    default_window_length,
    diagonal_average,
    embed,
    estimate_period,
    reconstruct,
)

__version__ = "0.1.0"
