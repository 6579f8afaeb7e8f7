"""Streaming concept-drift detection toolkit.

Streams are sliced into fixed-length windows, per-window features feed a
threshold indicator, and five classical change detectors share one streaming
driver. A compliance ledger records which detectors satisfy the update /
i.i.d. / reset / bias-balance requirements, and an evaluation harness scores
detections against known drift points.
"""

from ._ext import BACKEND as KERNEL_BACKEND
from .compliance import (
    BrokenCusumDetector,
    ComplianceRecord,
    ProbeOutcome,
    probe_r1,
    probe_r3,
    run_probe_suite,
    table2,
)
from .detectors import (
    AdaptiveWindowDetector,
    CrossRecurrenceDetector,
    CusumDetector,
    Detector,
    DetectorConfig,
    DetectorKind,
    FourierDistanceDetector,
    PageHinkleyDetector,
    PhtState,
    PHT_START,
    adwin_check,
    build_detector,
    crcdd_step,
    cusum_step,
    max_diagonal_length,
    pht_step,
    run_detector,
    udft_distance,
    udft_features,
    udft_step,
)
from .embedding import (
    EmbeddingParams,
    PhaseSpace,
    PhaseState,
    SupervisedPairs,
    adaptive_radius,
    embed,
    join_supervised,
    neighbor_count,
    neighbors_within,
    to_supervised,
)
from .errors import (
    DriftKitError,
    IncompatibleFeaturesError,
    IncompatibleSpacesError,
    InsufficientStatesError,
    InvalidParameterError,
    ShortStreamWarning,
    WindowTooShortError,
)
from .indicator import (
    DriftEvent,
    FeatureHistory,
    FeatureVector,
    IndicatorConfig,
    band_excess,
    convergence_trace,
    evaluate as indicator_evaluate,
    track,
)
from .metrics import EvaluationReport, evaluate as evaluate_events
from .stream import (
    GroundTruth,
    Observation,
    StreamWindow,
    WindowIterator,
    generate_logistic_map,
    generate_lorenz,
    generate_piecewise_gaussian,
    window_all,
    window_stream,
)

__version__ = "0.1.0"
