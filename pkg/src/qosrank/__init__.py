"""QoS-aware service selection: federate QoS sources, normalize, rank, prioritize.

The pipeline pulls per-domain quality attributes from an ordered list of
repositories (declarative DataBank files, live Monitor endpoints), merges
them first-repository-wins, projects values and stakeholder targets into
[0,1], scores every service against the target vector with a selectable
similarity or distance measure, and finally orders by mandatory-requirement
fulfillment before score.
"""

from .errors import (
    EmptyRequirementsError,
    NoComparableAttributesError,
    NoQosSourcesError,
    QosRankError,
    RepositoryUnreachableError,
    WireFormatError,
)
from .federation import (
    DataBankDocument,
    FederatedView,
    RepositoryReport,
    databank_violations,
    federate,
    fetch_repository,
    load_databank,
    merge,
    parse_databank,
)
from .model import (
    Polarity,
    QoSMatrix,
    QualityValue,
    RankedEntry,
    RepositoryDescriptor,
    RepositoryKind,
    Requirement,
    RequirementVector,
    ServiceRecord,
    validate_matrix,
    validate_requirements,
)
from .monitor import (
    MonitorDaemon,
    ProbeSample,
    ProbeTarget,
    SlidingWindow,
    build_monitor_server,
    derive_attributes,
    load_probe_config,
    probe_once,
)
from .normalize import NormalizerId, normalize, normalize_column, parse_normalizer
from .pipeline import (
    SelectionRequest,
    SelectionResult,
    ServiceDiagnostics,
    cross_priority_order,
    evaluate_mandatory,
    run_selection,
    select_from_view,
)
from .rank import RankerId, parse_ranker, rank_services, score

__version__ = "0.1.0"

__all__ = [
    "DataBankDocument",
    "EmptyRequirementsError",
    "FederatedView",
    "MonitorDaemon",
    "NoComparableAttributesError",
    "NoQosSourcesError",
    "NormalizerId",
    "Polarity",
    "ProbeSample",
    "ProbeTarget",
    "QoSMatrix",
    "QosRankError",
    "QualityValue",
    "RankedEntry",
    "RankerId",
    "RepositoryDescriptor",
    "RepositoryKind",
    "RepositoryReport",
    "RepositoryUnreachableError",
    "Requirement",
    "RequirementVector",
    "SelectionRequest",
    "SelectionResult",
    "ServiceDiagnostics",
    "ServiceRecord",
    "SlidingWindow",
    "WireFormatError",
    "build_monitor_server",
    "cross_priority_order",
    "databank_violations",
    "derive_attributes",
    "evaluate_mandatory",
    "federate",
    "fetch_repository",
    "load_databank",
    "load_probe_config",
    "merge",
    "normalize",
    "normalize_column",
    "parse_databank",
    "parse_normalizer",
    "parse_ranker",
    "probe_once",
    "rank_services",
    "run_selection",
    "score",
    "select_from_view",
    "validate_matrix",
    "validate_requirements",
]
