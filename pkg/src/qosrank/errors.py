"""Exception types shared across the selection engine."""


class QosRankError(Exception):
    """Base class for all engine errors."""


class EmptyRequirementsError(QosRankError):
    """Raised when a requirement vector with no entries reaches the pipeline."""


class NoComparableAttributesError(QosRankError):
    """Raised when every coordinate of a service vector is undefined."""


class RepositoryUnreachableError(QosRankError):
    """A single repository could not be read or contacted."""

    def __init__(self, endpoint: str, detail: str):
        super().__init__(f"repository {endpoint} unreachable: {detail}")
        self.endpoint = endpoint
        self.detail = detail


class NoQosSourcesError(QosRankError):
    """Every repository in the request failed; there is nothing to rank from."""

    def __init__(self, failures: list[tuple[str, str]]):
        super().__init__("no QoS sources available")
        # (endpoint, detail) per failed repository
        self.failures = list(failures)


class WireFormatError(QosRankError):
    """A document (request body, databank file, config file) failed to parse."""
