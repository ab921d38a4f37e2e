from typing import Optional


class MatchingError(Exception):
    """Base class for all matching engine errors"""


class GraphFormatError(MatchingError):
    """Input could not be parsed as a graph"""

    def __init__(self, reason: str, line_no: Optional[int] = None):
        self.reason = reason
        self.line_no = line_no
        message = f"line {line_no}: {reason}" if line_no is not None else reason
        super().__init__(message)


class InvalidMatchingError(MatchingError):
    """Matching violates its invariants against the graph"""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(str(violation))


class PhaseOrderError(MatchingError):
    """Search levels were processed out of order"""


class DdfsError(MatchingError):
    """Malformed layered graph or broken double search contract"""


class PetalError(MatchingError):
    """Petal bookkeeping contract violation"""


class PathError(MatchingError):
    """Extracted path is not a valid augmenting path"""


class OracleGuardError(MatchingError):
    """Instance is too large for exhaustive enumeration"""
