"""Exception hierarchy.

Everything raised for bad data derives from :class:`DataError` so the CLI can
map it to exit code 1 in one place.
"""


class DataError(ValueError):
    """Input data is inconsistent or unusable."""


class DuplicateNodeId(DataError):
    pass


class UnknownEndpoint(DataError):
    pass


class SelfLoop(DataError):
    pass


class DuplicateLink(DataError):
    pass


class EmptyGraph(DataError):
    pass


class CsvSchemaError(DataError):
    pass


class TooFewValues(DataError):
    pass


class NonPositiveBinWidth(DataError):
    pass


class UnreachablePairs(DataError):
    def __init__(self, pairs, message=None):
        self.pairs = list(pairs)
        if message is None:
            shown = ", ".join(f"{a}->{b}" for a, b in self.pairs[:10])
            more = "" if len(self.pairs) <= 10 else f" (+{len(self.pairs) - 10} more)"
            message = f"{len(self.pairs)} unreachable pair(s): {shown}{more}"
        super().__init__(message)


class InvalidTrajectory(DataError):
    pass


class InvalidTrajectoryInBatch(InvalidTrajectory):
    def __init__(self, respondent_id, reasons):
        self.respondent_id = respondent_id
        self.reasons = list(reasons)
        detail = "; ".join(f"{r} at position {p}" for p, r in self.reasons)
        super().__init__(f"respondent {respondent_id!r}: {detail}")


class NonMonotonicTimestamps(DataError):
    pass


class NonAdjacentSnap(DataError):
    pass


class UnreachableInfill(DataError):
    pass


class ZeroDenominator(DataError):
    pass


class AllZeroFlow(DataError):
    pass


class NonPositiveMaxRent(DataError):
    pass


class DegenerateGrid(DataError):
    pass


class DisconnectedGraph(DataError):
    pass


class TooLargeForExhaustive(DataError):
    pass


class MissingCategory(DataError):
    pass


class EmptyMatrix(DataError):
    pass
