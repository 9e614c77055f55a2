"""Error types shared across the toolkit."""


class DynsparseError(Exception):
    """Base class for all toolkit errors."""


class UnknownEdge(DynsparseError):
    pass


class UnknownVertex(DynsparseError):
    pass


class NonPositiveWeight(DynsparseError):
    pass


class StageMismatch(DynsparseError):
    pass


class ParameterTooSmall(DynsparseError):
    pass


class WeightedInput(DynsparseError):
    pass


class UncoveredVertex(DynsparseError):
    pass


class RecursionBudgetExceeded(DynsparseError):
    pass


class DeletionBudgetExceeded(DynsparseError):
    pass


class TooLarge(DynsparseError):
    pass


class NotSubgraph(DynsparseError):
    pass


class KernelMismatch(DynsparseError):
    pass


class MissingCertificate(DynsparseError):
    pass


class BadEpsilon(DynsparseError):
    pass


class KindMismatch(DynsparseError):
    pass


class CapacityExceeded(DynsparseError):
    pass


class StrategyExhausted(DynsparseError):
    pass


class UnnormalizedFlow(DynsparseError):
    pass


class PairDisconnected(DynsparseError):
    pass


class UnboundedFlow(DynsparseError):
    pass
