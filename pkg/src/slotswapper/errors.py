"""Exception types shared across the package."""


class SlotSwapperError(Exception):
    """Base class for all package-specific errors."""


class InfeasibleScheduleError(SlotSwapperError):
    """No feasible slot assignment exists for the given flows and channel count."""

    def __init__(self, message: str, slot: int | None = None):
        super().__init__(message)
        self.slot = slot


class DegreeInfeasibleError(SlotSwapperError):
    """Requested degree bounds admit no connected graph on the node count."""


class RouteInfeasibleError(SlotSwapperError):
    """No source/destination pair yields a route within the hop bounds."""


class InstanceTooLargeError(SlotSwapperError):
    """Exact entropy was requested for an instance beyond the tractable guard."""


class ScheduleFormatError(SlotSwapperError):
    """A schedule, topology, flow, or pool file failed to parse or cross-check."""
