"""Exception hierarchy shared by the geometry and certification modules."""


class LombardiError(Exception):
    """Base class for all errors raised by lombardikit."""


class GeometryError(LombardiError, ValueError):
    pass


class DuplicatePoints(GeometryError):
    pass


class DegenerateCircle(GeometryError):
    pass


class NotIncident(GeometryError):
    """An arc has no endpoint at the requested point."""


class UnboundedImage(GeometryError):
    """The image of an arc under a Moebius map passes through infinity."""


class DegenerateTriple(GeometryError):
    pass


class CoincidentFoci(GeometryError):
    pass


class QuadError(GeometryError):
    pass


class BadAngles(QuadError):
    pass


class SelfCrossing(QuadError):
    pass


class NotEquiangular(QuadError):
    pass


class NotCyclic(QuadError):
    pass


class ConvergenceFailure(LombardiError, RuntimeError):
    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or {}


class BadParameter(LombardiError, ValueError):
    pass


class ConstructionInfeasible(LombardiError, ValueError):
    pass


class PreconditionViolated(LombardiError, ValueError):
    """Raised by the certifier; ``clause`` names the failed precondition."""

    def __init__(self, clause, message=""):
        super().__init__(f"{clause}: {message}" if message else clause)
        self.clause = clause
