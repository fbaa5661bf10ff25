"""Exception hierarchy shared by every module of the package."""


class NormSurfError(Exception):
    """Base class for all errors raised by normsurf."""


# triangulation
class TriangulationError(NormSurfError, ValueError):
    pass


class SlotAlreadyGlued(TriangulationError):
    pass


class MalformedPermutation(TriangulationError):
    pass


class SelfFaceGluing(TriangulationError):
    pass


class InvalidEdgePresent(TriangulationError):
    pass


class Disconnected(TriangulationError):
    pass


class NotAGluing(TriangulationError):
    pass


# normal coordinates
class DimensionMismatch(NormSurfError, ValueError):
    pass


class NotAdmissible(NormSurfError, ValueError):
    pass


class UnsupportedVector(NormSurfError, ValueError):
    pass


class BadCoordinate(NormSurfError, ValueError):
    pass


# cones
class NotInCone(NormSurfError, ValueError):
    pass


# abstract problem / SAT
class RoleViolation(NormSurfError, ValueError):
    pass


class TooFewClauses(NormSurfError, ValueError):
    pass


class IncompatibleM(NormSurfError, ValueError):
    pass


class TooManyVariables(NormSurfError, ValueError):
    pass


class AssignmentDoesNotSatisfy(NormSurfError, ValueError):
    pass


class PreconditionViolated(NormSurfError, ValueError):
    pass


# search
class BudgetExceeded(NormSurfError, RuntimeError):
    pass


# graphs and gadgets
class NotCubic(NormSurfError, ValueError):
    pass


class NotHamiltonian(NormSurfError, ValueError):
    pass


class CertificateInvalid(NormSurfError, ValueError):
    pass


class LocalMoebiusFound(NormSurfError, RuntimeError):
    pass


class TooLarge(NormSurfError, ValueError):
    pass
