"""Exception hierarchy shared by every ncann module."""


class NcannError(Exception):
    """Base class for all library errors."""


class DSLSyntaxError(NcannError):
    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class InhomogeneousRuleError(NcannError):
    pass


class UnknownFamilyError(NcannError):
    pass


class FieldError(NcannError):
    pass


class IndexBoundsError(NcannError):
    pass


class DegreeOverflowError(NcannError):
    pass


class SliceTooLargeError(NcannError):
    pass


class UnsupportedRingError(NcannError):
    pass


class ZeroElementError(NcannError):
    """Raised for l(0); the length of zero is -inf and is carried on the error."""

    length = float("-inf")


class MixedComponentError(NcannError):
    pass


class NoInverseError(NcannError):
    pass


class RelationViolationError(NcannError):
    def __init__(self, message, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class PreconditionError(NcannError):
    pass


class VacuousQueryError(NcannError):
    """The full set already has a nonzero annihilator in the slice."""

    def __init__(self, message, basis=None):
        self.basis = basis
        super().__init__(message)


class MembershipError(NcannError):
    pass


class NoGeneratorError(NcannError):
    pass


class RingMismatchError(NcannError):
    pass
