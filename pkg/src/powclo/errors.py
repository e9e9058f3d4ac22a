"""Exception hierarchy.

Every error the library raises on bad input derives from `PowcloError`, so the
CLI can map them to exit status 2 in one place.
"""


class PowcloError(Exception):
    """Base class for all library errors."""


class CapExceeded(PowcloError):
    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class SchemaError(PowcloError):
    pass


class UnknownSymbol(PowcloError):
    pass


class ArityMismatch(PowcloError):
    pass


class UnboundVariable(PowcloError):
    pass


class ReservedSymbol(PowcloError):
    pass


class HasConstants(PowcloError):
    pass


class EmptyArgument(PowcloError):
    pass


class NotACongruence(PowcloError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TildeMismatch(PowcloError):
    pass


class IllDefined(PowcloError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAMode(PowcloError):
    pass


class NotAClosureOperator(PowcloError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ClosureIncompatible(PowcloError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAssociative(PowcloError):
    pass


class NotNSemigroup(PowcloError):
    pass


class NotASemilattice(PowcloError):
    pass


class NoLeastElement(PowcloError):
    pass


class IdentitySyntaxError(PowcloError):
    def __init__(self, message, line, col):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


class UnknownSuite(PowcloError):
    pass
