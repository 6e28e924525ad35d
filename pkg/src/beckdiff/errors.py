"""Exception hierarchy shared by every module of the package."""


class BeckDiffError(Exception):
    """Base class for all errors raised by beckdiff."""


class InputError(BeckDiffError, ValueError):
    """Malformed input: bad JSON, grammar violations, inconsistent shapes."""


class ZeroDenominator(InputError, ZeroDivisionError):
    pass


class NotInvertible(BeckDiffError, ZeroDivisionError):
    pass


class NotPrime(InputError):
    pass


class PolynomialSyntaxError(InputError):
    """Parse failure; ``position`` is the 0-based offset in the source text."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(InputError):
    pass


class NegativeExponent(InputError):
    pass


class MixedContext(InputError):
    """Operands live over different variable lists or base rings."""


class NonFieldBase(InputError):
    pass


class ResourceLimit(BeckDiffError):
    """A configured size bound was exceeded."""


class RankMismatch(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class DuplicateGenerator(InputError):
    pass


class UnknownVariableInRelation(InputError):
    pass


class InfiniteDimensional(BeckDiffError):
    pass


class NonFiniteBase(BeckDiffError):
    pass


class BaseMismatch(InputError):
    pass


class NotSurjective(BeckDiffError):
    pass


class NotARingHom(BeckDiffError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidTable(InputError):
    """A finite ring table violates a ring axiom; ``witness`` names the instance."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAModule(BeckDiffError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class KernelSquareNonzero(BeckDiffError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonFinite(BeckDiffError):
    pass


class NotAssociative(InputError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoIdentity(InputError):
    pass


class NoInverse(InputError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAGroupHom(BeckDiffError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class KernelNonAbelian(BeckDiffError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ActionIllDefined(BeckDiffError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
