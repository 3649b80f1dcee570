"""Exception hierarchy.  ``PreconditionError`` subclasses map to CLI exit code 2."""


class MckatzError(Exception):
    pass


class PreconditionError(MckatzError, ValueError):
    pass


class ConductorMismatch(PreconditionError):
    pass


class NotReal(PreconditionError):
    pass


class EigenvalueOutsideField(PreconditionError):
    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class ProductViolation(PreconditionError):
    pass


class UnsupportedParameter(PreconditionError):
    pass


class IrreducibilityError(PreconditionError):
    pass


class ResonanceError(PreconditionError):
    pass


class HypothesisError(PreconditionError):
    pass


class DegenerateError(PreconditionError):
    pass


class NonRationalExponent(PreconditionError):
    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class NotDivisible(PreconditionError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ScriptStepError(PreconditionError):
    def __init__(self, step, cause):
        super().__init__(f"step {step}: {cause}")
        self.step = step
        self.cause = cause
