"""Exception hierarchy.  Every error raised on purpose derives from SrDegreeError."""


class SrDegreeError(Exception):
    pass


class PreconditionError(SrDegreeError, ValueError):
    """An operation was called outside its documented domain."""


class MalformedComplex(SrDegreeError, ValueError):
    pass


class DuplicateVertexInFacet(MalformedComplex):
    pass


class FacetSizeError(MalformedComplex):
    pass


class NonOrientable(SrDegreeError):
    pass


class DenominatorVanishes(SrDegreeError, ZeroDivisionError):
    """A sampled point is a pole; callers resample."""


class NonInvertibleJetDenominator(DenominatorVanishes):
    pass


class PDenominator(SrDegreeError, ZeroDivisionError):
    pass


class PsiCharacteristicRange(SrDegreeError, ValueError):
    pass


class ExactModeRequired(SrDegreeError):
    pass


class AuxiliarySpecializationDegenerate(SrDegreeError):
    pass
