"""Error hierarchy shared by the geometry, classifier and cli packages."""


class RuledFormsError(Exception):
    """Base class for domain errors; `code` is what the CLI reports"""

    code = "RuledFormsError"

    def __init__(self, detail: str = ""):
        self.detail = detail
        super().__init__(f"{self.code}: {detail}" if detail else self.code)


class InvalidCurveType(RuledFormsError):
    code = "InvalidCurveType"


class MixedCurves(RuledFormsError):
    code = "MixedCurves"


class InconsistentLabels(RuledFormsError):
    """Two points share an id but differ, or a conjugate partnering is not an involution"""
    code = "InconsistentLabels"


class EmptyF(RuledFormsError):
    code = "EmptyF"


class InvalidPresentation(RuledFormsError):
    code = "InvalidPresentation"


class RealLocusOutsideRealPart(RuledFormsError):
    code = "RealLocusOutsideRealPart"


class RankOutOfRange(RuledFormsError):
    code = "RankOutOfRange"


class NotApplicable(RuledFormsError):
    code = "NotApplicable"


class UnsupportedRank(RuledFormsError):
    code = "UnsupportedRank"


class OddDimension(RuledFormsError):
    code = "OddDimension"


class EvenDimension(RuledFormsError):
    code = "EvenDimension"


class NotEmptyBase(RuledFormsError):
    code = "NotEmptyBase"


class InvalidKey(RuledFormsError):
    code = "InvalidKey"


class SchemaError(ValueError):
    """Malformed input document; not a domain error (CLI exit status 2)"""
