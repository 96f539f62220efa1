"""Exception hierarchy.  Every error raised on purpose derives from
:class:`SpectralOpsError` so the CLI can map it to exit status 2."""


class SpectralOpsError(Exception):
    pass


# algebra kernel
class DivisionByZero(SpectralOpsError, ZeroDivisionError):
    pass


class InvalidProjectivePoint(SpectralOpsError, ValueError):
    pass


class UnsupportedExtension(SpectralOpsError):
    pass


# spectral surface
class ZeroForm(SpectralOpsError, ValueError):
    pass


class DegenerateGluing(SpectralOpsError):
    pass


class DegeneratePencil(SpectralOpsError):
    pass


class NonGenericData(SpectralOpsError):
    pass


# Baker-Akhiezer module
class InvalidLift(SpectralOpsError, ValueError):
    pass


class DegenerateModule(SpectralOpsError):
    pass


class WitnessUndefined(SpectralOpsError):
    pass


# solver
class NotAFunctionOnGamma(SpectralOpsError, ValueError):
    pass


class SpectralParameterOnly(SpectralOpsError, ValueError):
    pass


class BasisNotGenerating(SpectralOpsError):
    pass


class BasisNotFree(SpectralOpsError):
    pass


# session files
class ParseError(SpectralOpsError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class ValidationError(SpectralOpsError, ValueError):
    pass
