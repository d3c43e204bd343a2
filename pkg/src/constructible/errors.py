"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line: input errors
(malformed or inconsistent input) map to 2, validation failures (the input is
well formed but violates an axiom) map to 1.
"""


class ConstructibleError(Exception):
    exit_code = 2


class InputError(ConstructibleError):
    exit_code = 2


class ValidationFailure(ConstructibleError):
    exit_code = 1


class ParseError(InputError):
    def __init__(self, message, line=None, column=None, path=None):
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.line = line
        self.column = column
        self.path = path


# complex
class DuplicateVertexInSimplex(InputError):
    pass


class RemovedNotSubcomplex(InputError):
    pass


class UnknownCell(InputError):
    pass


class NotAPartition(ValidationFailure):
    pass


class StratumDisconnected(ValidationFailure):
    pass


class FrontierViolation(ValidationFailure):
    pass


# cosheaf
class MissingValue(InputError):
    pass


class MissingMap(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class DiamondFailure(ValidationFailure):
    pass


class InvertibilityFailure(ValidationFailure):
    pass


class EmptyOpen(InputError):
    pass


class WrongCoefficients(InputError):
    pass


class NonComposableWord(InputError):
    pass


class IllegalInverse(ValidationFailure):
    pass


class NotACover(InputError):
    pass


# zigzag
class NotAPath(InputError):
    pass


class WrongDimension(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class NegativeMultiplicity(ValidationFailure):
    pass


# ingest
class NotSimplicial(ValidationFailure):
    pass


class NotStratumPreserving(ValidationFailure):
    pass
