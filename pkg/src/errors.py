"""
Exceptions raised across the package.

Input problems derive from ValueError so the CLI can report them uniformly;
EngineContradiction signals a fault in the rule engine itself.
"""


class DimensionMismatch(ValueError):
    pass


class NotSquare(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class RootIsolationError(ValueError):
    """Roots could not be separated at the requested precision; retry with more bits."""

    def __init__(self, message: str, precision: int):
        super().__init__(message)
        self.precision = precision


class PrecisionError(ValueError):
    """Working precision is too low to search relations up to the height bound."""

    def __init__(self, message: str, precision: int):
        super().__init__(message)
        self.precision = precision


class JacobiViolation(ValueError):
    def __init__(self, i: int, j: int, k: int, residual: list):
        self.triple = (i, j, k)
        self.residual = residual
        terms = ", ".join(f"{c}*e{idx + 1}" for idx, c in enumerate(residual) if c)
        super().__init__(
            f"Jacobi identity fails on basis triple (e{i + 1}, e{j + 1}, e{k + 1}); "
            f"residual {terms}"
        )


class AntisymmetryViolation(ValueError):
    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(
            f"brackets [e{i + 1}, e{j + 1}] and [e{j + 1}, e{i + 1}] are not negatives"
        )


class RepMismatch(ValueError):
    def __init__(self, i: int, j: int, reason: str = "bracket mismatch"):
        self.pair = (i, j)
        super().__init__(
            f"matrix realization fails on (e{i + 1}, e{j + 1}): {reason}"
        )


class NotARoot(ValueError):
    pass


class UnsupportedEigenvalue(ValueError):
    pass


class InconsistentDescriptor(ValueError):
    def __init__(self, fields: tuple[str, str], message: str):
        self.fields = fields
        super().__init__(f"inconsistent manifold fields {fields[0]}/{fields[1]}: {message}")


class ExpressionSyntaxError(ValueError):
    def __init__(self, offset: int, expected: list[str], text: str = ""):
        self.offset = offset
        self.expected = sorted(set(expected))
        found = repr(text[offset]) if offset < len(text) else "end of input"
        super().__init__(
            f"syntax error at offset {offset}: expected one of "
            f"{', '.join(self.expected)}, found {found}"
        )


class ArityError(ValueError):
    pass


class UnknownName(ValueError):
    pass


class UnsupportedParameters(ValueError):
    pass


class FormatError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class IndexOutOfRange(FormatError):
    pass


class DuplicateTriple(FormatError):
    pass


class EngineContradiction(RuntimeError):
    def __init__(self, possible: list[str], impossible: list[str]):
        self.possible = possible
        self.impossible = impossible
        super().__init__(
            f"rules {possible} conclude POSSIBLE while {impossible} conclude IMPOSSIBLE"
        )
