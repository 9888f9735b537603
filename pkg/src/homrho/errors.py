"""Exception types shared across the package."""


class StructureError(ValueError):
    """Objects from incompatible structures were combined (rank, arity, algebra)."""


class DomainError(ValueError):
    """An operation received input outside its domain (e.g. an inhomogeneous element)."""


class SingularError(ArithmeticError):
    """A matrix or map that must be invertible is not; carries the obstruction."""

    def __init__(self, message, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class ConsistencyError(ArithmeticError):
    """Two routes to the same quantity disagree; carries the symbolic residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SpecError(ValueError):
    """Syntax or semantic error in spec text, with a 1-based source location."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)
