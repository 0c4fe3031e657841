"""Exception hierarchy.

Every input or validation problem raises a QdagError subclass. The CLI turns
`exit_code` into the process status and the service turns `http_status` into
an HTTPException.
"""

from typing import Optional


class QdagError(Exception):
    """Base class for all reported errors."""

    exit_code = 2
    http_status = 400

    def __init__(self, message: str, location: Optional[str] = None):
        self.message = message
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


# --- graph model ---
class EdgeNotForward(QdagError):
    pass


class SinkOrderViolation(QdagError):
    pass


class DuplicateEdge(QdagError):
    pass


class IndexOutOfRange(QdagError):
    pass


class InvalidParams(QdagError):
    pass


# --- file formats ---
class FormatError(QdagError):
    pass


class IoError(QdagError):
    pass


# --- oracle / primitives / config ---
class OutOfRange(QdagError):
    pass


class EmptyDomain(QdagError):
    pass


class InvalidConfig(QdagError):
    http_status = 422


# --- dp engine ---
class MissingCombiner(QdagError):
    pass


class TypeMismatch(QdagError):
    pass


# --- circuits ---
class FanoutOne(QdagError):
    pass


class VarWithChildren(QdagError):
    pass


class MissingPolarity(QdagError):
    pass


class RootHasParent(QdagError):
    pass


class XorPresent(QdagError):
    pass


class NonBinaryXor(QdagError):
    pass


class MissingVariable(QdagError):
    pass


class ConflictingAssignment(QdagError):
    pass


# --- zhegalkin ---
class AnfSyntaxError(QdagError):
    """Grammar violation; `offset` is the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(message, location=f"offset {offset}")


class EmptyInput(QdagError):
    pass


class VariableIndexZero(AnfSyntaxError):
    pass


class ConstantPolynomial(QdagError):
    """No circuit exists for k = 0; `constant` carries the function value."""

    def __init__(self, constant: int):
        self.constant = constant
        super().__init__(f"polynomial is the constant {constant}; no circuit to build")


class DegenerateSingleTerm(QdagError):
    """k = 1, t_1 = 1: the function is the literal x_var (negated when a = 1)."""

    def __init__(self, variable: int, negated: bool):
        self.variable = variable
        self.negated = negated
        literal = f"NOT x{variable}" if negated else f"x{variable}"
        super().__init__(f"polynomial is the literal {literal}")


# --- paths / oracles ---
class SourceOutOfRange(QdagError):
    pass


class TooLarge(QdagError):
    pass


class InvariantViolation(QdagError):
    """A simulator contract was broken; never caused by user input."""

    exit_code = 3
    http_status = 500
