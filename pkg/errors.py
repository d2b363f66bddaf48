from typing import Any, FrozenSet, Optional


class DecompositionError(ValueError):
    """
    Base class for every error raised by the decomposition toolkit
    """

    code = 'error'

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_line(self) -> str:
        return f"error: {self.code} {self.message}"


class StructureError(DecompositionError):
    """
    Invalid 2-structure, involution or tree shape
    """

    code = 'structure'


class ParseError(DecompositionError):
    """
    Input file violates the text format
    """

    code = 'parse'

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.reason = message


class NotCographError(DecompositionError):
    code = 'not-cograph'

    def __init__(self, prime_vertices: FrozenSet[int]):
        super().__init__(f"not a cograph (prime node over {sorted(prime_vertices)})")
        self.prime_vertices = prime_vertices


class NotSwitchCographError(DecompositionError):
    code = 'not-switch-cograph'

    def __init__(self, prime_vertices: FrozenSet[int], witness: Optional[Any] = None):
        message = f"not a switch cograph (prime node over {sorted(prime_vertices)})"
        if witness is not None:
            message += f"; induced {witness.name} on {list(witness.vertices)}"
        super().__init__(message)
        self.prime_vertices = prime_vertices
        self.witness = witness


class CapExceededError(DecompositionError):
    """
    An enumeration or brute-force search exceeded its configured cap
    """

    code = 'cap'

    def __init__(self, what: str, cap: int, reached: int):
        super().__init__(f"{what} exceeds cap {cap} (reached {reached})")
        self.cap = cap
        self.reached = reached


class ExpressionError(DecompositionError):
    code = 'expression'
