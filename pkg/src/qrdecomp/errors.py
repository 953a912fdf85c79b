"""Exception types shared across the package."""


class QrdecompError(Exception):
    """Base class for all package-specific failures."""


class NotOddPrimeError(QrdecompError, ValueError):
    def __init__(self, p):
        super().__init__(f"characteristic must be an odd prime, got {p}")
        self.p = p


class FieldTooLargeError(QrdecompError, ValueError):
    def __init__(self, q, cap):
        super().__init__(f"field size {q} exceeds the supported cap {cap}")
        self.q = q


class FieldTooLargeForOracleError(QrdecompError, ValueError):
    def __init__(self, q, cap):
        super().__init__(f"naive oracle is restricted to q <= {cap}, got q = {q}")
        self.q = q


class IndexOutOfRangeError(QrdecompError, IndexError):
    def __init__(self, index, q):
        super().__init__(f"element index {index} outside [0, {q})")
        self.index = index


class FieldMismatchError(QrdecompError, ValueError):
    def __init__(self, q_left, q_right):
        super().__init__(f"operands belong to different fields (q={q_left} vs q={q_right})")


class EmptySetError(QrdecompError, ValueError):
    """Raised by operations whose input set must be nonempty."""


class DomainError(QrdecompError, ValueError):
    """Raised when a numeric or configuration argument is outside its domain."""


class NotAResidueError(QrdecompError, ValueError):
    def __init__(self, c):
        super().__init__(f"scaling factor {c} is not a nonzero square")
        self.c = c


class CountingLimitError(QrdecompError, RuntimeError):
    """Internal signal: an exact subset count exceeded the configured limits."""
