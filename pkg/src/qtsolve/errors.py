"""Exception types shared across the package."""


class QTSolveError(Exception):
    """Base class for all qtsolve errors."""


class ShapeMismatch(QTSolveError):
    """Operands do not conform (contracted or elementwise dims differ)."""


class EtaSymmetryViolation(QTSolveError):
    """An input that must be eta-Hermitian is not, beyond tolerance."""


class SizeCapExceeded(QTSolveError):
    """The vectorized real system is larger than the configured cap."""


class SchemaError(QTSolveError):
    """A problem/solution file does not match the expected JSON schema."""
