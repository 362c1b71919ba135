"""Exception types shared across the package."""


class ConvergenceError(ArithmeticError):
    """A series or continued fraction cannot converge for the given parameters."""


class IterationLimitError(RuntimeError):
    """An iterative evaluation hit its iteration cap before reaching the target accuracy."""


class DegeneracyError(ValueError):
    """Input violates the genericity assumptions of a geometric routine."""


class InsufficientSampleError(ValueError):
    """A statistical routine received too few samples to be meaningful."""


class MosaicError(RuntimeError):
    """Internal consistency check failed while assembling or annotating a mosaic."""
