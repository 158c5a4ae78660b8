class NumericalIntegrityError(ValueError):
    """A numerical invariant (Hermiticity, real trace, ...) was violated."""


class ConvergenceError(RuntimeError):
    """Truncation refinement hit its hard cap without settling."""
