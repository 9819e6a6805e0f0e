"""Exception types shared across the package."""


class ShapeMismatchError(ValueError):
    """Operands have incompatible dimensions."""


class MembershipError(ValueError):
    """A matrix failed the Sp(n,1) admission check.

    Carries the max-norm residual of the form-preservation equation and the
    index of the worst offending entry.
    """

    def __init__(self, residual, worst_index):
        self.residual = residual
        self.worst_index = worst_index
        super().__init__(
            "matrix does not preserve the Hermitian form: "
            f"residual {residual:.3e} at entry {worst_index}"
        )


class ParameterError(ValueError):
    """A normal-form parameter set violates one of its constraints."""


class ClassificationError(ValueError):
    """An operation requires an element of a different dynamical type."""


class NumericError(ArithmeticError):
    """A numerical routine could not certify its result.

    Carries a residual report where available.
    """

    def __init__(self, message, residual=None):
        self.residual = residual
        if residual is not None:
            message = f"{message} (residual {residual:.3e})"
        super().__init__(message)
