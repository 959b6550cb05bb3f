"""Exception types shared by the library and the command line."""


class ValidationError(ValueError):
    """Invalid input: a bad mixture specification, argument or domain.

    ``component`` carries the zero-based index of the offending mixture
    component when the problem is tied to one.
    """

    def __init__(self, message, component=None):
        if component is not None:
            message = "component %d: %s" % (component, message)
        super().__init__(message)
        self.component = component


class NumericalFault(ArithmeticError):
    """An iterative kernel (continued fraction, quadrature) failed to converge."""
