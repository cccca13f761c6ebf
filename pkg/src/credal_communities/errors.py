"""Exception types shared across the package.

Input problems (bad files, bad parameters) derive from :class:`InputError`;
numerical breakdowns derive from :class:`NumericalError`. The CLI maps the
first family to exit code 1 and the second to exit code 2.
"""


class CredalError(Exception):
    pass


class InputError(CredalError, ValueError):
    pass


class GraphFormatError(InputError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NumericalError(CredalError, ArithmeticError):
    pass


class EigensolverError(NumericalError):
    def __init__(self, message, iterations=None):
        if iterations is not None:
            message = f"{message} (after {iterations} iterations)"
        super().__init__(message)
        self.iterations = iterations


class DegeneratePartitionError(NumericalError):
    def __init__(self, message, cluster=None):
        if cluster is not None:
            message = f"{message} (cluster {cluster})"
        super().__init__(message)
        self.cluster = cluster
