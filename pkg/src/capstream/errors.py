"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: DataError -> 3, NumericalError -> 4,
anything argparse rejects -> 2.
"""


class CapstreamError(Exception):
    """Base class for package errors."""


class DegenerateVectorError(CapstreamError, ValueError):
    """A vector that must be nonzero has (near-)zero norm."""


class DataError(CapstreamError, ValueError):
    """Malformed or inconsistent input data (annotations, manifests, configs)."""


class NumericalError(CapstreamError, ArithmeticError):
    """Non-finite or otherwise unusable numerical state during training."""
