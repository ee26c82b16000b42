"""Exception hierarchy shared by the whole engine.

The CLI maps these onto its exit codes: usage/parse problems (ShapeError,
InvalidValueError, UnknownVariableError, InvalidRequestError) exit 2, data
problems (DataError subclasses) exit 3, numerical divergence exits 4.
"""


class EngineError(Exception):
    """Base class for all engine errors."""


class ShapeError(EngineError):
    """A dimension does not match the declared network geometry."""


class InvalidValueError(EngineError):
    """A non-finite or out-of-domain value was supplied."""


class UnknownVariableError(EngineError):
    """A variable name is not one of the network's inputs."""


class InvalidRequestError(EngineError):
    """A scenario request is self-contradictory (duplicate labels, var_a == var_b, ...)."""


class DataError(EngineError):
    """Base class for dataset-level problems."""


class DegenerateFeatureError(DataError):
    """A feature's min equals its max, so min-max normalization is undefined."""


class EmptyDatasetError(DataError):
    """An operation that needs rows received none."""


class DivergenceError(EngineError):
    """Training produced a non-finite loss or gradient."""

    def __init__(self, message, epoch=None):
        super().__init__(message)
        self.epoch = epoch
