"""Exception hierarchy shared by every module of the package."""


class PCMError(Exception):
    """Base class for all errors raised by menger_pcm."""


class InputError(PCMError, ValueError):
    """Malformed or empty input (empty samples, point outside the carrier)."""


class DimensionError(PCMError, ValueError):
    """Vector dimension does not match the cone dimension."""


class DomainError(PCMError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PreconditionError(PCMError, ValueError):
    """An operation's documented precondition does not hold."""


class ConstructionError(PCMError):
    """An object could not be built because a sampled axiom failed.

    ``witness`` holds the offending tuple.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RangeError(ConstructionError):
    """A self-map sends a grid point outside its domain."""


class WitnessNotFoundError(PCMError):
    """A constructive search ran out of candidates."""


class FixedPointNotFoundError(PCMError):
    """No solver stage reached the requested tolerance.

    ``best`` is the best unconverged candidate seen.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class UnsupportedError(PCMError, NotImplementedError):
    """Operation not defined for the given structure kind."""


class ConfigError(PCMError):
    """Invalid space configuration document."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = ""
        if field is not None:
            where = f"{field}"
            if line is not None:
                where += f" (line {line})"
            where += ": "
        super().__init__(where + message)
        self.reason = message
