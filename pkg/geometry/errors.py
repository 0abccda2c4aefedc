from typing import Optional


class ZoneLabError(Exception):
    """
    Base class for every error raised by the zonelab packages.
    """


class GeometryError(ZoneLabError, ValueError):
    """
    A geometric precondition does not hold for the given input.
    """


class SingularTriple(GeometryError):
    pass


class ParallelPlanes(GeometryError):
    pass


class ParallelLines(GeometryError):
    pass


class NotGeneralPosition(GeometryError):
    pass


class BoxTooSmall(GeometryError):
    pass


class BoxGenericityViolation(GeometryError):
    pass


class DegenerateQuery(GeometryError):
    pass


class UnknownPlane(GeometryError):
    pass


class DegenerateInstance(GeometryError):
    """
    A Theorem 1 instance violates general position; the message names the predicate.
    """


class InsufficientData(ZoneLabError, ValueError):
    pass


class GenerationExhausted(ZoneLabError, RuntimeError):
    pass


class ConfigError(ZoneLabError, ValueError):
    pass


class ParseError(ZoneLabError, ValueError):
    def __init__(self, message: str, line_number: int, path: Optional[str] = None):
        self.line_number = line_number
        self.path = path
        location = f"{path}:{line_number}" if path else f"line {line_number}"
        super().__init__(f"{location}: {message}")


class InstanceIOError(ZoneLabError, OSError):
    pass


class VerificationError(ZoneLabError, AssertionError):
    """
    A counting identity or inequality failed on a concrete instance.

    Args:
        message (str): What failed.
        seed (int, optional): Experiment seed of the offending run.
        n (int, optional): Number of generators of the instance.
        trial (int, optional): Trial index within n.
        dump (str, optional): Replayable planes/lines file text of the instance.
    """

    def __init__(
        self,
        message: str,
        seed: Optional[int] = None,
        n: Optional[int] = None,
        trial: Optional[int] = None,
        dump: Optional[str] = None,
    ):
        self.seed = seed
        self.n = n
        self.trial = trial
        self.dump = dump
        super().__init__(message)

    def annotate(
        self, seed: int, n: int, trial: int, dump: Optional[str]
    ) -> "VerificationError":
        self.seed = seed
        self.n = n
        self.trial = trial
        if self.dump is None:
            self.dump = dump
        return self

    def __str__(self) -> str:
        message = super().__str__()
        if self.seed is None:
            return message
        return f"{message} (seed={self.seed}, n={self.n}, trial={self.trial})"
