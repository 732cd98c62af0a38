"""Exception types shared across the package."""


class EmQubitError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class PointInsideConductor(EmQubitError):
    pass


class IncompatibleModels(EmQubitError):
    pass


class OutOfCavity(EmQubitError):
    pass


class DegenerateEquilibrium(EmQubitError):
    pass


class ZeroSignal(EmQubitError):
    pass


class EntanglementNotRepresentable(EmQubitError):
    pass


class TooManyQubits(EmQubitError):
    pass


class IndexOutOfRange(EmQubitError):
    pass


class GroupTooLarge(EmQubitError):
    pass


class NetlistError(Exception):
    """Base for netlist problems (CLI exit code 2)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", col {column}"
            where += ": "
        super().__init__(where + message)


class ParseError(NetlistError):
    pass


class ValidationError(NetlistError):
    pass
