"""Exception hierarchy. Each error carries the machine-readable code and exit
status used by the command-line front end."""


class ChipFireError(Exception):
    code = "Error"
    exit_code = 1


class Singular(ChipFireError, ZeroDivisionError):
    code = "Singular"


class NotMMatrix(ChipFireError, ValueError):
    code = "NotMMatrix"
    exit_code = 3

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class IndexOutOfRange(ChipFireError, IndexError):
    code = "IndexOutOfRange"


class NegativeInput(ChipFireError, ValueError):
    code = "NegativeInput"


class CapExceeded(ChipFireError, RuntimeError):
    code = "CapExceeded"


class SearchTooLarge(ChipFireError, RuntimeError):
    code = "SearchTooLarge"
    exit_code = 4


class DimensionTooLarge(ChipFireError, ValueError):
    code = "DimensionTooLarge"
    exit_code = 4


class NoGlobalSink(ChipFireError, ValueError):
    code = "NoGlobalSink"


class FormatError(ChipFireError, ValueError):
    code = "FormatError"
    exit_code = 5
