"""Exception hierarchy shared by every qce module."""


class QCEError(Exception):
    """Base class; ``kind`` is the short tag used in CLI diagnostics."""

    kind = "error"


class DimensionMismatch(QCEError, ValueError):
    kind = "dimension"


class ScaleError(QCEError, ValueError):
    """A score or benchmark coordinate falls outside its scale."""

    kind = "scale"


class WeightError(QCEError, ValueError):
    kind = "weights"


class DegenerateDimension(QCEError, ValueError):
    kind = "degenerate"


class EmptyClusterError(QCEError, ValueError):
    kind = "empty-cluster"


class SchemaError(QCEError):
    kind = "schema"

    def __init__(self, column, message=None):
        self.column = column
        super().__init__(message or f"missing column {column!r}")


class DuplicateRecordError(QCEError):
    kind = "duplicate"


class RangeError(QCEError, ValueError):
    kind = "range"

    def __init__(self, message, row=None, source=None):
        self.row = row
        where = ":".join(str(p) for p in (source, row) if p is not None)
        super().__init__(f"{where}: {message}" if where else message)


class EmptyPanelError(QCEError):
    kind = "empty-panel"


class UnknownBenchmark(QCEError, KeyError):
    kind = "unknown-benchmark"

    def __str__(self):
        return self.args[0] if self.args else ""


class UnknownCountry(QCEError, KeyError):
    kind = "unknown-country"

    def __str__(self):
        return self.args[0] if self.args else ""


class ParseError(QCEError):
    """Malformed input document; ``location`` is ``line:col`` or a JSON path."""

    kind = "parse"

    def __init__(self, message, location=None):
        self.message = message
        self.location = location
        super().__init__(message if location is None else f"{location}: {message}")


class ConfigError(QCEError):
    kind = "config"
