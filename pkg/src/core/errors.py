"""Exceptions raised by the benchmark."""


class BenchmarkError(Exception):
    """Base class of every error raised by the benchmark."""

    def __init__(self, message="Benchmark error."):
        self.message = message
        super().__init__(self.message)


class PartitionError(BenchmarkError):
    """Exception raised when a partition is malformed or partitions are incompatible."""

    def __init__(self, message="Invalid partition."):
        super().__init__(message)


class NothingToCompareError(PartitionError):
    """Exception raised when two partitions share no jointly defined (node, step) tuple."""

    def __init__(self, message="Nothing to compare: no jointly defined (node, step) tuple."):
        super().__init__(message)


class ScenarioError(BenchmarkError):
    """Exception raised when a scenario cannot be executed."""

    def __init__(self, message="Invalid scenario."):
        super().__init__(message)


class ScenarioParseError(ScenarioError):
    """Exception raised when a scenario script cannot be parsed."""

    def __init__(self, message="Malformed scenario script.", line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class GenerationError(BenchmarkError):
    """Exception raised when edges cannot be generated for a community structure."""

    def __init__(self, message="Edge generation failed."):
        super().__init__(message)


class DetectionError(BenchmarkError):
    """Exception raised by community detection methods."""

    def __init__(self, message="Community detection failed."):
        super().__init__(message)


class MetricError(BenchmarkError):
    """Exception raised when a quality function cannot be computed."""

    def __init__(self, message="Score cannot be computed."):
        super().__init__(message)


class FormatError(BenchmarkError):
    """Exception raised when a file does not follow its format."""

    def __init__(self, message="Malformed file.", line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)
