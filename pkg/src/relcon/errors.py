"""Exception hierarchy shared across the toolkit.

The CLI maps these onto its exit-code contract: ConfigError -> 1,
InfeasibleBoundError / SynthesisInfeasibleError -> 2, NumericalError -> 3.
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(ToolkitError):
    """Bad configuration file, unknown key, or invalid parameter value."""


class PoleOnGridError(ToolkitError):
    """Frequency response requested exactly at an imaginary-axis pole."""


class UnstableSystemError(ToolkitError):
    """Operation requires a stable system (all poles strictly in the LHP)."""


class InfeasibleBoundError(ToolkitError):
    """The sensitivity bound admits no controller of the supported class."""


class SynthesisInfeasibleError(ToolkitError):
    """No stabilizing controller achieved gamma <= 1; carries the best gamma."""

    def __init__(self, message: str, best_gamma: float):
        super().__init__(message)
        self.best_gamma = best_gamma


class NumericalError(ToolkitError):
    """Simulation or optimization failed numerically (non-finite data, no settling)."""


class CsvFormatError(ToolkitError):
    """Malformed CSV input; carries the 1-based offending line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(message)
        self.line_no = line_no
