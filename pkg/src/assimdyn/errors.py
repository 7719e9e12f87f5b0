"""Exception types shared across the package."""


class AssimdynError(Exception):
    """Base class for all package errors."""


class ConfigError(AssimdynError):
    """A parameter document could not be parsed (missing key, bad type, ...)."""


class DomainError(AssimdynError, ValueError):
    """A numeric input lies outside its admissible domain."""


class InvalidParamsError(AssimdynError):
    """Analysis was refused because the parameter set failed validation."""

    def __init__(self, report):
        self.report = report
        failed = ", ".join(c.name for c in report.checks if not c.passed)
        super().__init__(f"parameter set failed validation checks: {failed}")


class BudgetError(AssimdynError):
    """An iteration budget (step-count cap) would be exceeded."""


class AssumptionError(AssimdynError):
    """A structural property guaranteed by the model analysis was violated."""
