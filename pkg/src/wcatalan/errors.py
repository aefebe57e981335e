"""Shared exception types, mapped to CLI exit codes."""


class WeightSpecError(ValueError):
    """Unparseable weight specification string (CLI exit code 2)."""


class DomainError(ValueError):
    """Mathematically invalid input (CLI exit code 3)."""


class ResourceLimitError(RuntimeError):
    """Request exceeds a configured enumeration or window cap (CLI exit code 4)."""
