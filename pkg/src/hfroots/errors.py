"""Exception types shared across the toolkit.

Each maps onto one CLI exit code (see ``hfroots.cli``).
"""


class InvalidInput(ValueError):
    """Bad Seifert data, knot input, or arguments (exit code 2)."""


class CapExceeded(RuntimeError):
    """An enumeration or resource cap would be exceeded (exit code 3)."""


class StabilizationError(RuntimeError):
    """A truncated computation failed to stabilize below its cap (exit code 4)."""
