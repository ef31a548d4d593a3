"""Input validation helpers shared by every public entry point."""

import math
import numbers


class AlphaError(ValueError):
    """Raised when the sequence parameter is outside the range an operation supports."""


class DomainError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class PrecisionError(ArithmeticError):
    """Raised when a floating-point result is not finite or fails its own accuracy check."""


def check_finite(value, what):
    if not math.isfinite(value):
        raise PrecisionError(f"{what} is not finite ({value})")
    return value


def check_int(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    return int(value)


def check_alpha(alpha, minimum=3):
    """Return ``alpha`` as an int, or raise :class:`AlphaError` if ``alpha < minimum``."""
    alpha = check_int(alpha, "alpha")
    if alpha < minimum:
        raise AlphaError(f"alpha must be >= {minimum}, got {alpha}")
    return alpha


def check_natural(n, name="n", minimum=1):
    n = check_int(n, name)
    if n < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {n}")
    return n


def check_kind(kind):
    kind = check_int(kind, "kind")
    if kind not in (1, -1):
        raise DomainError(f"kind must be +1 or -1, got {kind}")
    return kind
