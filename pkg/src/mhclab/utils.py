"""Small parsing and arithmetic helpers for the command line."""


def safe_division(numerator: float, denominator: float, default: float = 0.0) -> float:
    """
    Safely divide with default for zero denominator.

    Args:
        numerator: The dividend
        denominator: The divisor
        default: Value to return if denominator is zero

    Returns:
        Result of division or default value
    """
    if denominator == 0:
        return default
    return numerator / denominator


def parse_int_list(text: str) -> tuple[int, ...]:
    """Parse ``"3,5"`` into ``(3, 5)``, sorted and deduplicated.

    Raises:
        ValueError: on a non-integer item.
    """
    items = [item.strip() for item in text.split(",") if item.strip()]
    return tuple(sorted({int(item) for item in items}))


def split_pair(text: str) -> tuple[str, str]:
    """Split ``"x-z1"`` or ``"3-7"`` into its two endpoint tokens."""
    left, sep, right = text.partition("-")
    if not sep or not left or not right:
        raise ValueError(f"expected an edge written U-V, got {text!r}")
    return left.strip(), right.strip()


def format_duration(seconds: float) -> str:
    """
    Format a duration in human-readable form.

    Args:
        seconds: Elapsed time in seconds

    Returns:
        Formatted time string
    """
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    if seconds < 60:
        return f"{seconds:.1f}s"
    minutes = seconds / 60
    if minutes < 60:
        return f"{minutes:.1f}m"
    return f"{minutes / 60:.1f}h"
