"""Block and bar rendering for degree histograms and survey funnels."""

from typing import Mapping, Sequence

from mhclab.config import BAR_WIDTH

# Block characters for sparklines (8 levels)
BLOCKS = " ▁▂▃▄▅▆▇█"


def block_sparkline(values: Sequence[float]) -> str:
    """
    Render a sparkline using block characters.

    Args:
        values: Sequence of numeric values to plot

    Returns:
        String of block characters representing the data

    Example:
        >>> block_sparkline([1, 3, 5, 7, 5, 3, 1])
        '▁▂▅█▅▂▁'
    """
    if not values:
        return ""
    low, high = min(values), max(values)
    span = high - low
    if span == 0:
        return BLOCKS[4] * len(values)
    return "".join(BLOCKS[max(1, min(8, int((v - low) / span * 8)))] for v in values)


def ratio_bar(
    left_val: float,
    right_val: float,
    width: int = 20,
    left_char: str = "█",
    right_char: str = "░",
) -> str:
    """
    Render a horizontal bar showing ratio between two values.

    Example:
        >>> ratio_bar(70, 30, width=10)
        '███████░░░'
    """
    total = left_val + right_val
    if total == 0:
        left_count = width // 2
    else:
        left_count = int((left_val / total) * width)

    left_count = max(0, min(width, left_count))
    return left_char * left_count + right_char * (width - left_count)


def mini_bar(value: float, max_val: float, width: int = 10, char: str = "█") -> str:
    """
    Render a single-value horizontal bar.

    Example:
        >>> mini_bar(75, 100, width=10)
        '███████░░░'
    """
    if max_val == 0:
        filled = 0
    else:
        filled = int((value / max_val) * width)

    filled = max(0, min(width, filled))
    return char * filled + "░" * (width - filled)


def degree_histogram(degrees: Sequence[int], width: int = BAR_WIDTH) -> list[str]:
    """One line per occurring degree: ``degree  bar  count``, highest degree first."""
    counts: dict[int, int] = {}
    for degree in degrees:
        counts[degree] = counts.get(degree, 0) + 1
    if not counts:
        return []
    peak = max(counts.values())
    label = len(str(max(counts)))
    return [
        f"{degree:>{label}} {mini_bar(counts[degree], peak, width)} {counts[degree]}"
        for degree in sorted(counts, reverse=True)
    ]


def funnel_bars(stats: Mapping[str, int], stages: Sequence[str], width: int = BAR_WIDTH) -> list[str]:
    """Survivors against rejections at each funnel stage."""
    remaining = sum(stats.get(stage, 0) for stage in stages)
    lines = []
    label = max((len(stage) for stage in stages), default=0)
    for stage in stages[:-1]:
        rejected = stats.get(stage, 0)
        survivors = remaining - rejected
        lines.append(f"{stage:<{label}} {ratio_bar(survivors, rejected, width)} -{rejected}")
        remaining = survivors
    return lines
