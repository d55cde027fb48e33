from mhclab.sparkline import block_sparkline, degree_histogram, funnel_bars, mini_bar, ratio_bar


def test_mini_bar_zero_max():
    assert mini_bar(10, 0, width=5) == "░" * 5


def test_ratio_bar():
    assert ratio_bar(70, 30, width=10) == "█" * 7 + "░" * 3


def test_block_sparkline():
    assert block_sparkline([]) == ""
    assert block_sparkline([3, 3]) == "▄▄"
    assert block_sparkline([1, 3, 5, 7, 5, 3, 1]) == "▁▂▅█▅▂▁"


def test_degree_histogram_wheel():
    lines = degree_histogram([5, 3, 3, 3, 3, 3], width=5)
    assert lines == ["5 █░░░░ 1", "3 █████ 5"]


def test_funnel_bars():
    stats = {"degree": 5, "connectivity": 0, "hc": 3, "minimality": 1, "mhc": 1}
    lines = funnel_bars(stats, ("degree", "connectivity", "hc", "minimality", "mhc"), width=10)
    assert len(lines) == 4
    assert lines[0].startswith("degree       ")
    assert lines[0].endswith(" -5")
    assert lines[-1].endswith(" -1")
