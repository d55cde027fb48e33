import pytest

from mhclab.utils import format_duration, parse_int_list, safe_division, split_pair


def test_safe_division():
    assert safe_division(10, 2) == 5
    assert safe_division(10, 0) == 0.0


def test_parse_int_list():
    assert parse_int_list("5,3") == (3, 5)
    assert parse_int_list("4, 6,4") == (4, 6)
    with pytest.raises(ValueError):
        parse_int_list("3,x")


def test_split_pair():
    assert split_pair("x-z1") == ("x", "z1")
    assert split_pair("3-7") == ("3", "7")
    with pytest.raises(ValueError):
        split_pair("x1")


def test_format_duration():
    assert format_duration(0.25) == "250ms"
    assert format_duration(12.34) == "12.3s"
    assert format_duration(90) == "1.5m"
    assert format_duration(5400) == "1.5h"
