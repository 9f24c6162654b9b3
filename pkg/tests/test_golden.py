from math import prod

import pytest

from npf.golden import EXPECTED_ROWS, EXPECTED_TABLE, TableResult, render_table
from npf.npstats import np_value


def _parse(rendered: str) -> int:
    out = 1
    for part in rendered.split("*"):
        base, _, exp = part.partition("^")
        out *= int(base) ** int(exp or 1)
    return out


@pytest.mark.parametrize("p,fac", EXPECTED_ROWS)
def test_expected_rows_multiply_back(delta, p, fac):
    assert _parse(fac) == np_value(delta, p)


def test_row_15307_needs_three_to_the_fifth(delta):
    big = 251458672161512059369128893956312797721
    n = np_value(delta, 15307)
    assert prod([2**8, 3, 5, 691, big]) != n
    assert prod([2**8, 3**5, 691, big]) == n


def test_mismatch_is_reported():
    rows = list(EXPECTED_ROWS)
    rows[0] = (5, "2^10*3*23*692")
    result = TableResult([], [], render_table(rows))
    assert not result.matches
    assert "692" in result.diff()


def test_undecided_records_block_a_match():
    result = TableResult([], [object()], EXPECTED_TABLE)
    assert not result.matches
    assert TableResult([], [], EXPECTED_TABLE).matches
