import pytest

from darklattice._base._combinatorics import (
    INDEX_LIMIT,
    binomial,
    checked_count,
    permutation_number,
)
from darklattice._base._exceptions import CapacityExceeded


def test_binomial():
    assert binomial(5, 2) == 10
    assert binomial(4, 0) == 1
    assert binomial(3, 5) == 0
    assert binomial(3, -1) == 0


def test_permutation_number():
    """A_m^k = m! / (m - k)!"""
    assert permutation_number(3, 2) == 6
    assert permutation_number(4, 0) == 1
    assert permutation_number(5, 5) == 120


def test_permutation_number_rejects_out_of_range():
    with pytest.raises(ValueError, match="0 <= k <= m"):
        permutation_number(2, 3)


def test_checked_count():
    assert checked_count(INDEX_LIMIT, "count") == INDEX_LIMIT
    with pytest.raises(CapacityExceeded, match="huge count"):
        checked_count(INDEX_LIMIT + 1, "huge count")
