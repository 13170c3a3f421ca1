"""
Exact integer combinatorics shared by the basis and the closed-form coefficients.

Counts are computed with Python integers and then checked against a 64-bit ceiling,
since every count ends up as an array dimension or an index.
"""

import math

from darklattice._base._exceptions import CapacityExceeded

INDEX_LIMIT = 2**63 - 1


def binomial(m: int, k: int) -> int:
    """C(m, k), with C(m, k) = 0 outside 0 <= k <= m."""
    if k < 0 or m < 0 or k > m:
        return 0
    return math.comb(m, k)


def permutation_number(m: int, k: int) -> int:
    """A_m^k = m! / (m - k)!, the number of ordered selections of k out of m."""
    if k < 0 or k > m:
        raise ValueError(f"A_m^k needs 0 <= k <= m, got m={m}, k={k}")
    return math.perm(m, k)


def checked_count(value: int, what: str) -> int:
    """Return ``value`` if it fits a signed 64-bit index, else raise CapacityExceeded."""
    if value > INDEX_LIMIT:
        raise CapacityExceeded(what, value, INDEX_LIMIT)
    return value
