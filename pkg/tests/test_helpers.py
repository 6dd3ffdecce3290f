import pytest

from src.helpers import (binom, from_mask, is_disjoint_family, k_subsets,
                         lowest_bit, popcount, to_mask)


@pytest.mark.parametrize("n,k,expected", [
    (6, 3, 20),
    (5, 2, 10),
    (4, 0, 1),
    (3, 4, 0),
    (3, -1, 0),
    (30, 15, 155117520),
])
def test_binom(n, k, expected):
    assert binom(n, k) == expected


def test_masks():
    assert to_mask([0, 2, 5]) == 0b100101
    assert from_mask(0b100101) == [0, 2, 5]
    assert from_mask(0) == []
    assert popcount(0b1011) == 3
    assert lowest_bit(0b101000) == 3


def test_k_subsets_sorted():
    assert list(k_subsets([3, 1, 2], 2)) == [(1, 2), (1, 3), (2, 3)]


def test_is_disjoint_family():
    assert is_disjoint_family([(0, 1), (2, 3)])
    assert not is_disjoint_family([(0, 1), (1, 2)])
    assert is_disjoint_family([])
