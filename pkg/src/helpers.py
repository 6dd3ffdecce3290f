from itertools import combinations
from typing import Iterable, Iterator, List, Sequence, Tuple, TypeVar

from scipy.special import comb

T = TypeVar('T')


def binom(n: int, k: int) -> int:
    """
    Exact binomial coefficient.

    Parameters
    ----------
    n: int
    k: int

    Returns
    -------
    int
        ``n choose k``, zero when ``k`` is out of range.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    return int(comb(n, k, exact=True))


def to_mask(indices: Iterable[int]) -> int:
    """
    Pack integer indices into a bitmask.

    Parameters
    ----------
    indices: Iterable[int]

    Returns
    -------
    int
    """
    mask = 0
    for index in indices:
        mask |= 1 << index
    return mask


def from_mask(mask: int) -> List[int]:
    """
    Unpack a bitmask into its ascending list of indices.

    Parameters
    ----------
    mask: int

    Returns
    -------
    List[int]
    """
    indices = []
    index = 0
    while mask:
        if mask & 1:
            indices.append(index)
        mask >>= 1
        index += 1
    return indices


def popcount(mask: int) -> int:
    return bin(mask).count('1')


def lowest_bit(mask: int) -> int:
    """Index of the lowest set bit; ``mask`` must be non-zero."""
    return (mask & -mask).bit_length() - 1


def k_subsets(items: Sequence[T], size: int) -> Iterator[Tuple[T, ...]]:
    """
    Lexicographic ``size``-subsets of a sorted sequence.

    Parameters
    ----------
    items: Sequence
    size: int

    Returns
    -------
    Iterator[Tuple]
    """
    return combinations(sorted(items), size)


def is_disjoint_family(sets: Iterable[Iterable[int]]) -> bool:
    seen = set()
    for members in sets:
        for member in members:
            if member in seen:
                return False
            seen.add(member)
    return True
