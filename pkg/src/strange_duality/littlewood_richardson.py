"""Littlewood-Richardson coefficients by skew-tableau enumeration.

A Littlewood-Richardson tableau of shape nu/lam and content mu is built one
letter at a time: the copies of letter ``i`` form a horizontal strip added to
the current shape, and the reverse reading word must stay a lattice word.
For consecutive letters that last condition reduces to

    #(i+1 in rows <= j)  <=  #(i in rows < j)     for every row j,

which is what :func:`_strips` enforces while it distributes a letter over
rows.  Results are memoized; ``functools.lru_cache`` is thread-safe, so
concurrent readers see consistent values.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Iterator, Sequence

Partition = tuple[int, ...]


def trim(parts: Sequence[int]) -> Partition:
    """Drop trailing zeros."""
    parts = tuple(int(p) for p in parts)
    end = len(parts)
    while end and parts[end - 1] == 0:
        end -= 1
    return parts[:end]


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 0 for p in parts) and all(
        a >= b for a, b in zip(parts, parts[1:])
    )


def _strips(
    shape: list[int],
    count: int,
    prev_counts: list[int] | None,
    max_rows: int,
) -> Iterator[list[int]]:
    """Yield per-row placements of ``count`` copies of the next letter."""
    placed = [0] * max_rows

    def rec(row: int, remaining: int, cum_placed: int, cum_prev: int) -> Iterator[list[int]]:
        if remaining == 0:
            yield placed.copy()
            return
        if row >= max_rows:
            return
        if prev_counts is None:
            lattice_room = remaining
        else:
            # letters in this row may not overtake the previous letter above it
            lattice_room = cum_prev - cum_placed
        if row == 0:
            strip_room = remaining
        else:
            strip_room = shape[row - 1] - shape[row]
        top = min(remaining, lattice_room, strip_room)
        next_prev = cum_prev + (prev_counts[row] if prev_counts is not None else 0)
        for x in range(top, -1, -1):
            placed[row] = x
            yield from rec(row + 1, remaining - x, cum_placed + x, next_prev)
        placed[row] = 0

    yield from rec(0, count, 0, 0)


def _enumerate(lam: Partition, mu: Partition, max_rows: int) -> Counter:
    out: Counter = Counter()
    if len(lam) > max_rows or len(mu) > max_rows:
        return out
    start = list(lam) + [0] * (max_rows - len(lam))

    def rec(letter: int, shape: list[int], prev_counts: list[int] | None) -> None:
        if letter == len(mu):
            out[trim(shape)] += 1
            return
        for placed in _strips(shape, mu[letter], prev_counts, max_rows):
            new_shape = [s + x for s, x in zip(shape, placed)]
            rec(letter + 1, new_shape, placed)

    rec(0, start, None)
    return out


@lru_cache(maxsize=None)
def _lr_expand(lam: Partition, mu: Partition, max_rows: int) -> tuple[tuple[Partition, int], ...]:
    # c^nu_{lam,mu} is symmetric; fill with the smaller content
    if sum(mu) > sum(lam):
        lam, mu = mu, lam
    counts = _enumerate(lam, mu, max_rows)
    return tuple(sorted(counts.items()))


def lr_product(lam: Sequence[int], mu: Sequence[int], max_rows: int | None = None) -> dict[Partition, int]:
    """Expand s_lam * s_mu in Schur functions, keeping only nu with at most
    ``max_rows`` parts (Schur polynomials in ``max_rows`` variables).

    Keys are partitions without trailing zeros.
    """
    lam, mu = trim(lam), trim(mu)
    if not (is_partition(lam) and is_partition(mu)):
        raise ValueError(f"not partitions: {lam}, {mu}")
    if max_rows is None:
        max_rows = len(lam) + len(mu)
    return dict(_lr_expand(lam, mu, max_rows))


@lru_cache(maxsize=None)
def _lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    if sum(lam) + sum(mu) != sum(nu):
        return 0
    return dict(_lr_expand(*sorted((lam, mu)), max(len(nu), 1))).get(nu, 0)


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """The Littlewood-Richardson number c^nu_{lam, mu}."""
    return _lr_coefficient(trim(lam), trim(mu), trim(nu))
