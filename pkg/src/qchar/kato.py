"""Column-strict fillings of Young diagrams and the snake-rule degree.

A filling of ``lambda |- n`` places ``1..n`` into the cells, each exactly
once, increasing down every column.  It is stored column by column, each
column read top to bottom.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import factorial, prod
from typing import Iterator, Sequence

from .partitions import Partition, conjugate, d_stat, make_partition
from .series import QPoly, QSeries
from .whittaker import hw_algebra_char

DEFAULT_BOUND = 10


class EnumerationBoundError(ValueError):
    pass


@dataclass(frozen=True)
class Filling:
    shape: Partition
    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if tuple(len(c) for c in self.columns) != conjugate(self.shape):
            raise ValueError(f"columns {self.columns} do not fit shape {self.shape}")
        entries = sorted(v for c in self.columns for v in c)
        if entries != list(range(1, sum(self.shape) + 1)):
            raise ValueError(f"entries of {self.columns} are not 1..{sum(self.shape)}")
        for c in self.columns:
            if any(a >= b for a, b in zip(c, c[1:])):
                raise ValueError(f"column {c} does not increase downwards")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "Filling":
        cols = tuple(tuple(c) for c in columns)
        return cls(conjugate(tuple(len(c) for c in cols)), cols)

    @property
    def degree(self) -> int:
        return filling_degree(self)

    def __str__(self) -> str:
        body = "".join("[" + ",".join(map(str, c)) + "]" for c in self.columns)
        return f"{body} deg={self.degree}"


def column_k(left: Sequence[int], right: Sequence[int]) -> int:
    """Sign changes between two columns, scanned from the bottom row up.

    Row ``r`` carries ``<`` when the right cell is missing or larger, ``>``
    otherwise.  The scan starts from a virtual ``<`` below the bottom row.
    """
    if not len(left) >= len(right) >= 1:
        raise ValueError(f"need len(left) >= len(right) >= 1, got {len(left)} and {len(right)}")
    prev = False  # False is "<"
    changes = 0
    for r in range(len(left) - 1, -1, -1):
        greater = r < len(right) and left[r] > right[r]
        if greater != prev:
            changes += 1
        prev = greater
    return changes


def filling_degree(f: Filling) -> int:
    cols = f.columns
    return sum(column_k(cols[i], cols[j]) for i in range(len(cols)) for j in range(i + 1, len(cols)))


def _check_bound(lam: Partition, bound: int) -> None:
    n = sum(lam)
    if n > bound:
        raise EnumerationBoundError(
            f"|{lam}| = {n} exceeds the enumeration bound {bound} "
            f"({multinomial_dim(lam)} fillings)")


def enumerate_fillings(lam, bound: int = DEFAULT_BOUND) -> Iterator[Filling]:
    """All fillings of ``lam``: columns left to right, entry sets in lex order."""
    lam = make_partition(lam)
    _check_bound(lam, bound)
    heights = conjugate(lam)

    def rec(i: int, free: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if i == len(heights):
            yield ()
            return
        for col in combinations(free, heights[i]):
            rest = tuple(v for v in free if v not in col)
            for tail in rec(i + 1, rest):
                yield (col,) + tail

    for cols in rec(0, tuple(range(1, sum(lam) + 1))):
        yield Filling(lam, cols)


def degree_histogram(lam, bound: int = DEFAULT_BOUND) -> dict[int, int]:
    hist: dict[int, int] = {}
    for f in enumerate_fillings(lam, bound):
        d = f.degree
        hist[d] = hist.get(d, 0) + 1
    return dict(sorted(hist.items()))


def kato_graded_dim(lam, bound: int = DEFAULT_BOUND) -> QPoly:
    """``dim_q K_lambda = sum over fillings of q^degree``."""
    hist = degree_histogram(lam, bound)
    if not hist:
        return QPoly()
    cs = [0] * (max(hist) + 1)
    for d, c in hist.items():
        cs[d] = c
    return QPoly(cs)


def multinomial_dim(lam) -> int:
    """``|lambda|! / prod_i (lambda^t_i)!``."""
    lam = make_partition(lam)
    return factorial(sum(lam)) // prod(factorial(h) for h in conjugate(lam))


def kato_top_check(lam, bound: int = DEFAULT_BOUND) -> bool:
    dim = kato_graded_dim(lam, bound)
    return dim.degree == d_stat(make_partition(lam)) and dim.leading() == 1


def global_kato_char(lam, order: int, bound: int = DEFAULT_BOUND) -> QSeries:
    """Graded dimension of the global Kato module, free over ``A_lambda``."""
    lam = make_partition(lam)
    return kato_graded_dim(lam, bound).to_series(order) * hw_algebra_char(lam, max(sum(lam), 1), order)
