"""Partitions and Young diagrams.

A partition is stored as a plain tuple of positive integers in weakly
decreasing order.  Trailing zeros are never stored; code that needs the
``lambda_{n+1} = 0`` convention pads on demand with :func:`padded`.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

Partition = tuple[int, ...]


def make_partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` and return the canonical tuple (zeros dropped)."""
    out = tuple(int(p) for p in parts)
    if any(p < 0 for p in out):
        raise ValueError(f"negative part in {out}")
    out = tuple(p for p in out if p)
    for a, b in zip(out, out[1:]):
        if b > a:
            raise ValueError(f"parts of {out} are not weakly decreasing")
    return out


def parse_partition(text: str) -> Partition:
    """Parse the comma separated text format; ``""`` is the empty partition."""
    text = text.strip()
    if not text:
        return ()
    try:
        parts = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad partition text {text!r}") from exc
    return make_partition(parts)


def format_partition(lam: Sequence[int]) -> str:
    return ",".join(str(p) for p in lam)


def size(lam: Sequence[int]) -> int:
    return sum(lam)


def padded(lam: Sequence[int], n: int) -> tuple[int, ...]:
    if len(lam) > n:
        raise ValueError(f"partition {tuple(lam)} has more than {n} parts")
    return tuple(lam) + (0,) * (n - len(lam))


def conjugate(lam: Sequence[int]) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= i) for i in range(1, lam[0] + 1))


def _partitions(n: int, max_part: int, max_len: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first, max_len - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions_of(n: int, max_len: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` with at most ``max_len`` parts.

    Emitted in reverse lexicographic order, e.g. ``(4), (3,1), (2,2), ...``.
    """
    if n < 0:
        return ()
    if max_len is None:
        max_len = n
    return tuple(_partitions(n, n, max_len))


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """True iff ``mu <= lam`` in dominance order (equal sizes required)."""
    if sum(mu) != sum(lam):
        raise ValueError(f"dominance needs equal sizes, got {tuple(mu)} and {tuple(lam)}")
    n = max(len(mu), len(lam))
    a = b = 0
    for x, y in zip(padded(mu, n), padded(lam, n)):
        a += x
        b += y
        if a > b:
            return False
    return True


def d_stat(lam: Sequence[int]) -> int:
    """Number of pairs of cells sharing a row: sum of C(lambda_i, 2)."""
    return sum(comb(p, 2) for p in lam)


def multiplicities(lam: Sequence[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in lam:
        out[p] = out.get(p, 0) + 1
    return out


def z_factor(lam: Sequence[int]) -> int:
    """Centralizer order ``z_lam = prod_i i^{m_i} m_i!``."""
    from math import factorial

    z = 1
    for part, m in multiplicities(lam).items():
        z *= part**m * factorial(m)
    return z


def differences(lam: Sequence[int], n: int) -> tuple[int, ...]:
    """``(lam_1 - lam_2, ..., lam_n - lam_{n+1})`` with ``lam_{n+1} = 0``."""
    p = padded(lam, n) + (0,)
    return tuple(p[i] - p[i + 1] for i in range(n))
