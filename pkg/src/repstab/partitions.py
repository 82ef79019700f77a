"""Partitions, containment, conjugation and border strips."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

__all__ = [
    "Partition",
    "EMPTY",
    "make_partition",
    "parse_partition",
    "conjugate",
    "contains",
    "StripRemoval",
    "StripFailure",
    "remove_border_strip",
    "strip_boxes",
    "partitions_of",
    "partitions_up_to",
    "even_column_partitions",
]


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction, so ``Partition([2, 1, 0])``
    equals ``Partition([2, 1])``.  The empty partition is ``Partition()``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for p in parts:
            if p < 0:
                raise ValueError(f"negative part in {list(parts)}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts are not weakly decreasing: {list(parts)}")
        end = len(parts)
        while end and parts[end - 1] == 0:
            end -= 1
        return super().__new__(cls, parts[:end])

    @classmethod
    def _trusted(cls, parts: tuple[int, ...]) -> "Partition":
        # caller guarantees a valid, zero-free tuple
        return tuple.__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """The ``i``-th row (0-based), zero past the end."""
        return self[i] if i < len(self) else 0

    def __repr__(self) -> str:
        return f"Partition({', '.join(map(str, self))})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"


EMPTY = Partition()


def make_partition(parts: Iterable[int]) -> Partition:
    return Partition(parts)


def parse_partition(text: str) -> Partition:
    """Parse ``"[4,3,2,2]"``; ``"[]"`` is the empty partition."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"partition must be bracketed, got {text!r}")
    body = s[1:-1].strip()
    if not body:
        return EMPTY
    try:
        parts = [int(x) for x in body.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad partition syntax {text!r}") from exc
    if any(p <= 0 for p in parts):
        raise ValueError(f"partition parts must be positive: {text!r}")
    return Partition(parts)


@lru_cache(maxsize=None)
def conjugate(p: Partition) -> Partition:
    if not p:
        return EMPTY
    return Partition._trusted(tuple(sum(1 for r in p if r > j) for j in range(p[0])))


def contains(outer: Partition, inner: Partition) -> bool:
    """True iff the Young diagram of ``inner`` sits inside that of ``outer``."""
    if len(inner) > len(outer):
        return False
    return all(a >= b for a, b in zip(outer, inner))


# --------------------------------------------------------------------------
# border strips

class StripFailure(enum.Enum):
    NO_STRIP = "no-strip"
    EMPTY_STRIP = "empty-strip"
    NOT_YOUNG = "not-young"


@dataclass(frozen=True)
class StripRemoval:
    remainder: Partition
    columns: int
    strip_length: int


def strip_boxes(p: Partition, length: int) -> list[tuple[int, int]] | None:
    """Boxes ``(row, col)`` of the rim path of ``length`` boxes starting at the
    first box of the last row, or ``None`` if the rim is too short."""
    if not p or length <= 0:
        return [] if length == 0 else None
    r, c = len(p) - 1, 0
    boxes = [(r, c)]
    while len(boxes) < length:
        if c + 1 < p[r]:
            c += 1
        elif r > 0:
            r -= 1
        else:
            return None
        boxes.append((r, c))
    return boxes


def remove_border_strip(p: Partition, length: int) -> StripRemoval | StripFailure:
    """Remove the connected border strip of ``length`` boxes that contains the
    first box of the last row.

    The rim is walked from that box towards the north-east.  Removal is a
    valid Young diagram exactly when the walk ends on the last box of a row.
    """
    if length < 0:
        raise ValueError("strip length must be nonnegative")
    if length == 0:
        return StripFailure.EMPTY_STRIP
    boxes = strip_boxes(p, length)
    if boxes is None:
        return StripFailure.NO_STRIP
    top_r, top_c = boxes[-1]
    if top_c != p[top_r] - 1:
        return StripFailure.NOT_YOUNG
    rows = list(p)
    for r, _ in boxes:
        rows[r] -= 1
    remainder = Partition(rows)
    return StripRemoval(remainder=remainder, columns=top_c + 1, strip_length=length)


# --------------------------------------------------------------------------
# enumeration, ascending size then reverse-lexicographic

@lru_cache(maxsize=None)
def _partitions_of(n: int, max_part: int) -> tuple[Partition, ...]:
    if n == 0:
        return (EMPTY,)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions_of(n - first, first):
            out.append(Partition._trusted((first,) + rest))
    return tuple(out)


def partitions_of(n: int, max_length: int | None = None) -> Iterator[Partition]:
    for p in _partitions_of(n, n):
        if max_length is None or len(p) <= max_length:
            yield p


def partitions_up_to(max_size: int, max_length: int | None = None) -> Iterator[Partition]:
    for n in range(max_size + 1):
        yield from partitions_of(n, max_length)


def even_column_partitions(max_size: int) -> list[Partition]:
    """All partitions of size at most ``max_size`` whose columns all have even
    length, i.e. the conjugates of ``2*delta``."""
    out = []
    for half in range(max_size // 2 + 1):
        shapes = [conjugate(Partition._trusted(tuple(2 * d for d in delta)))
                  for delta in partitions_of(half)]
        out.extend(sorted(shapes, reverse=True))
    return out
