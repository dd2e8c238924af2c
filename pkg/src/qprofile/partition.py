"""Integer partitions: weakly decreasing tuples of positive parts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(x <= 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not a partition")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"2,1,1"`` or ``"(2,1,1)"``; ``"()"`` is the empty partition."""
        s = text.strip().strip("()").strip()
        return cls(tuple(int(x) for x in s.split(",")) if s else ())

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        """Part i (0-based); parts beyond the length are 0."""
        return self.parts[i] if i < len(self.parts) else 0

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.parts) + ")"

    def __repr__(self):
        return f"Partition{self}"

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > i) for i in range(self.parts[0])))


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in reverse lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition(p) for p in _partitions(n, n)]


def partitions_with_first_part(n: int, m: int) -> list[Partition]:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if m <= 0 or m > n:
        return [Partition()] if n == 0 and m == 0 else []
    return [Partition((m,) + p) for p in _partitions(n - m, m)]


def conjugate(mu: Partition) -> Partition:
    return mu.conjugate()


def as_partition(obj: Partition | Iterable[int]) -> Partition:
    return obj if isinstance(obj, Partition) else Partition(tuple(obj))
