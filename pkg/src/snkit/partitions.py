"""Integer partitions and the conjugacy classes of S_n they label.

All counts are exact Python integers.  Only the two asymptotic estimates
(:func:`hardy_ramanujan_estimate`, :func:`paper_lower_bound`) use floats;
both are main terms of asymptotic statements and carry no error bound.
"""

from __future__ import annotations

import json
import math
import threading
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Partitions double as cycle types.  The empty tuple is the unique
    partition of 0.

    >>> Partition([3, 1, 2])
    Traceback (most recent call last):
    ...
    ValueError: parts must be weakly decreasing: (3, 1, 2)
    >>> Partition((2, 2, 1)).n
    5
    """

    def __new__(cls, parts: Iterable[int] = ()):
        if isinstance(parts, Partition):
            return parts
        parts = tuple(int(x) for x in parts)
        for x in parts:
            if x < 1:
                raise ValueError(f"parts must be positive: {parts}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Build a partition from parts in any order."""
        return cls(sorted((int(x) for x in parts), reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"5,2,2"`` (or ``""`` for the empty partition)."""
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        return cls.from_parts(int(x) for x in text.replace(" ", ",").split(",") if x)

    @property
    def n(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for x in self if x > j) for j in range(self[0]))

    def multiplicity(self, length: int) -> int:
        return sum(1 for x in self if x == length)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def to_json(self) -> str:
        return json.dumps(list(self))

    @classmethod
    def from_json(cls, text: str) -> "Partition":
        return cls(json.loads(text))


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order.

    The list starts with ``(n)`` and ends with ``(1^n)``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition(p) for p in _partitions_bounded(n, n)]


def _partitions_bounded(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


_pcache = [1]
_pcache_lock = threading.Lock()


def partition_count(n: int) -> int:
    """P(n) by Euler's pentagonal-number recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    with _pcache_lock:
        cache = _pcache
        for m in range(len(cache), n + 1):
            total = 0
            k = 1
            while True:
                g1 = k * (3 * k - 1) // 2
                if g1 > m:
                    break
                sign = 1 if k % 2 else -1
                total += sign * cache[m - g1]
                g2 = g1 + k
                if g2 <= m:
                    total += sign * cache[m - g2]
                k += 1
            cache.append(total)
        return cache[n]


def hardy_ramanujan_estimate(n: int) -> float:
    """Main term ``exp(2*pi*sqrt(n/6)) / (4*n*sqrt(3))`` of the asymptotic for P(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return math.exp(2 * math.pi * math.sqrt(n / 6)) / (4 * n * math.sqrt(3))


def paper_lower_bound(n: int) -> float:
    """Main term ``exp(2*pi*sqrt(n/6)) / (8*n*sqrt(3))`` of the lower bound on
    the number of T_2-systems of A_n.

    The bound is asymptotic only: the ``1 + o(1)`` factor is dropped and the
    value carries no meaning as an inequality for any particular small n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return math.exp(2 * math.pi * math.sqrt(n / 6)) / (8 * n * math.sqrt(3))


@dataclass(frozen=True)
class ClassDescriptor:
    """A conjugacy class of S_n, identified by its cycle type."""

    cycle_type: Partition

    def __post_init__(self):
        object.__setattr__(self, "cycle_type", Partition(self.cycle_type))

    @property
    def n(self) -> int:
        return self.cycle_type.n

    @cached_property
    def multiplicities(self) -> tuple[int, ...]:
        """``multiplicities[l - 1]`` is the number of l-cycles, for l = 1..n."""
        counts = Counter(self.cycle_type)
        return tuple(counts.get(l, 0) for l in range(1, self.n + 1))

    def m(self, length: int) -> int:
        if 1 <= length <= self.n:
            return self.multiplicities[length - 1]
        return 0

    @cached_property
    def centralizer_order(self) -> int:
        out = 1
        for l, ml in Counter(self.cycle_type).items():
            out *= l**ml * math.factorial(ml)
        return out

    @cached_property
    def size(self) -> int:
        return math.factorial(self.n) // self.centralizer_order

    @property
    def fixed_points(self) -> int:
        return self.m(1)

    @property
    def is_even(self) -> bool:
        return sum(l - 1 for l in self.cycle_type) % 2 == 0

    @property
    def sign(self) -> int:
        return 1 if self.is_even else -1

    @property
    def splits_in_alternating(self) -> bool:
        # all parts odd and distinct; such types are automatically even
        parts = self.cycle_type
        return all(x % 2 for x in parts) and len(set(parts)) == len(parts)

    def to_dict(self) -> dict:
        return {
            "cycle_type": list(self.cycle_type),
            "size": str(self.size),
            "fixed_points": self.fixed_points,
            "is_even": self.is_even,
            "splits_in_alternating": self.splits_in_alternating,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "ClassDescriptor":
        out = cls(Partition(data["cycle_type"]))
        if "size" in data and int(data["size"]) != out.size:
            raise ValueError(f"inconsistent class size in {data}")
        return out


def class_descriptor(cycle_type: Sequence[int]) -> ClassDescriptor:
    return ClassDescriptor(Partition(cycle_type))


def classes_of(n: int, even_only: bool = False) -> list[ClassDescriptor]:
    """Class descriptors of S_n in canonical order, optionally only those inside A_n."""
    out = [ClassDescriptor(p) for p in enumerate_partitions(n)]
    if even_only:
        out = [c for c in out if c.is_even]
    return out


def class_products(cls: ClassDescriptor, k: int) -> list[tuple[ClassDescriptor, ClassDescriptor]]:
    """All pairs ``(C1, C2)`` of classes of S_k and S_{n-k} with ``C = C1 C2``.

    ``C = C1 C2`` means the cycle multiplicities add: m_l(C) = s_l(C1) + t_l(C2)
    for every l.  Pairs come out ordered by ``C1`` in canonical order.
    """
    n = cls.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= k <= n-1, got k={k}, n={n}")
    items = sorted(Counter(cls.cycle_type).items(), reverse=True)
    out = []

    def split(i: int, remaining: int, left: list[int], right: list[int]):
        if i == len(items):
            if remaining == 0:
                out.append((Partition(left), Partition(right)))
            return
        length, mult = items[i]
        for s in range(min(mult, remaining // length), -1, -1):
            split(i + 1, remaining - s * length, left + [length] * s, right + [length] * (mult - s))

    split(0, k, [], [])
    return [(ClassDescriptor(a), ClassDescriptor(b)) for a, b in out]


def class_product_mass(cls: ClassDescriptor, k: int) -> int:
    """Sum of ``|C1| * |C2|`` over :func:`class_products`.

    This equals the number of elements of ``C`` mapping {1..k} onto itself.
    """
    return sum(c1.size * c2.size for c1, c2 in class_products(cls, k))


def even_parts_identity_check(n: int) -> tuple[int, int, int, bool]:
    """Counts for the even-parts identity.

    Returns ``(a, b, c, a == b - c)`` where ``a`` counts partitions of ``n``
    with an odd number of even parts, ``b`` those with an even number of even
    parts and ``c`` those into distinct odd parts.
    """
    if n < 1:
        raise ValueError("n must be positive")
    # by_parity[s][e]: partitions of s whose number of even parts has parity e
    by_parity = [[0, 0] for _ in range(n + 1)]
    by_parity[0][0] = 1
    for part in range(1, n + 1):
        flip = part % 2 == 0
        for s in range(part, n + 1):
            src = by_parity[s - part]
            if flip:
                by_parity[s][0] += src[1]
                by_parity[s][1] += src[0]
            else:
                by_parity[s][0] += src[0]
                by_parity[s][1] += src[1]
    distinct_odd = [0] * (n + 1)
    distinct_odd[0] = 1
    for part in range(1, n + 1, 2):
        for s in range(n, part - 1, -1):
            distinct_odd[s] += distinct_odd[s - part]
    b, a = by_parity[n]
    c = distinct_odd[n]
    return a, b, c, a == b - c
