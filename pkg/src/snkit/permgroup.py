"""Concrete permutations and the small amount of permutation-group machinery
needed to decide whether two permutations generate A_n.

Conventions used throughout the package:

* points are ``0 .. n-1`` in the Python API; cycle notation and JSON image
  arrays are 1-based, so ``Permutation.parse("(1 2 3)")`` maps 0 -> 1 -> 2 -> 0;
* products compose right to left, ``(s * t)(x) == s(t(x))``;
* the commutator is ``[p, s] = p^-1 s^-1 p s``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import DomainError
from .partitions import Partition


class Permutation:
    """An immutable bijection of ``{0, ..., n-1}``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], *, check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """Build from 0-based cycles; points not mentioned are fixed."""
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if a in seen or not 0 <= a < n:
                    raise ValueError(f"bad cycle {cyc} for degree {n}")
                seen.add(a)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                images[a] = b
        return cls(images, check=False)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"``; ``"()"`` is the identity."""
        body = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+([\s,]+\d+)*)?\s*\))*", body):
            raise ValueError(f"could not parse permutation {text!r}")
        cycles = [
            [int(x) - 1 for x in re.split(r"[\s,]+", grp.strip())]
            for grp in re.findall(r"\(([^)]*)\)", body)
            if grp.strip()
        ]
        largest = max((max(c) + 1 for c in cycles), default=0)
        if n is None:
            n = largest
        elif largest > n:
            raise ValueError(f"point {largest} exceeds degree {n}")
        return cls.from_cycles(cycles, n)

    @classmethod
    def of_cycle_type(cls, cycle_type: Sequence[int]) -> "Permutation":
        """Canonical representative: cycles on consecutive points, longest first."""
        cycles = []
        start = 0
        for length in Partition.from_parts(cycle_type):
            cycles.append(list(range(start, start + length)))
            start += length
        return cls.from_cycles(cycles, start)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        a = self.images
        return Permutation([a[i] for i in other.images], check=False)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(inv, check=False)

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(e)):
            out = out * base
        return out

    def conjugate_by(self, tau: "Permutation") -> "Permutation":
        """``tau * self * tau^-1``."""
        return tau * self * tau.inverse()

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self, include_fixed: bool = True) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its least point, ordered by that point."""
        return _cycles(self.images, include_fixed)

    def cycle_decomposition(self) -> "CycleDecomposition":
        cycles = tuple(self.cycles())
        return CycleDecomposition(cycles, Partition.from_parts(len(c) for c in cycles))

    def cycle_type(self) -> Partition:
        return Partition.from_parts(_cycle_lengths(self.images))

    def is_even(self) -> bool:
        return (self.degree - len(_cycle_lengths(self.images))) % 2 == 0

    def order(self) -> int:
        return math.lcm(*_cycle_lengths(self.images)) if self.degree else 1

    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.images) if i != x)

    def __str__(self) -> str:
        cycles = self.cycles(include_fixed=False)
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r}, {self.degree})"

    def to_json(self) -> str:
        return json.dumps([x + 1 for x in self.images])

    @classmethod
    def from_json(cls, text: str) -> "Permutation":
        return cls(x - 1 for x in json.loads(text))


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple[tuple[int, ...], ...]
    type: Partition


def _cycles(images: Sequence[int], include_fixed: bool = True) -> list[tuple[int, ...]]:
    seen = [False] * len(images)
    out = []
    for start in range(len(images)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = images[start]
        while x != start:
            seen[x] = True
            cyc.append(x)
            x = images[x]
        if include_fixed or len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def _cycle_lengths(images: Sequence[int]) -> list[int]:
    seen = [False] * len(images)
    out = []
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = images[x]
            length += 1
        out.append(length)
    return out


def cycle_type(perm: Permutation) -> Partition:
    return perm.cycle_type()


def commutator(p: Permutation, s: Permutation) -> Permutation:
    """``p^-1 s^-1 p s``."""
    if p.degree != s.degree:
        raise ValueError("degree mismatch")
    return p.inverse() * s.inverse() * p * s


def _orbit(point: int, gens: Sequence[Sequence[int]]) -> set[int]:
    orbit = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in orbit:
                orbit.add(y)
                stack.append(y)
    return orbit


def _common_degree(gens: Sequence[Permutation]) -> int:
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].degree
    if any(g.degree != n for g in gens):
        raise ValueError("generators have different degrees")
    return n


def orbits(gens: Sequence[Permutation]) -> list[frozenset[int]]:
    """Orbits of the generated group, ordered by least point."""
    gens = list(gens)
    n = _common_degree(gens)
    imgs = [g.images for g in gens]
    done = set()
    out = []
    for x in range(n):
        if x not in done:
            orb = frozenset(_orbit(x, imgs))
            done |= orb
            out.append(orb)
    return out


def is_transitive(gens: Iterable[Permutation]) -> bool:
    gens = list(gens)
    n = _common_degree(gens)
    if n == 0:
        return True
    return len(_orbit(0, [g.images for g in gens])) == n


# Deterministic Schreier-Sims (Knuth's incremental form).  Each level keeps a
# base point, its strong generators and a transversal mapping orbit points to
# coset representatives u with u(base) == point.


def _mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple([a[i] for i in b])


def _inv(a: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


class _Level:
    __slots__ = ("base", "gens", "transversal")

    def __init__(self, base: int, n: int):
        self.base = base
        self.gens: list[tuple[int, ...]] = []
        self.transversal = {base: tuple(range(n))}


class StabilizerChain:
    """Base and strong generating set for a permutation group."""

    def __init__(self, gens: Iterable[Permutation]):
        gens = list(gens)
        self.degree = _common_degree(gens)
        self.identity = tuple(range(self.degree))
        self.levels: list[_Level] = []
        for g in gens:
            self._extend(0, g.images)

    def _sift(self, start: int, g: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
        for j in range(start, len(self.levels)):
            level = self.levels[j]
            u = level.transversal.get(g[level.base])
            if u is None:
                return g, j
            g = _mul(_inv(u), g)
        return g, len(self.levels)

    def _extend(self, start: int, g: tuple[int, ...]) -> None:
        h, j = self._sift(start, g)
        if h == self.identity:
            return
        if j == len(self.levels):
            moved = next(i for i, x in enumerate(h) if i != x)
            self.levels.append(_Level(moved, self.degree))
        # h fixes the base points above level j, so it belongs to every level <= j
        for i in range(j, start - 1, -1):
            self._add_generator(i, h)

    def _add_generator(self, i: int, h: tuple[int, ...]) -> None:
        level = self.levels[i]
        level.gens.append(h)
        # new generator against the old orbit, then every generator on new points
        pending = [(pt, h) for pt in list(level.transversal)]
        while pending:
            pt, gen = pending.pop()
            u = level.transversal[pt]
            beta = gen[pt]
            if beta not in level.transversal:
                level.transversal[beta] = _mul(gen, u)
                pending.extend((beta, s) for s in level.gens)
            else:
                schreier = _mul(_inv(level.transversal[beta]), _mul(gen, u))
                if schreier != self.identity:
                    self._extend(i + 1, schreier)

    def order(self) -> int:
        out = 1
        for level in self.levels:
            out *= len(level.transversal)
        return out

    def base(self) -> list[int]:
        return [level.base for level in self.levels]

    def contains(self, perm: Permutation) -> bool:
        h, _ = self._sift(0, perm.images)
        return h == self.identity


def group_order(gens: Iterable[Permutation]) -> int:
    return StabilizerChain(gens).order()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def jordan_prime_cycle(perm: Permutation) -> int | None:
    """A prime cycle length ``p`` of ``perm`` with ``n/2 < p <= n-3``, if any."""
    n = perm.degree
    for length in sorted(set(_cycle_lengths(perm.images)), reverse=True):
        if 2 * length > n and length <= n - 3 and _is_prime(length):
            return length
    return None


def generates_alternating(p: Permutation, s: Permutation) -> bool:
    """Whether two even permutations generate the full alternating group.

    A transitive group containing a prime cycle of length ``n/2 < q <= n-3``
    is A_n or S_n; with even generators it is A_n, so no order computation is
    needed in that case.
    """
    n = _common_degree([p, s])
    if n < 3:
        raise DomainError("need degree >= 3")
    if not (p.is_even() and s.is_even()):
        raise DomainError("both permutations must be even")
    if not is_transitive([p, s]):
        return False
    if jordan_prime_cycle(p) is not None or jordan_prime_cycle(s) is not None:
        return True
    return group_order([p, s]) == math.factorial(n) // 2


class IntransitiveSplit(NamedTuple):
    """Witness that ``<p, s>`` is intransitive.

    ``H`` and ``complement`` are 1-based indices into ``p.cycles()``;
    ``s == inner * outer`` with ``inner`` supported on the points of the
    cycles in ``H`` and ``outer`` on the rest.
    """

    H: tuple[int, ...]
    complement: tuple[int, ...]
    inner: Permutation
    outer: Permutation


def intransitivity_split(p: Permutation, s: Permutation) -> IntransitiveSplit | None:
    n = _common_degree([p, s])
    orbit = _orbit(0, [p.images, s.images]) if n else set()
    if len(orbit) == n:
        return None
    cycles = p.cycles()
    H = tuple(i + 1 for i, c in enumerate(cycles) if c[0] in orbit)
    rest = tuple(i + 1 for i, c in enumerate(cycles) if c[0] not in orbit)
    inner = Permutation([s.images[x] if x in orbit else x for x in range(n)], check=False)
    outer = Permutation([x if x in orbit else s.images[x] for x in range(n)], check=False)
    return IntransitiveSplit(H, rest, inner, outer)
