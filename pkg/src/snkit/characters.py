"""Irreducible characters of the symmetric group.

Character values come from the Murnaghan-Nakayama rule.  Rim hooks are
enumerated on beta-sets (first-column hook lengths): removing an r-rim hook
replaces one beta number ``b`` by ``b - r`` when that value is free and
nonnegative, and the leg length is the number of beta numbers strictly
between the two.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .errors import ResourceLimitError
from .partitions import ClassDescriptor, Partition, enumerate_partitions

#: Largest n for which :func:`character_table` builds a full table by default.
TABLE_LIMIT = 20


class RimHookRemoval(NamedTuple):
    result: Partition
    leg_length: int
    size: int


def _beta_set(lam: Sequence[int]) -> list[int]:
    l = len(lam)
    return [part + (l - 1 - i) for i, part in enumerate(lam)]


def _from_beta_set(betas: Iterable[int]) -> Partition:
    betas = sorted(betas, reverse=True)
    l = len(betas)
    return Partition(x for x in (b - (l - 1 - i) for i, b in enumerate(betas)) if x > 0)


def hook_length(lam: Sequence[int], i: int, j: int) -> int:
    """Size of the hook of box ``(i, j)`` (1-indexed); 0 outside the diagram."""
    lam = Partition(lam)
    if i < 1 or j < 1 or i > len(lam) or j > lam[i - 1]:
        return 0
    arm = lam[i - 1] - j
    leg = sum(1 for part in lam[i:] if part >= j)
    return arm + leg + 1


def dimension(lam: Sequence[int]) -> int:
    """Degree of the irreducible character, by the hook formula."""
    lam = Partition(lam)
    if not lam:
        return 1
    conj = lam.conjugate()
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(lam.n) // prod


def rim_hooks(lam: Sequence[int], r: int) -> list[RimHookRemoval]:
    """Every r-rim hook of ``lam`` with the shape left after removing it.

    Ordered by the row in which the hook starts (its top row), top first.
    """
    if r < 1:
        raise ValueError("rim hook size must be positive")
    lam = Partition(lam)
    betas = _beta_set(lam)
    present = set(betas)
    out = []
    for b in betas:
        target = b - r
        if target < 0 or target in present:
            continue
        leg = sum(1 for x in betas if target < x < b)
        new = [target if x == b else x for x in betas]
        out.append(RimHookRemoval(_from_beta_set(new), leg, r))
    return out


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    # cycles consumed from the front; caller fixes the order
    if not cycles:
        return 1 if not lam else 0
    r, rest = cycles[0], cycles[1:]
    betas = _beta_set(lam)
    present = set(betas)
    total = 0
    for b in betas:
        target = b - r
        if target < 0 or target in present:
            continue
        leg = sum(1 for x in betas if target < x < b)
        shape = tuple(_from_beta_set(target if x == b else x for x in betas))
        value = _mn(shape, rest)
        total += -value if leg % 2 else value
    return total


def character_value(lam: Sequence[int], mu: Sequence[int], order: str = "decreasing") -> int:
    """The value of the irreducible character ``lam`` on the class of cycle type ``mu``.

    ``order`` picks which cycle is stripped first at each step (``"decreasing"``
    or ``"increasing"`` length); the value does not depend on it.
    """
    lam = Partition(lam)
    mu = Partition.from_parts(mu)
    if lam.n != mu.n:
        raise ValueError(f"|lambda| = {lam.n} differs from |mu| = {mu.n}")
    if order == "decreasing":
        cycles = tuple(mu)
    elif order == "increasing":
        cycles = tuple(reversed(mu))
    else:
        raise ValueError(f"unknown order {order!r}")
    return _mn(tuple(lam), cycles)


def has_nonzero_on(lam: Sequence[int], mu: Sequence[int]) -> bool:
    return character_value(lam, mu) != 0


@dataclass(frozen=True)
class CharacterTable:
    """Exact character table of S_n.

    Rows are characters, columns are classes; both are labelled by the
    partitions of ``n`` in reverse-lexicographic order.
    """

    n: int
    labels: tuple[Partition, ...]
    values: tuple[tuple[int, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.labels)})

    @property
    def row_labels(self) -> tuple[Partition, ...]:
        return self.labels

    @property
    def col_labels(self) -> tuple[Partition, ...]:
        return self.labels

    def index(self, partition: Sequence[int]) -> int:
        return self._index[Partition.from_parts(partition)]

    def value(self, lam: Sequence[int], mu: Sequence[int]) -> int:
        return self.values[self.index(lam)][self.index(mu)]

    def column(self, mu: Sequence[int]) -> tuple[int, ...]:
        j = self.index(mu)
        return tuple(row[j] for row in self.values)

    def dimensions(self) -> tuple[int, ...]:
        return self.column((1,) * self.n)

    def classes(self) -> list[ClassDescriptor]:
        return [ClassDescriptor(p) for p in self.labels]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "labels": [list(p) for p in self.labels],
            "values": [[str(v) for v in row] for row in self.values],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "CharacterTable":
        n = int(data["n"])
        labels = tuple(Partition(p) for p in data["labels"])
        if list(labels) != enumerate_partitions(n):
            raise ValueError("labels are not the partitions of n in canonical order")
        values = tuple(tuple(int(v) for v in row) for row in data["values"])
        if len(values) != len(labels) or any(len(row) != len(labels) for row in values):
            raise ValueError("table is not square over the labels")
        return cls(n, labels, values)

    @classmethod
    def from_json(cls, text: str) -> "CharacterTable":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        label = lambda p: " ".join(map(str, p)) or "()"
        writer.writerow(["lambda\\mu"] + [label(p) for p in self.labels])
        for p, row in zip(self.labels, self.values):
            writer.writerow([label(p)] + [str(v) for v in row])
        return buf.getvalue()


def build_character_table(n: int) -> CharacterTable:
    labels = tuple(enumerate_partitions(n))
    values = tuple(tuple(_mn(tuple(lam), tuple(mu)) for mu in labels) for lam in labels)
    return CharacterTable(n, labels, values)


@lru_cache(maxsize=None)
def _cached_table(n: int) -> CharacterTable:
    return build_character_table(n)


def character_table(n: int, limit: int = TABLE_LIMIT) -> CharacterTable:
    """Full character table of S_n, cached per n.

    Raises :class:`ResourceLimitError` above ``limit`` (default 20; P(20) = 627).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > limit:
        raise ResourceLimitError(f"character table of S_{n} exceeds the limit n <= {limit}")
    return _cached_table(n)


class BoundRow(NamedTuple):
    lam: Partition
    mu: Partition
    lhs: float
    rhs: float
    holds: bool


def mn_bound_report(n: int) -> list[BoundRow]:
    """Compare ``|chi(sigma)|`` with ``chi(1) ** (1 - log(n/k) / (32 log n))``.

    ``k`` is the number of fixed points of the class.  Classes with no fixed
    point (where log(n/k) is undefined) and the identity class are skipped.
    The bound is only claimed for large n, so this is a report and never
    raises on failure.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    table = character_table(n, limit=max(n, TABLE_LIMIT))
    logn = math.log(n)
    rows = []
    for mu in table.labels:
        k = mu.multiplicity(1)
        if not 1 <= k < n:
            continue
        exponent = 1 - math.log(n / k) / (32 * logn)
        for lam in table.labels:
            value = abs(table.value(lam, mu))
            dim = table.value(lam, (1,) * n)
            log_rhs = exponent * math.log(dim)
            rhs = math.exp(log_rhs)
            holds = value == 0 or math.log(value) <= log_rhs
            rows.append(BoundRow(lam, mu, float(value), rhs, holds))
    return rows


CACHE_FORMAT = "snkit-character-table"
CACHE_VERSION = 1


def cache_file(directory, n: int) -> Path:
    return Path(directory) / f"chartab-n{n}-v{CACHE_VERSION}.json"


def disk_cached_table(n: int, directory, limit: int = TABLE_LIMIT) -> CharacterTable:
    """:func:`character_table` backed by a JSON file in ``directory``.

    A missing, unreadable or inconsistent cache file is rebuilt with a warning.
    """
    table = None
    path = cache_file(directory, n)
    if n > limit:
        raise ResourceLimitError(f"character table of S_{n} exceeds the limit n <= {limit}")
    if path.exists():
        try:
            data = json.loads(path.read_text())
            if data.get("format") != CACHE_FORMAT or data.get("version") != CACHE_VERSION:
                raise ValueError("format header mismatch")
            table = CharacterTable.from_dict(data["table"])
            if table.n != n:
                raise ValueError("cached table has the wrong n")
        except (OSError, ValueError, KeyError, TypeError) as exc:
            logging.getLogger(__name__).warning("ignoring corrupt table cache %s (%s); recomputing", path, exc)
            table = None
    if table is None:
        table = character_table(n, limit)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"format": CACHE_FORMAT, "version": CACHE_VERSION,
                                   "table": table.to_dict()}))
        tmp.replace(path)
    return table
