"""Character-sum counts of products and commutators in S_n and A_n, with
brute-force oracles for each.

Character sums are accumulated as exact :class:`~fractions.Fraction` values.
Every count must come out a nonnegative integer; anything else raises
:class:`ArithmeticError`, since it can only mean a wrong table or a wrong
formula.  Characters of S_n are real, so ``chi(t^-1) == chi(t)`` and the
inverse in the product formula is dropped.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, NamedTuple, Sequence

from .characters import CharacterTable, character_table
from .errors import DomainError, ResourceLimitError
from .partitions import ClassDescriptor, Partition, class_product_mass, class_products, classes_of
from .permgroup import (
    Permutation,
    _cycle_lengths,
    _is_prime,
    generates_alternating,
    jordan_prime_cycle,
)

#: Default ceiling on the number of group elements a brute-force oracle may visit.
BRUTE_FORCE_CEILING = 200_000

TableProvider = Callable[[int], CharacterTable]


@dataclass(frozen=True)
class CountReport:
    exact: int
    class_size: int
    brute_force: int | None = None

    def __post_init__(self):
        if self.brute_force is not None and self.brute_force != self.exact:
            raise ArithmeticError(
                f"character sum {self.exact} disagrees with brute force {self.brute_force}"
            )

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.exact, self.class_size)

    def to_dict(self) -> dict:
        return {
            "exact": str(self.exact),
            "class_size": str(self.class_size),
            "ratio": str(self.ratio),
            "ratio_float": float(self.ratio),
            "brute_force": None if self.brute_force is None else str(self.brute_force),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _as_class(c) -> ClassDescriptor:
    return c if isinstance(c, ClassDescriptor) else ClassDescriptor(Partition.from_parts(c))


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer: {value}")
    if value < 0:
        raise ArithmeticError(f"{what} is negative: {value}")
    return int(value)


def pick_prime(n: int, upper: Fraction = Fraction(3, 5)) -> int | None:
    """Largest prime p with ``n/2 < p <= upper * n``, or None."""
    upper = Fraction(upper)
    top = math.floor(upper * n)
    for p in range(top, 0, -1):
        if 2 * p <= n:
            return None
        if _is_prime(p):
            return p
    return None


def paper_cycle_type(n: int, p: int) -> Partition:
    """``(p, n-p-2, 1, 1)`` for even n and ``(p, n-p-2, 2)`` for odd n."""
    if not (2 * p > n and 5 * p <= 3 * n and _is_prime(p)):
        raise DomainError(f"need a prime p with n/2 < p <= 3n/5, got p={p}, n={n}")
    if n - p - 2 < 1:
        raise DomainError(f"n - p - 2 must be positive, got {n - p - 2}")
    tail = (1, 1) if n % 2 == 0 else (2,)
    return Partition.from_parts((p, n - p - 2) + tail)


def triple_count(c1, c2, tau: Permutation, table: CharacterTable | None = None) -> int:
    """Number of pairs ``(x, y)`` in ``C1 x C2`` with ``x * y == tau``."""
    c1, c2 = _as_class(c1), _as_class(c2)
    n = tau.degree
    if c1.n != n or c2.n != n:
        raise ValueError("classes and tau must live in the same S_n")
    table = table or character_table(n)
    i1, i2, it = table.index(c1.cycle_type), table.index(c2.cycle_type), table.index(tau.cycle_type())
    dim = table.index((1,) * n)
    total = Fraction(0)
    for row in table.values:
        if row[i1] and row[i2] and row[it]:
            total += Fraction(row[i1] * row[i2] * row[it], row[dim])
    return _as_int(total * c1.size * c2.size / math.factorial(n), "triple count")


def _commutator_sum(pi_type: Partition, c_type: Partition, table: CharacterTable) -> Fraction:
    ip, ic, dim = table.index(pi_type), table.index(c_type), table.index((1,) * table.n)
    total = Fraction(0)
    for row in table.values:
        if row[ip] and row[ic]:
            total += Fraction(row[ip] ** 2 * row[ic], row[dim])
    return total


def commutator_count_sym(pi: Permutation, c, table: CharacterTable | None = None,
                         oracle: bool = False, ceiling: int = BRUTE_FORCE_CEILING) -> CountReport:
    """``#{s in S_m : [pi, s] in C}`` as ``|C| * sum chi(pi)^2 chi(C) / chi(1)``."""
    c = _as_class(c)
    m = pi.degree
    if c.n != m:
        raise ValueError("pi and C must live in the same S_m")
    table = table or character_table(m)
    exact = _as_int(c.size * _commutator_sum(pi.cycle_type(), c.cycle_type, table), "commutator count")
    brute = commutator_census(pi, "symmetric", ceiling)[c.cycle_type] if oracle else None
    return CountReport(exact, c.size, brute)


def _check_alt_inputs(pi: Permutation, c: ClassDescriptor) -> None:
    if not pi.is_even():
        raise DomainError(f"{pi} is not in A_n")
    if not c.is_even:
        raise DomainError(f"class {tuple(c.cycle_type)} is not contained in A_n")
    if ClassDescriptor(pi.cycle_type()).splits_in_alternating:
        raise DomainError(f"class of {pi} splits in A_n; the halved formula does not apply")


def commutator_count_alt(pi: Permutation, c, table: CharacterTable | None = None,
                         oracle: bool = False, ceiling: int = BRUTE_FORCE_CEILING) -> CountReport:
    """``#{s in A_n : [pi, s] in C}`` as ``|C|/2 * sum chi(pi)^2 chi(C) / chi(1)``.

    Valid only when the S_n-class of ``pi`` stays a single A_n-class; splitting
    classes and classes outside A_n raise :class:`DomainError`.
    """
    c = _as_class(c)
    n = pi.degree
    if c.n != n:
        raise ValueError("pi and C must live in the same S_n")
    _check_alt_inputs(pi, c)
    table = table or character_table(n)
    total = _commutator_sum(pi.cycle_type(), c.cycle_type, table) * c.size / 2
    exact = _as_int(total, "commutator count")
    brute = commutator_census(pi, "alternating", ceiling)[c.cycle_type] if oracle else None
    return CountReport(exact, c.size, brute)


# -- brute-force oracles -----------------------------------------------------


def _group_size(n: int, group: str) -> int:
    if group == "symmetric":
        return math.factorial(n)
    if group == "alternating":
        return math.factorial(n) // 2 if n > 1 else 1
    raise ValueError(f"unknown group {group!r}")


def _parity(images: Sequence[int]) -> int:
    return (len(images) - len(_cycle_lengths(images))) % 2


def iter_group(n: int, group: str, ceiling: int = BRUTE_FORCE_CEILING) -> Iterator[tuple[int, ...]]:
    """Elements of S_n or A_n as image tuples, in lexicographic order."""
    size = _group_size(n, group)
    if size > ceiling:
        raise ResourceLimitError(f"|{group} group of degree {n}| = {size} exceeds ceiling {ceiling}")
    for s in itertools.permutations(range(n)):
        if group == "symmetric" or _parity(s) == 0:
            yield s


def _commutator_type(p: tuple, pinv: tuple, s: tuple) -> Partition:
    n = len(s)
    sinv = [0] * n
    for i, x in enumerate(s):
        sinv[x] = i
    comm = [pinv[sinv[p[s[x]]]] for x in range(n)]
    return Partition.from_parts(_cycle_lengths(comm))


def commutator_census(pi: Permutation, group: str = "alternating",
                      ceiling: int = BRUTE_FORCE_CEILING) -> Counter:
    """Cycle types of ``[pi, s]`` over every ``s`` in the group, by exhaustion."""
    p, pinv = pi.images, pi.inverse().images
    return Counter(_commutator_type(p, pinv, s) for s in iter_group(pi.degree, group, ceiling))


def generating_commutator_census(pi: Permutation, ceiling: int = BRUTE_FORCE_CEILING) -> Counter:
    """Cycle types of ``[pi, s]`` over ``s`` in A_n with ``<pi, s> = A_n``, by exhaustion."""
    p, pinv = pi.images, pi.inverse().images
    out = Counter()
    for s in iter_group(pi.degree, "alternating", ceiling):
        if generates_alternating(pi, Permutation(s, check=False)):
            out[_commutator_type(p, pinv, s)] += 1
    return out


def _bipartitions(pi: Permutation) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Unordered splits of the cycles of ``pi`` into two nonempty families, as point sets."""
    cycles = pi.cycles()
    k = len(cycles)
    out = []
    for mask in range(2 ** (k - 1) - 1):
        inside = [cycles[0]] + [cycles[i] for i in range(1, k) if mask >> (i - 1) & 1]
        outside = [cycles[i] for i in range(1, k) if not mask >> (i - 1) & 1]
        out.append((tuple(sorted(sum(inside, ()))), tuple(sorted(sum(outside, ())))))
    return out


def intransitive_census(pi: Permutation, group: str = "alternating",
                        ceiling: int = BRUTE_FORCE_CEILING) -> Counter:
    """Cycle types of ``[pi, s]`` over ``s`` with ``<pi, s>`` intransitive.

    ``<pi, s>`` is intransitive exactly when ``s`` maps some nonempty proper
    union of ``pi``-cycles onto itself, i.e. when ``s`` lies in one of the
    Young subgroups ``Sym(A) x Sym(B)`` cut out by the cycles of ``pi``.
    Each ``s`` is counted only for the first such split it preserves.  When
    those subgroups together are larger than ``ceiling`` the whole group is
    scanned instead.
    """
    n = pi.degree
    splits = _bipartitions(pi)
    cost = sum(math.factorial(len(a)) * math.factorial(len(b)) for a, b in splits)
    p, pinv = pi.images, pi.inverse().images
    out = Counter()
    if cost > ceiling:
        for s in iter_group(n, group, ceiling):
            orbit = _orbit_of_zero(p, s)
            if len(orbit) < n:
                out[_commutator_type(p, pinv, s)] += 1
        return out
    earlier: list[frozenset[int]] = []
    for a, b in splits:
        for sa in itertools.permutations(a):
            for sb in itertools.permutations(b):
                s = [0] * n
                for x, y in zip(a, sa):
                    s[x] = y
                for x, y in zip(b, sb):
                    s[x] = y
                if group == "alternating" and _parity(s):
                    continue
                if any(all(s[x] in block for x in block) for block in earlier):
                    continue
                out[_commutator_type(p, pinv, s)] += 1
        earlier.append(frozenset(a))
    return out


def _orbit_of_zero(p: Sequence[int], s: Sequence[int]) -> set[int]:
    orbit = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in (p[x], s[x]):
            if y not in orbit:
                orbit.add(y)
                stack.append(y)
    return orbit


def intransitive_commutator_count(pi: Permutation, c, ceiling: int = BRUTE_FORCE_CEILING) -> int:
    """``#{s in A_n : [pi, s] in C and <pi, s> intransitive}``, counted exactly."""
    c = _as_class(c)
    if not c.is_even:
        return 0
    return intransitive_census(pi, "alternating", ceiling)[c.cycle_type]


def intransitive_upper_bound(pi: Permutation, c, tables: TableProvider = character_table) -> int:
    """Union bound on the intransitive count over every split of ``pi``'s cycles.

    For each unordered split ``{H, K \\ H}`` this adds, over ``C = C1 C2``, the
    product of the commutator counts of the two restrictions of ``pi`` in the
    symmetric groups on the two point sets.  It counts ``s`` in S_n, so it
    bounds the A_n count from above.
    """
    c = _as_class(c)
    cycles = pi.cycles()
    total = 0
    for a, _ in _bipartitions(pi):
        a_set = set(a)
        inside = [len(cy) for cy in cycles if cy[0] in a_set]
        outside = [len(cy) for cy in cycles if cy[0] not in a_set]
        p1, p2 = Permutation.of_cycle_type(inside), Permutation.of_cycle_type(outside)
        k = len(a)
        for c1, c2 in class_products(c, k):
            left = commutator_count_sym(p1, c1, tables(k)).exact
            if left:
                total += left * commutator_count_sym(p2, c2, tables(c.n - k)).exact
    return total


def _check_generating_inputs(pi: Permutation) -> int:
    p = jordan_prime_cycle(pi)
    if p is None:
        raise DomainError(f"{pi} has no prime cycle of length in (n/2, n-3]")
    if not pi.is_even():
        raise DomainError(f"{pi} is not in A_n")
    return p


def generating_commutator_count(pi: Permutation, c, oracle: bool = False,
                                ceiling: int = BRUTE_FORCE_CEILING,
                                table: CharacterTable | None = None) -> CountReport:
    """``#{s in A_n : [pi, s] in C and <pi, s> = A_n}``.

    Computed as the A_n commutator count minus the exact intransitive count;
    this is exact because a transitive ``<pi, s>`` containing ``pi``'s prime
    cycle is already A_n.  ``oracle=True`` adds a direct scan of A_n.
    """
    c = _as_class(c)
    _check_generating_inputs(pi)
    total = commutator_count_alt(pi, c, table).exact
    exact = total - intransitive_commutator_count(pi, c, ceiling)
    brute = generating_commutator_census(pi, ceiling)[c.cycle_type] if oracle else None
    return CountReport(exact, c.size, brute)


def generating_commutator_table(pi: Permutation, oracle: bool = False,
                                ceiling: int = BRUTE_FORCE_CEILING) -> dict[Partition, CountReport]:
    """:func:`generating_commutator_count` for every S_n-class inside A_n, sharing the scans."""
    _check_generating_inputs(pi)
    n = pi.degree
    table = character_table(n)
    intrans = intransitive_census(pi, "alternating", ceiling)
    direct = generating_commutator_census(pi, ceiling) if oracle else None
    out = {}
    for c in classes_of(n, even_only=True):
        total = commutator_count_alt(pi, c, table).exact
        exact = total - intrans[c.cycle_type]
        out[c.cycle_type] = CountReport(exact, c.size, None if direct is None else direct[c.cycle_type])
    return out


class MassRow(NamedTuple):
    k: int
    mass: int
    bound: float
    holds: bool
    kind: str


def lemma_2_5_6_report(c, delta: Fraction = Fraction(1, 4)) -> list[MassRow]:
    """Class-product masses against their three bounds.

    Rows with ``kind == "middle"`` cover ``n/2 < k <= 5n/8`` against
    ``exp(-3n/50) |C|``; the ``"n-1"`` and ``"n-2"`` rows compare against
    ``delta |C|`` and ``2 delta^2 |C|``.  The bounds are asymptotic, so the
    ``holds`` flags are reported, not enforced.
    """
    c = _as_class(c)
    delta = Fraction(delta)
    n = c.n
    if not 0 < delta <= Fraction(1, 4):
        raise DomainError("delta must lie in (0, 1/4]")
    if c.fixed_points > delta * n:
        raise DomainError(f"f(C) = {c.fixed_points} exceeds delta * n = {delta * n}")
    rows = []
    bound = math.exp(-3 * n / 50) * c.size
    for k in range(n // 2 + 1, n):
        if 8 * k > 5 * n:
            break
        mass = class_product_mass(c, k)
        rows.append(MassRow(k, mass, bound, mass <= bound, "middle"))
    if n >= 2:
        mass = class_product_mass(c, n - 1)
        rows.append(MassRow(n - 1, mass, float(delta * c.size), mass <= delta * c.size, "n-1"))
    if n >= 3:
        mass = class_product_mass(c, n - 2)
        limit = 2 * delta**2 * c.size
        rows.append(MassRow(n - 2, mass, float(limit), mass <= limit, "n-2"))
    return rows


def set_stabilizer_census(n: int, ceiling: int = BRUTE_FORCE_CEILING) -> Counter:
    """``(cycle type, k)`` -> number of elements of that type mapping {0..k-1} onto itself."""
    out = Counter()
    for s in iter_group(n, "symmetric", ceiling):
        t = Partition.from_parts(_cycle_lengths(s))
        high = 0
        for k in range(1, n):
            high = max(high, s[k - 1])
            if high == k - 1:
                out[t, k] += 1
    return out


class FactorTwoRow(NamedTuple):
    label: str
    m: int
    pi_type: Partition
    c_type: Partition
    report: CountReport


def factor_two_cases(n: int) -> list[tuple[str, int, Partition]]:
    """The cycle types whose S_m commutator counts approach ``2 |C|``.

    Derived from ``n``: ``(p, n-p-2, 1)`` in S_{n-1} and ``(p, n-p-2)`` in
    S_{n-2} with p from :func:`pick_prime` at 5/8, plus ``(m)``, ``(m-1, 1)``,
    ``(m-2, 2)`` and ``(m-2, 1, 1)`` with m = n.
    """
    cases = []
    p = pick_prime(n, Fraction(5, 8))
    if p is not None and n - p - 2 >= 1:
        cases.append(("p,n-p-2,1", n - 1, Partition.from_parts((p, n - p - 2, 1))))
        cases.append(("p,n-p-2", n - 2, Partition.from_parts((p, n - p - 2))))
    m = n
    cases.append(("m", m, Partition((m,))))
    cases.append(("m-1,1", m, Partition((m - 1, 1))))
    if m >= 4:
        cases.append(("m-2,2", m, Partition.from_parts((m - 2, 2))))
    cases.append(("m-2,1,1", m, Partition((m - 2, 1, 1))))
    return cases


def factor_two_report(n: int, delta: Fraction = Fraction(2, 3), oracle: bool = False,
                      ceiling: int = BRUTE_FORCE_CEILING) -> list[FactorTwoRow]:
    """Commutator counts over S_m for the :func:`factor_two_cases`, for every
    class ``C`` inside A_m with ``f(C) <= delta * m``."""
    rows = []
    for label, m, pi_type in factor_two_cases(n):
        pi = Permutation.of_cycle_type(pi_type)
        census = commutator_census(pi, "symmetric", ceiling) if oracle else None
        table = character_table(m)
        for c in classes_of(m, even_only=True):
            if c.fixed_points > delta * m:
                continue
            rep = commutator_count_sym(pi, c, table)
            if census is not None:
                rep = CountReport(rep.exact, rep.class_size, census[c.cycle_type])
            rows.append(FactorTwoRow(label, m, pi_type, c.cycle_type, rep))
    return rows
