"""Generating tuples of S_n and A_n, the product replacement graph and
T-systems.

Exhaustive counts run on element indices: the group is listed once, a full
multiplication table is built with numpy, and every move becomes an index
map over all k-tuples at once.  Components are taken over the whole of G^k.
The moves and automorphisms never change whether a tuple generates, so each
component is uniformly generating or not and a single representative decides
it.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import DomainError, ExcludedCaseError, ResourceLimitError
from .partitions import Partition
from .permgroup import Permutation, _cycle_lengths, commutator, generates_alternating, group_order

#: Default ceiling on |G|^k, the number of tuples an exhaustive count visits.
TUPLE_CEILING = 7_000_000

GROUPS = ("alternating", "symmetric")


def group_size(n: int, group: str) -> int:
    if group == "symmetric":
        return math.factorial(n)
    if group == "alternating":
        return max(math.factorial(n) // 2, 1)
    raise ValueError(f"unknown group {group!r}")


def generates(entries: Sequence[Permutation], group: str) -> bool:
    """Whether ``entries`` generate all of S_n or A_n."""
    n = entries[0].degree
    if group == "alternating":
        if not all(e.is_even() for e in entries):
            return False
        if len(entries) == 2 and n >= 3:
            return generates_alternating(*entries)
        return group_order(entries) == group_size(n, group)
    if group == "symmetric":
        return group_order(entries) == group_size(n, group)
    raise ValueError(f"unknown group {group!r}")


class GeneratingTuple:
    """A k-tuple of permutations generating the tagged group."""

    __slots__ = ("entries", "group")

    def __init__(self, entries: Iterable[Permutation], group: str, check: bool = True):
        entries = tuple(entries)
        if not entries:
            raise ValueError("need at least one entry")
        if group not in GROUPS:
            raise ValueError(f"unknown group {group!r}")
        if check and not generates(entries, group):
            raise DomainError(f"{[str(e) for e in entries]} does not generate the {group} group")
        self.entries = entries
        self.group = group

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> int:
        return self.entries[0].degree

    def replace(self, i: int, value: Permutation) -> "GeneratingTuple":
        entries = list(self.entries)
        entries[i] = value
        return GeneratingTuple(entries, self.group)

    def __eq__(self, other) -> bool:
        return isinstance(other, GeneratingTuple) and (self.entries, self.group) == (other.entries, other.group)

    def __hash__(self) -> int:
        return hash((self.entries, self.group))

    def __repr__(self) -> str:
        return f"GeneratingTuple({[str(e) for e in self.entries]}, {self.group!r})"

    def to_strings(self) -> list[str]:
        return [str(e) for e in self.entries]


def nielsen_neighbors(t: GeneratingTuple) -> set[GeneratingTuple]:
    """Images under ``R_ij``, ``L_ij``, ``P_ij`` and ``I_i``.

    Inverse moves are not listed: each of these moves has an inverse that is a
    composite of listed moves, so orbits and components are unchanged.
    """
    out = set()
    g = t.entries
    for i, j in itertools.permutations(range(t.k), 2):
        out.add(t.replace(i, g[i] * g[j]))
        out.add(t.replace(i, g[j] * g[i]))
        if i < j:
            swapped = list(g)
            swapped[i], swapped[j] = g[j], g[i]
            out.add(GeneratingTuple(swapped, t.group))
    for i in range(t.k):
        out.add(t.replace(i, g[i].inverse()))
    return out


def pra_neighbors(t: GeneratingTuple) -> set[GeneratingTuple]:
    """Images under the product replacement moves ``R_ij^{+-}`` and ``L_ij^{+-}``."""
    out = set()
    g = t.entries
    for i, j in itertools.permutations(range(t.k), 2):
        gj, gj_inv = g[j], g[j].inverse()
        out.add(t.replace(i, g[i] * gj))
        out.add(t.replace(i, g[i] * gj_inv))
        out.add(t.replace(i, gj * g[i]))
        out.add(t.replace(i, gj_inv * g[i]))
    return out


def higman_invariant(t: GeneratingTuple) -> tuple[Partition, ...]:
    """Cycle types of ``[g1, g2]`` and its inverse, deduplicated and sorted.

    Up to S_n-conjugation the commutator and its inverse always share a cycle
    type, so the result has one entry; both are kept to mirror the invariant.
    """
    if t.k != 2:
        raise ValueError("the Higman invariant is defined for pairs")
    c = commutator(*t.entries)
    return tuple(sorted({c.cycle_type(), c.inverse().cycle_type()}, reverse=True))


class UnionFind:
    """Disjoint sets over ``0 .. size-1`` with path compression and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.sizes = [1] * size
        self.count = size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.sizes[ra] < self.sizes[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.sizes[ra] += self.sizes[rb]
        self.count -= 1
        return True

    def labels(self) -> list[int]:
        return [self.find(x) for x in range(len(self.parent))]


class GroupTables:
    """S_n or A_n listed in lexicographic order, with product, inverse and
    S_n-conjugation as index arrays."""

    def __init__(self, n: int, group: str):
        if group not in GROUPS:
            raise ValueError(f"unknown group {group!r}")
        self.n, self.group = n, group
        perms = [
            p for p in itertools.permutations(range(n))
            if group == "symmetric" or (n - len(_cycle_lengths(p))) % 2 == 0
        ]
        self.elements = np.array(perms, dtype=np.int64).reshape(len(perms), n)
        self.size = len(perms)
        self._weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self._keys = self.elements @ self._weights
        self.mul = np.empty((self.size, self.size), dtype=np.int32)
        for a in range(self.size):
            # row a: elements[a] composed after every elements[b]
            self.mul[a] = self.index_of(self.elements[a][self.elements])
        ident = self.index_of(np.arange(n)[None, :])[0]
        self.identity = int(ident)
        self.inv = np.argmax(self.mul == ident, axis=1).astype(np.int32)

    def index_of(self, images: np.ndarray) -> np.ndarray:
        keys = images @ self._weights
        idx = np.searchsorted(self._keys, keys)
        return idx.astype(np.int32)

    def element(self, i: int) -> Permutation:
        return Permutation(self.elements[i].tolist(), check=False)

    def index(self, perm: Permutation) -> int:
        return int(self.index_of(np.asarray(perm.images)[None, :])[0])

    def conjugation(self, g: Permutation) -> np.ndarray:
        """Index map ``x -> g x g^-1``."""
        gi = np.asarray(g.images)
        ginv = np.asarray(g.inverse().images)
        conj = gi[self.elements[:, ginv]]
        return self.index_of(conj)

    def automorphism_generators(self) -> list[np.ndarray]:
        """Conjugation by ``(1 2)`` and ``(1 2 ... n)``, which generate S_n."""
        if self.n < 2:
            return []
        gens = [Permutation.from_cycles([(0, 1)], self.n)]
        if self.n > 2:
            gens.append(Permutation.from_cycles([tuple(range(self.n))], self.n))
        return [self.conjugation(g) for g in gens]

    @cached_property
    def cycle_type_ids(self) -> tuple[np.ndarray, list[Partition]]:
        types = [Partition.from_parts(_cycle_lengths(row)) for row in self.elements.tolist()]
        labels = sorted(set(types), reverse=True)
        lookup = {t: i for i, t in enumerate(labels)}
        return np.array([lookup[t] for t in types], dtype=np.int32), labels


@dataclass
class OrbitSummary:
    group: str
    n: int
    k: int
    kind: str
    orbit_sizes: tuple[int, ...]
    total: int
    representatives: list[tuple[Permutation, ...]] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if sum(self.orbit_sizes) != self.total:
            raise ArithmeticError("orbit sizes do not add up to the number of generating tuples")

    @property
    def orbit_count(self) -> int:
        return len(self.orbit_sizes)

    def to_dict(self) -> dict:
        hist = Counter(self.orbit_sizes)
        return {
            "group": self.group,
            "n": self.n,
            "k": self.k,
            "tau_or_kappa": self.kind,
            "orbit_count": self.orbit_count,
            "total": self.total,
            "orbit_sizes_histogram": {str(s): hist[s] for s in sorted(hist)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def representative_strings(self) -> list[list[str]]:
        return [[str(p) for p in rep] for rep in self.representatives]


class TupleGraph:
    """All of G^k with the move edges of either graph, and its components."""

    def __init__(self, n: int, group: str, k: int, kind: str, ceiling: int = TUPLE_CEILING,
                 tables: GroupTables | None = None):
        if kind not in ("kappa", "tau"):
            raise ValueError(f"unknown graph kind {kind!r}")
        if k < 1:
            raise ValueError("k must be positive")
        if group == "alternating" and n < 3 or group == "symmetric" and n < 2:
            raise DomainError(f"the {group} group of degree {n} is trivial")
        if kind == "tau" and n == 6:
            raise ExcludedCaseError("degree 6 has exceptional outer automorphisms; T-systems not supported")
        nodes = group_size(n, group) ** k
        if nodes > ceiling:
            raise ResourceLimitError(f"|G|^k = {nodes} exceeds ceiling {ceiling}")
        self.n, self.group, self.k, self.kind = n, group, k, kind
        self.tables = tables or GroupTables(n, group)
        self.num_nodes = nodes
        self.id_dtype = np.int32 if nodes < 2**31 else np.int64
        self._build()

    def digits(self, ids: np.ndarray) -> list[np.ndarray]:
        N = self.tables.size
        out = []
        for _ in range(self.k):
            out.append(ids % N)
            ids = ids // N
        return out[::-1]

    def encode(self, digits: Sequence[np.ndarray]) -> np.ndarray:
        N = self.tables.size
        ids = np.zeros(np.shape(digits[0]), dtype=self.id_dtype)
        for d in digits:
            ids = ids * N + d
        return ids

    def move_images(self) -> Iterator[np.ndarray]:
        """For each move, the image of every node id.

        ``R_ij^-`` and ``L_ij^-`` undo ``R_ij^+`` and ``L_ij^+``, so as
        undirected edges they repeat them and are left out.
        """
        t = self.tables
        d = self.digits(np.arange(self.num_nodes, dtype=self.id_dtype))
        for i, j in itertools.permutations(range(self.k), 2):
            for new in (t.mul[d[i], d[j]], t.mul[d[j], d[i]]):
                moved = list(d)
                moved[i] = new
                yield self.encode(moved)
        if self.kind == "tau":
            for i, j in itertools.combinations(range(self.k), 2):
                moved = list(d)
                moved[i], moved[j] = d[j], d[i]
                yield self.encode(moved)
            for i in range(self.k):
                moved = list(d)
                moved[i] = t.inv[d[i]]
                yield self.encode(moved)
            for conj in t.automorphism_generators():
                yield self.encode([conj[x] for x in d])

    def _build(self) -> None:
        images = list(self.move_images())
        ids = np.arange(self.num_nodes, dtype=self.id_dtype)
        rows = np.tile(ids, len(images))
        cols = np.concatenate(images) if images else rows
        del images
        graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)),
                           shape=(self.num_nodes, self.num_nodes)).tocsr()
        del rows, cols
        self.num_components, self.labels = connected_components(graph, directed=False)
        # first node of each component, in order of component label
        _, self.first_node = np.unique(self.labels, return_index=True)

    def node_tuple(self, node: int) -> tuple[Permutation, ...]:
        return tuple(self.tables.element(int(x[()])) for x in self.digits(np.array(node)))

    @cached_property
    def generating_components(self) -> np.ndarray:
        """Component labels whose tuples generate the whole group."""
        target = group_size(self.n, self.group)
        keep = [
            c for c in range(self.num_components)
            if group_order(self.node_tuple(int(self.first_node[c]))) == target
        ]
        return np.array(keep, dtype=np.int64)

    def generating_mask(self) -> np.ndarray:
        return np.isin(self.labels, self.generating_components)

    def summary(self) -> OrbitSummary:
        sizes = np.bincount(self.labels, minlength=self.num_components)
        comps = self.generating_components
        reps = [self.node_tuple(int(self.first_node[c])) for c in comps]
        orbit_sizes = tuple(int(sizes[c]) for c in comps)
        return OrbitSummary(self.group, self.n, self.k, self.kind, orbit_sizes,
                            int(sum(orbit_sizes)), reps)

    def commutator_types(self) -> tuple[np.ndarray, list[Partition]]:
        """Per node (k = 2), the cycle-type id of ``[g1, g2]``."""
        if self.k != 2:
            raise ValueError("commutators need k = 2")
        t = self.tables
        a, b = self.digits(np.arange(self.num_nodes, dtype=self.id_dtype))
        comm = t.mul[t.mul[t.inv[a], t.inv[b]], t.mul[a, b]]
        ids, labels = t.cycle_type_ids
        return ids[comm], labels


def enumerate_generating_pairs(n: int, group: str, ceiling: int = TUPLE_CEILING) -> Iterator[GeneratingTuple]:
    """Every generating pair of the group exactly once, in lexicographic order."""
    yield from enumerate_generating_tuples(n, group, 2, ceiling)


def enumerate_generating_tuples(n: int, group: str, k: int, ceiling: int = TUPLE_CEILING) -> Iterator[GeneratingTuple]:
    graph = TupleGraph(n, group, k, "kappa", ceiling)
    for node in np.flatnonzero(graph.generating_mask()):
        yield GeneratingTuple(graph.node_tuple(int(node)), group, check=False)


def pra_component_count(n: int, group: str, k: int = 2, ceiling: int = TUPLE_CEILING) -> OrbitSummary:
    """Connected components of the product replacement graph on generating k-tuples."""
    return TupleGraph(n, group, k, "kappa", ceiling).summary()


def t_system_count(n: int, group: str, k: int = 2, ceiling: int = TUPLE_CEILING) -> OrbitSummary:
    """T_k-systems: components under Nielsen moves and automorphisms.

    Automorphisms act as conjugation by S_n.  That is all of Aut(A_n) and
    Aut(S_n) except at degree 6, which is rejected.
    """
    return TupleGraph(n, group, k, "tau", ceiling).summary()


@dataclass
class HigmanCheck:
    lower_bound: int
    classes: list[Partition]
    orbit_invariants: list[tuple[Partition, ...]]

    @property
    def constant_on_orbits(self) -> bool:
        return all(len(inv) == 1 for inv in self.orbit_invariants)


def higman_check(n: int, ceiling: int = TUPLE_CEILING, graph: TupleGraph | None = None) -> HigmanCheck:
    """Commutator classes over the generating pairs of A_n, overall and per T_2-system."""
    graph = graph or TupleGraph(n, "alternating", 2, "tau", ceiling)
    types, labels = graph.commutator_types()
    comps = graph.generating_components
    mask = np.isin(graph.labels, comps)
    pairs = np.unique(np.stack([graph.labels[mask], types[mask]]), axis=1)
    per_orbit = {int(c): [] for c in comps}
    for c, t in pairs.T:
        per_orbit[int(c)].append(labels[int(t)])
    seen = sorted({labels[int(t)] for t in pairs[1]}, reverse=True)
    return HigmanCheck(len(seen), seen, [tuple(per_orbit[int(c)]) for c in comps])


def higman_lower_bound(n: int, ceiling: int = TUPLE_CEILING) -> int:
    """Number of S_n-classes meeting ``{[p, s] : (p, s) generates A_n}``."""
    graph = TupleGraph(n, "alternating", 2, "kappa", ceiling)
    types, labels = graph.commutator_types()
    return len(np.unique(types[graph.generating_mask()]))
