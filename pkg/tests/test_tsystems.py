import itertools
import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from snkit import tsystems
from snkit.errors import DomainError, ExcludedCaseError, ResourceLimitError
from snkit.partitions import classes_of
from snkit.permgroup import Permutation, group_order
from snkit.tsystems import (
    GeneratingTuple,
    TupleGraph,
    UnionFind,
    enumerate_generating_pairs,
    enumerate_generating_tuples,
    higman_check,
    higman_invariant,
    higman_lower_bound,
    nielsen_neighbors,
    pra_component_count,
    pra_neighbors,
    t_system_count,
)

# (generating pairs, kappa_2, tau_2, higman lower bound), from exhaustive runs
PINNED_ALT = {3: (8, 1, 1, 1), 4: (96, 1, 1, 1), 5: (2280, 3, 2, 2)}
PINNED_SYM = {2: (3, 1, 1), 3: (18, 1, 1), 4: (216, 1, 1), 5: (6840, 3, 3)}


def elements(n, group):
    out = [Permutation(q) for q in itertools.permutations(range(n))]
    if group == "alternating":
        out = [p for p in out if p.is_even()]
    return out


def brute_generating(n, group, k=2):
    els = elements(n, group)
    target = tsystems.group_size(n, group)
    return [t for t in itertools.product(els, repeat=k) if group_order(t) == target]


def oracle_components(n, group, k, kind):
    """Component sizes from per-tuple neighbor sets and a plain union-find."""
    tuples = [GeneratingTuple(t, group, check=False) for t in brute_generating(n, group, k)]
    index = {t: i for i, t in enumerate(tuples)}
    uf = UnionFind(len(tuples))
    conj = [Permutation(q) for q in itertools.permutations(range(n))]
    for t, i in index.items():
        nbrs = pra_neighbors(t) if kind == "kappa" else nielsen_neighbors(t)
        if kind == "tau":
            nbrs |= {GeneratingTuple([e.conjugate_by(g) for e in t.entries], group, check=False) for g in conj}
        for u in nbrs:
            uf.union(i, index[u])
    labels = uf.labels()
    return sorted(labels.count(r) for r in set(labels))


def test_generating_pair_counts():
    assert len(list(enumerate_generating_pairs(3, "alternating"))) == 8
    assert len(list(enumerate_generating_pairs(2, "symmetric"))) == 3
    for n, group in ((4, "alternating"), (3, "symmetric"), (4, "symmetric")):
        assert sorted(t.entries for t in enumerate_generating_pairs(n, group)) == sorted(brute_generating(n, group))


def test_generating_tuple_checks():
    a, b = Permutation.parse("(1 2 3)", 5), Permutation.parse("(3 4 5)")
    t = GeneratingTuple([a, b], "alternating")
    assert t.k == 2 and t.degree == 5
    assert t.to_strings() == ["(1 2 3)", "(3 4 5)"]
    with pytest.raises(DomainError):
        GeneratingTuple([a, a], "alternating")
    with pytest.raises(DomainError):
        t.replace(1, a)


def test_neighbor_counts():
    t = GeneratingTuple([Permutation.parse("(1 2 3)", 5), Permutation.parse("(3 4 5)")], "alternating")
    nb = nielsen_neighbors(t)
    assert len(nb) <= 8
    pra = pra_neighbors(t)
    assert len(pra) <= 8
    # R_12 replaces the first entry by the product
    a, b = t.entries
    assert GeneratingTuple([a * b, b], "alternating") in nb
    for u in nb | pra:
        assert group_order(u.entries) == 60


def test_nielsen_move_census_degree_4():
    a = Permutation.parse("(1 2 3)", 4)
    b = Permutation.parse("(1 2)(3 4)")
    t = GeneratingTuple([a, b], "alternating")
    expected = {(a * b, b), (b * a, b), (a, b * a), (a, a * b), (b, a), (a.inverse(), b), (a, b.inverse())}
    assert {u.entries for u in nielsen_neighbors(t)} == expected


@pytest.mark.parametrize("n", [3, 4, 5])
def test_alternating_pinned(n):
    pairs, kappa, tau, higman = PINNED_ALT[n]
    k_sum = pra_component_count(n, "alternating")
    t_sum = t_system_count(n, "alternating")
    assert (k_sum.total, k_sum.orbit_count, t_sum.orbit_count) == (pairs, kappa, tau)
    assert t_sum.total == pairs
    assert higman_lower_bound(n) == higman
    assert higman <= tau <= kappa
    assert higman_check(n).constant_on_orbits


def test_alternating_5_orbit_sizes():
    assert sorted(pra_component_count(5, "alternating").orbit_sizes) == [600, 600, 1080]
    assert sorted(t_system_count(5, "alternating").orbit_sizes) == [1080, 1200]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_symmetric_pinned(n):
    pairs, kappa, tau = PINNED_SYM[n]
    k_sum = pra_component_count(n, "symmetric")
    t_sum = t_system_count(n, "symmetric")
    assert (k_sum.total, k_sum.orbit_count, t_sum.orbit_count) == (pairs, kappa, tau)
    assert tau <= kappa


@pytest.mark.parametrize("n,group,kind", [
    (3, "alternating", "tau"), (4, "alternating", "tau"), (4, "alternating", "kappa"),
    (5, "alternating", "tau"), (5, "alternating", "kappa"),
    (3, "symmetric", "tau"), (4, "symmetric", "tau"), (4, "symmetric", "kappa"),
])
def test_vectorized_matches_union_find(n, group, kind):
    summary = TupleGraph(n, group, 2, kind).summary()
    assert sorted(summary.orbit_sizes) == oracle_components(n, group, 2, kind)


def test_triples_match_union_find():
    for kind in ("tau", "kappa"):
        summary = TupleGraph(3, "alternating", 3, kind).summary()
        assert sorted(summary.orbit_sizes) == oracle_components(3, "alternating", 3, kind)
        summary = TupleGraph(3, "symmetric", 3, kind).summary()
        assert sorted(summary.orbit_sizes) == oracle_components(3, "symmetric", 3, kind)
    assert len(list(enumerate_generating_tuples(3, "alternating", 3))) == 26


def test_higman_invariant_constant_on_orbits_directly():
    for t in enumerate_generating_pairs(5, "alternating"):
        inv = higman_invariant(t)
        assert len(inv) == 1
        for u in nielsen_neighbors(t):
            assert higman_invariant(u) == inv
        g = Permutation.parse("(1 2)", 5)
        assert higman_invariant(GeneratingTuple([e.conjugate_by(g) for e in t.entries], "alternating")) == inv


def test_higman_lower_bound_examples():
    assert higman_lower_bound(3) == 1
    check = higman_check(5)
    assert check.lower_bound <= len(classes_of(5, even_only=True))
    assert len(check.orbit_invariants) == t_system_count(5, "alternating").orbit_count


def test_errors():
    with pytest.raises(ExcludedCaseError):
        t_system_count(6, "alternating")
    with pytest.raises(ExcludedCaseError):
        t_system_count(6, "symmetric")
    with pytest.raises(ResourceLimitError):
        pra_component_count(6, "alternating", 3, ceiling=10_000)
    with pytest.raises(DomainError):
        t_system_count(2, "alternating")
    with pytest.raises(ValueError):
        higman_invariant(GeneratingTuple([Permutation.parse("(1 2 3)")], "alternating"))


def test_orbit_summary_json():
    s = pra_component_count(5, "alternating")
    data = json.loads(s.to_json())
    assert data == {"group": "alternating", "n": 5, "k": 2, "tau_or_kappa": "kappa", "orbit_count": 3,
                    "total": 2280, "orbit_sizes_histogram": {"600": 2, "1080": 1}}
    reps = s.representative_strings()
    assert len(reps) == 3
    for rep in reps:
        assert group_order([Permutation.parse(x, 5) for x in rep]) == 60


def test_union_find():
    uf = UnionFind(6)
    assert uf.union(0, 1) and uf.union(2, 3) and not uf.union(1, 0)
    uf.union(1, 3)
    assert uf.count == 3
    labels = uf.labels()
    assert labels[0] == labels[2] and labels[4] != labels[5]


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_moves_preserve_generation(data):
    pairs = list(enumerate_generating_pairs(4, "symmetric"))
    t = data.draw(st.sampled_from(pairs))
    for u in nielsen_neighbors(t) | pra_neighbors(t):
        assert group_order(u.entries) == math.factorial(4)


def test_higman_invariant_abelian_case():
    for t in enumerate_generating_pairs(3, "alternating"):
        assert higman_invariant(t) == ((1, 1, 1),)
