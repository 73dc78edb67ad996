import itertools
import json
import math
import threading
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from snkit.partitions import (
    ClassDescriptor,
    Partition,
    class_descriptor,
    class_product_mass,
    class_products,
    classes_of,
    enumerate_partitions,
    even_parts_identity_check,
    hardy_ramanujan_estimate,
    paper_lower_bound,
    partition_count,
)
from snkit.permgroup import _cycle_lengths


@st.composite
def partitions(draw, max_n=12):
    n = draw(st.integers(min_value=1, max_value=max_n))
    return draw(st.sampled_from(enumerate_partitions(n)))


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, 0])
    assert Partition.from_parts([1, 3, 2]) == (3, 2, 1)
    assert Partition.parse("5,2,2") == (5, 2, 2)
    assert Partition.parse("") == ()
    assert Partition((4, 1)).n == 5


def test_enumerate_small():
    assert enumerate_partitions(0) == [()]
    assert enumerate_partitions(1) == [(1,)]
    assert enumerate_partitions(5) == [(5,), (4, 1), (3, 2), (3, 1, 1), (2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)]


def test_enumerate_is_reverse_lex_and_distinct():
    for n in range(1, 15):
        parts = enumerate_partitions(n)
        assert parts == sorted(parts, reverse=True)
        assert len(set(parts)) == len(parts)
        assert all(p.n == n for p in parts)


def test_partition_count_matches_enumeration():
    assert partition_count(0) == 1
    assert partition_count(5) == 7
    for n in range(31):
        assert partition_count(n) == len(enumerate_partitions(n))


def test_partition_count_thread_safe():
    results = {}

    def work(i):
        results[i] = [partition_count(n) for n in range(400, 300, -1)]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len({tuple(v) for v in results.values()}) == 1


def test_hardy_ramanujan():
    est = hardy_ramanujan_estimate(1)
    assert est == pytest.approx(math.exp(2 * math.pi / math.sqrt(6)) / (4 * math.sqrt(3)))
    assert 0.8 < hardy_ramanujan_estimate(100) / partition_count(100) < 1.2
    for n in (200, 500, 1000):
        assert 0.9 < hardy_ramanujan_estimate(n) / partition_count(n) < 1.1
    err = lambda n: abs(hardy_ramanujan_estimate(n) / partition_count(n) - 1)
    assert err(1000) < err(100)


def test_lower_bound_is_half_estimate():
    for n in (1, 6, 100, 731):
        assert paper_lower_bound(n) == hardy_ramanujan_estimate(n) / 2
    assert paper_lower_bound(100) > 0


def test_class_descriptor_examples():
    ident = class_descriptor((1,) * 6)
    assert (ident.size, ident.fixed_points, ident.is_even) == (1, 6, True)
    assert class_descriptor((5,)).size == 24
    c = class_descriptor((2, 1, 1))
    assert (c.size, c.fixed_points, c.is_even) == (6, 2, False)
    assert c.m(1) == 2 and c.m(2) == 1 and c.m(3) == 0


def test_class_sizes_sum_to_factorial():
    for n in range(1, 13):
        assert sum(c.size for c in classes_of(n)) == math.factorial(n)


def test_class_sizes_brute_force():
    for n in range(1, 8):
        census = Counter(Partition.from_parts(_cycle_lengths(p)) for p in itertools.permutations(range(n)))
        for c in classes_of(n):
            assert c.size == census[c.cycle_type]


def test_splitting_criterion_by_centralizer():
    # an S_n class splits in A_n exactly when its centralizer lies in A_n
    for n in range(2, 8):
        perms = list(itertools.permutations(range(n)))
        for c in classes_of(n, even_only=True):
            rep = next(p for p in perms if Partition.from_parts(_cycle_lengths(p)) == c.cycle_type)
            odd_centralizer = False
            for q in perms:
                if all(q[rep[i]] == rep[q[i]] for i in range(n)):
                    inv = sum(1 for i in range(n) for j in range(i + 1, n) if q[i] > q[j])
                    if inv % 2:
                        odd_centralizer = True
                        break
            assert c.splits_in_alternating == (not odd_centralizer), c


def test_class_descriptor_serialization():
    c = class_descriptor((3, 2, 2, 1))
    data = json.loads(c.to_json())
    assert data["size"] == str(c.size)
    assert ClassDescriptor.from_dict(data) == c


def _stabilizer_pairs(n, k):
    """(type on {0..k-1}, type on the rest) -> count, over elements fixing {0..k-1} setwise."""
    out = Counter()
    for left in itertools.permutations(range(k)):
        for right in itertools.permutations(range(n - k)):
            images = list(left) + [k + x for x in right]
            out[Partition.from_parts(_cycle_lengths(images)), Partition.from_parts(_cycle_lengths(left)),
                Partition.from_parts(_cycle_lengths(right))] += 1
    return out


def test_class_products_brute_force():
    for n in range(2, 7):
        for k in range(1, n):
            found = {}
            for (whole, a, b), count in _stabilizer_pairs(n, k).items():
                found.setdefault(whole, set()).add((a, b))
            for c in classes_of(n):
                pairs = {(c1.cycle_type, c2.cycle_type) for c1, c2 in class_products(c, k)}
                assert pairs == found.get(c.cycle_type, set())


def test_class_products_examples():
    assert [(a.cycle_type, b.cycle_type) for a, b in class_products(class_descriptor((1, 1, 1, 1)), 3)] == [
        ((1, 1, 1), (1,))
    ]
    assert class_products(class_descriptor((5,)), 2) == []
    pairs = [(a.cycle_type, b.cycle_type) for a, b in class_products(class_descriptor((2, 1)), 2)]
    assert pairs == [((2,), (1,))]
    with pytest.raises(ValueError):
        class_products(class_descriptor((2, 1)), 3)


def test_class_product_mass_examples_and_brute_force():
    assert class_product_mass(class_descriptor((1,) * 5), 2) == 1 * 1
    assert class_product_mass(class_descriptor((6,)), 3) == 0
    for n in range(2, 8):
        census = Counter()
        for p in itertools.permutations(range(n)):
            t = Partition.from_parts(_cycle_lengths(p))
            for k in range(1, n):
                if set(p[:k]) == set(range(k)):
                    census[t, k] += 1
        for c in classes_of(n):
            for k in range(1, n):
                assert class_product_mass(c, k) == census[c.cycle_type, k]


def test_even_parts_identity():
    assert even_parts_identity_check(1) == (0, 1, 1, True)
    assert even_parts_identity_check(2) == (1, 1, 0, True)
    assert even_parts_identity_check(5)[3]
    for n in range(1, 61):
        assert even_parts_identity_check(n)[3]


def test_even_parts_identity_matches_listing():
    for n in range(1, 18):
        parts = enumerate_partitions(n)
        a = sum(1 for lam in parts if sum(1 for x in lam if x % 2 == 0) % 2)
        c = sum(1 for lam in parts if all(x % 2 for x in lam) and len(set(lam)) == len(lam))
        assert even_parts_identity_check(n) == (a, len(parts) - a, c, True)


def test_half_of_classes_lie_in_alternating():
    for n in range(1, 41):
        assert 2 * len(classes_of(n, even_only=True)) >= partition_count(n)


@given(partitions())
def test_conjugate_is_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().n == lam.n


@given(partitions())
def test_partition_json_round_trip(lam):
    assert Partition.from_json(lam.to_json()) == lam


@given(partitions(max_n=20))
def test_centralizer_times_size(lam):
    c = class_descriptor(lam)
    assert c.size * c.centralizer_order == math.factorial(lam.n)
    assert c.sign == (1 if c.is_even else -1)
    assert sum(l * c.m(l) for l in range(1, lam.n + 1)) == lam.n


@given(partitions(max_n=14), st.data())
def test_class_product_sizes_add_up(lam, data):
    c = class_descriptor(lam)
    if c.n < 2:
        return
    k = data.draw(st.integers(min_value=1, max_value=c.n - 1))
    assert class_product_mass(c, k) == sum(a.size * b.size for a, b in class_products(c, k))
