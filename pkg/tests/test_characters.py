import itertools
import json
import math
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from snkit import characters
from snkit.characters import (
    CharacterTable,
    character_table,
    character_value,
    dimension,
    disk_cached_table,
    has_nonzero_on,
    hook_length,
    mn_bound_report,
    rim_hooks,
)
from snkit.countkit import paper_cycle_type, pick_prime
from snkit.errors import ResourceLimitError
from snkit.partitions import ClassDescriptor, Partition, enumerate_partitions
from snkit.permgroup import _cycle_lengths


@st.composite
def shapes(draw, max_n=9):
    n = draw(st.integers(min_value=1, max_value=max_n))
    return draw(st.sampled_from(enumerate_partitions(n)))


def _border_strips(lam, r):
    """Rim hooks found by removing every connected skew shape of size r directly."""
    lam = list(lam)
    boxes = {(i, j) for i, row in enumerate(lam) for j in range(row)}
    out = []
    for mu in enumerate_partitions(sum(lam) - r):
        if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
            continue
        skew = boxes - {(i, j) for i, row in enumerate(mu) for j in range(row)}
        # a border strip is connected and contains no 2x2 square
        if any({(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)} <= skew for i, j in skew):
            continue
        start = next(iter(skew))
        seen, stack = {start}, [start]
        while stack:
            i, j = stack.pop()
            for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                if nb in skew and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if seen == skew:
            out.append((Partition(mu), len({i for i, _ in skew}) - 1))
    return sorted(out)


def test_hook_length_examples():
    assert hook_length((2, 2), 1, 1) == 3
    assert hook_length((6,), 1, 1) == 6
    assert hook_length((2, 2), 3, 3) == 0


def test_dimension_examples():
    for n in range(2, 12):
        assert dimension((n,)) == 1
        assert dimension((n - 1, 1)) == n - 1
    for n, p in ((9, 5), (12, 7), (13, 7)):
        assert dimension((p + 1,) + (1,) * (n - p - 1)) == comb(n - 1, p)


def test_rim_hook_examples():
    assert rim_hooks((5,), 5) == [((), 0, 5)]
    found = sorted((h.result, h.leg_length) for h in rim_hooks((2, 2), 2))
    assert found == [((1, 1), 1), ((2,), 0)]
    assert [(h.result, h.leg_length) for h in rim_hooks((2, 1), 3)] == [((), 1)]


def test_rim_hooks_match_border_strips():
    for n in range(1, 10):
        for lam in enumerate_partitions(n):
            for r in range(1, n + 1):
                ours = sorted((h.result, h.leg_length) for h in rim_hooks(lam, r))
                assert ours == _border_strips(lam, r), (lam, r)


def test_character_value_examples():
    for n in range(1, 9):
        for c in enumerate_partitions(n):
            assert character_value((n,), c) == 1
            sign = ClassDescriptor(c).sign
            assert character_value((1,) * n, c) == sign
            if n >= 2:
                assert character_value((n - 1, 1), c) == c.multiplicity(1) - 1
    assert not has_nonzero_on((2, 2), (4,))
    assert has_nonzero_on((4,), (2, 2))


def test_small_table():
    assert character_table(1).values == ((1,),)
    t = character_table(3)
    assert t.labels == ((3,), (2, 1), (1, 1, 1))
    # columns (1^3), (2,1), (3)
    cols = [(1, 1, 1), (2, 1), (3,)]
    assert [[t.value(lam, mu) for mu in cols] for lam in t.labels] == [[1, 1, 1], [2, 0, -1], [1, -1, 1]]
    assert sum(d * d for d in character_table(5).dimensions()) == 120


def _permutation_character(n):
    """Values of the character of S_n acting on k-subsets, for every k, by counting fixed subsets."""
    perms = list(itertools.permutations(range(n)))
    out = {}
    for p in perms:
        mu = Partition.from_parts(_cycle_lengths(p))
        if mu in out:
            continue
        row = []
        for k in range(n + 1):
            row.append(sum(1 for s in itertools.combinations(range(n), k) if {p[i] for i in s} == set(s)))
        out[mu] = row
    return out


def test_two_row_characters_against_subset_action():
    # chi^{(n-k,k)} is the k-subset character minus the (k-1)-subset character
    for n in range(2, 8):
        fixed = _permutation_character(n)
        for k in range(0, n // 2 + 1):
            lam = (n - k, k) if k else (n,)
            for mu, row in fixed.items():
                expect = row[k] - (row[k - 1] if k else 0)
                assert character_value(lam, mu) == expect


def test_removal_order_independence():
    for n in range(1, 10):
        for lam in enumerate_partitions(n):
            for mu in enumerate_partitions(n):
                assert character_value(lam, mu, "decreasing") == character_value(lam, mu, "increasing")


def test_orthogonality_and_dimensions():
    fact = math.factorial
    for n in range(1, 10):
        t = character_table(n)
        x = np.array(t.values, dtype=object)
        sizes = np.array([c.size for c in t.classes()], dtype=object)
        assert ((x * sizes) @ x.T == fact(n) * np.eye(len(t.labels), dtype=int)).all()
        assert (x.T @ x == np.diag([fact(n) // s for s in sizes])).all()
    for n in range(1, 13):
        t = character_table(n)
        assert t.dimensions() == tuple(dimension(lam) for lam in t.labels)
        assert sum(d * d for d in t.dimensions()) == fact(n)


def test_conjugate_symmetry():
    for n in range(1, 10):
        t = character_table(n)
        for lam in t.labels:
            for mu in t.labels:
                assert t.value(lam.conjugate(), mu) == ClassDescriptor(mu).sign * t.value(lam, mu)


def test_values_on_selected_cycle_type_are_small():
    for n in (9, 12, 13):
        p = pick_prime(n)
        pi = paper_cycle_type(n, p)
        assert all(abs(character_value(lam, pi)) <= 2 for lam in enumerate_partitions(n))


def test_vanishing_without_large_hook():
    n, p = 9, 5
    mu = (5, 2, 2)
    for lam in enumerate_partitions(n):
        if hook_length(lam, 1, 1) < p:
            assert not has_nonzero_on(lam, mu)


def test_table_limit():
    with pytest.raises(ResourceLimitError):
        character_table(99)
    with pytest.raises(ValueError):
        character_table(0)


def test_table_serialization_round_trip():
    t = character_table(6)
    data = json.loads(t.to_json())
    assert all(isinstance(v, str) for row in data["values"] for v in row)
    assert CharacterTable.from_json(t.to_json()) == t
    rows = t.to_csv().strip().split("\n")
    assert len(rows) == 12 and rows[1].split(",")[0] == "6"
    bad = dict(data, labels=data["labels"][::-1])
    with pytest.raises(ValueError):
        CharacterTable.from_dict(bad)


def test_build_is_deterministic():
    a = characters.build_character_table(8)
    b = characters.build_character_table(8)
    assert a.to_json() == b.to_json() == character_table(8).to_json()


def test_disk_cache(tmp_path, caplog):
    t = disk_cached_table(5, tmp_path)
    path = characters.cache_file(tmp_path, 5)
    assert path.exists()
    assert disk_cached_table(5, tmp_path) == t
    path.write_text("{not json")
    with caplog.at_level("WARNING"):
        assert disk_cached_table(5, tmp_path) == t
    assert "corrupt" in caplog.text
    assert json.loads(path.read_text())["version"] == characters.CACHE_VERSION


def test_mn_bound_report():
    rows = mn_bound_report(8)
    assert rows == mn_bound_report(8)
    for r in rows:
        if r.lam == (8,):
            assert r.lhs == 1 and r.rhs == pytest.approx(1) and r.holds
    n = 8
    row = next(r for r in rows if r.lam == (n - 1, 1) and r.mu == (2,) + (1,) * (n - 2))
    assert row.lhs == n - 3
    assert all(1 <= r.mu.multiplicity(1) < n for r in rows)


@settings(max_examples=60, deadline=None)
@given(shapes(max_n=14))
def test_hook_formula_matches_mn(lam):
    assert character_value(lam, (1,) * lam.n) == dimension(lam)


@settings(max_examples=60, deadline=None)
@given(shapes(max_n=9), st.integers(min_value=1, max_value=9))
def test_rim_hook_sizes(lam, r):
    for h in rim_hooks(lam, r):
        assert h.result.n == lam.n - r
        assert 0 <= h.leg_length < len(lam)
