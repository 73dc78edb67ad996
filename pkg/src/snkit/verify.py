"""Verification suites: each check compares a formula against an independent
count, or records a value that is only expected to hold asymptotically.

Every suite is a generator of :class:`Check` records.  ``assertable`` checks
must pass; report-only checks (``assertable=False``) carry data and a
``passed`` flag that is informational.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from collections import Counter
from fractions import Fraction
from typing import Callable, Iterator, NamedTuple

from . import characters, countkit, partitions, tsystems
from .partitions import Partition, classes_of
from .permgroup import Permutation, _cycle_lengths


class Check(NamedTuple):
    suite: str
    name: str
    passed: bool
    assertable: bool = True
    data: dict = {}

    def to_json(self) -> str:
        record = {"suite": self.suite, "check": self.name, "passed": self.passed,
                  "assertable": self.assertable}
        record.update(self.data)
        return json.dumps(record, sort_keys=True, default=str)


def _ptype(images) -> Partition:
    return Partition.from_parts(_cycle_lengths(images))


def orthogonality(max_n: int = 9) -> Iterator[Check]:
    for n in range(1, max_n + 1):
        table = characters.character_table(n)
        classes = table.classes()
        vals = table.values
        fact = math.factorial(n)
        rows_ok = all(
            sum(c.size * vals[i][k] * vals[j][k] for k, c in enumerate(classes)) == (fact if i == j else 0)
            for i in range(len(vals)) for j in range(i, len(vals))
        )
        cols_ok = all(
            sum(vals[i][k] * vals[i][l] for i in range(len(vals)))
            == (fact // classes[k].size if k == l else 0)
            for k in range(len(vals)) for l in range(k, len(vals))
        )
        dims = table.dimensions()
        hook_ok = all(characters.dimension(lam) == d for lam, d in zip(table.labels, dims))
        squares_ok = sum(d * d for d in dims) == fact
        yield Check("orthogonality", f"rows n={n}", rows_ok)
        yield Check("orthogonality", f"columns n={n}", cols_ok)
        yield Check("orthogonality", f"hook dimensions n={n}", hook_ok)
        yield Check("orthogonality", f"sum of squared dimensions n={n}", squares_ok)


def _product_census(tau: tuple[int, ...]) -> Counter:
    """``(type(x), type(y))`` counts over all ``x * y == tau`` in S_n."""
    n = len(tau)
    out = Counter()
    for x in itertools.permutations(range(n)):
        xinv = [0] * n
        for i, v in enumerate(x):
            xinv[v] = i
        y = [xinv[tau[i]] for i in range(n)]
        out[_ptype(x), _ptype(y)] += 1
    return out


def frobenius(max_n: int = 5, random_n: int = 6, samples: int = 200, seed: int = 20100) -> Iterator[Check]:
    for n in range(1, max_n + 1):
        table = characters.character_table(n)
        labels = table.labels
        bad = []
        for tau_type in labels:
            tau = Permutation.of_cycle_type(tau_type)
            census = _product_census(tau.images)
            for c1, c2 in itertools.product(labels, repeat=2):
                if countkit.triple_count(c1, c2, tau, table) != census[c1, c2]:
                    bad.append((c1, c2, tau_type))
        yield Check("frobenius", f"exhaustive triples S_{n}", not bad,
                    data={"triples": len(labels) ** 3, "mismatches": len(bad)})
    rng = random.Random(seed)
    table = characters.character_table(random_n)
    labels = table.labels
    elements = list(itertools.permutations(range(random_n)))
    types = [_ptype(x) for x in elements]
    bad = 0
    for _ in range(samples):
        tau = list(range(random_n))
        rng.shuffle(tau)
        c1, c2 = rng.choice(labels), rng.choice(labels)
        brute = 0
        for x, tx in zip(elements, types):
            if tx != c1:
                continue
            xinv = [0] * random_n
            for i, v in enumerate(x):
                xinv[v] = i
            if _ptype([xinv[tau[i]] for i in range(random_n)]) == c2:
                brute += 1
        if countkit.triple_count(c1, c2, Permutation(tau), table) != brute:
            bad += 1
    yield Check("frobenius", f"random triples S_{random_n}", bad == 0,
                data={"samples": samples, "seed": seed, "mismatches": bad})


def _alt_qualifying_pi(n: int) -> list[Partition]:
    return [c.cycle_type for c in classes_of(n, even_only=True) if not c.splits_in_alternating]


def commutator(max_sym: int = 6, max_alt: int = 7, selected_n: int = 9,
               factor_two_n: int = 8) -> Iterator[Check]:
    for m in range(1, max_sym + 1):
        table = characters.character_table(m)
        bad = 0
        for pi_type in table.labels:
            pi = Permutation.of_cycle_type(pi_type)
            census = countkit.commutator_census(pi, "symmetric")
            for c in table.classes():
                if countkit.commutator_count_sym(pi, c, table).exact != census[c.cycle_type]:
                    bad += 1
        yield Check("commutator", f"symmetric S_{m}", bad == 0,
                    data={"pairs": len(table.labels) ** 2, "mismatches": bad})
    for n in range(2, max_alt + 1):
        table = characters.character_table(n)
        bad = pairs = 0
        for pi_type in _alt_qualifying_pi(n):
            pi = Permutation.of_cycle_type(pi_type)
            census = countkit.commutator_census(pi, "alternating")
            for c in classes_of(n, even_only=True):
                pairs += 1
                if countkit.commutator_count_alt(pi, c, table).exact != census[c.cycle_type]:
                    bad += 1
        yield Check("commutator", f"alternating A_{n}", bad == 0,
                    data={"pairs": pairs, "mismatches": bad})

    yield from selected_cycle_type_counts(selected_n)

    for row in countkit.factor_two_report(factor_two_n, oracle=True):
        yield Check("commutator", f"factor-two {row.label} m={row.m} C={tuple(row.c_type)}",
                    row.report.exact == row.report.brute_force, assertable=True,
                    data={"exact": row.report.exact, "brute_force": row.report.brute_force,
                          "ratio": float(row.report.ratio), "asymptotic_ratio": 2})


def selected_cycle_type_counts(n: int = 9) -> Iterator[Check]:
    """Commutator and generating-commutator counts at the cycle type chosen by :func:`countkit.paper_cycle_type`."""
    p = countkit.pick_prime(n, Fraction(3, 5))
    pi_type = countkit.paper_cycle_type(n, p)
    pi = Permutation.of_cycle_type(pi_type)
    table = characters.character_table(n)
    census = countkit.commutator_census(pi, "alternating")
    bad = [
        tuple(c.cycle_type) for c in classes_of(n, even_only=True)
        if countkit.commutator_count_alt(pi, c, table).exact != census[c.cycle_type]
    ]
    yield Check("commutator", f"alternating A_{n} at pi={tuple(pi_type)}", not bad,
                data={"p": p, "mismatches": bad})

    reports = countkit.generating_commutator_table(pi)
    direct = countkit.generating_commutator_census(pi)
    intrans = countkit.intransitive_census(pi)
    for c in classes_of(n, even_only=True):
        rep = reports[c.cycle_type]
        brute = direct[c.cycle_type]
        yield Check("generating", f"A_{n} C={tuple(c.cycle_type)} character sum vs scan",
                    rep.exact == brute,
                    data={"exact": rep.exact, "brute_force": brute, "class_size": c.size,
                          "ratio": float(rep.ratio), "fixed_points": c.fixed_points})
        if c.fixed_points == 0:
            yield Check("generating", f"A_{n} C={tuple(c.cycle_type)} positive", rep.exact > 0,
                        data={"exact": rep.exact})
        bound = countkit.intransitive_upper_bound(pi, c)
        yield Check("generating", f"A_{n} C={tuple(c.cycle_type)} intransitive <= split bound",
                    intrans[c.cycle_type] <= bound,
                    data={"intransitive": intrans[c.cycle_type], "bound": bound})


def tsystem_chain(degrees=(3, 4, 5)) -> Iterator[Check]:
    for n in degrees:
        tau_graph = tsystems.TupleGraph(n, "alternating", 2, "tau")
        tau = tau_graph.summary()
        higman = tsystems.higman_check(n, graph=tau_graph)
        del tau_graph
        kappa = tsystems.pra_component_count(n, "alternating", 2)
        data = {"n": n, "higman_lower_bound": higman.lower_bound, "tau_2": tau.orbit_count,
                "kappa_2": kappa.orbit_count, "generating_pairs": tau.total}
        yield Check("tsystem-chain", f"A_{n} higman <= tau_2 <= kappa_2",
                    higman.lower_bound <= tau.orbit_count <= kappa.orbit_count and tau.total == kappa.total,
                    data=data)
        yield Check("tsystem-chain", f"A_{n} higman invariant constant on T_2-systems",
                    higman.constant_on_orbits,
                    data={"orbit_invariants": [[list(p) for p in inv] for inv in higman.orbit_invariants]})


def partition_identity(max_identity: int = 60, max_classes: int = 40, max_enum: int = 20) -> Iterator[Check]:
    failures = [n for n in range(1, max_identity + 1) if not partitions.even_parts_identity_check(n)[3]]
    yield Check("partition-identity", f"a = b - c for n <= {max_identity}", not failures,
                data={"failures": failures})
    bad_enum = []
    for n in range(1, max_enum + 1):
        parts = partitions.enumerate_partitions(n)
        even = [sum(1 for x in lam if x % 2 == 0) for lam in parts]
        a = sum(1 for e in even if e % 2)
        b = len(parts) - a
        c = sum(1 for lam in parts if all(x % 2 for x in lam) and len(set(lam)) == len(lam))
        if partitions.even_parts_identity_check(n) != (a, b, c, a == b - c):
            bad_enum.append(n)
    yield Check("partition-identity", f"counts match enumeration for n <= {max_enum}", not bad_enum,
                data={"failures": bad_enum})
    short = []
    for n in range(1, max_classes + 1):
        inside = sum(1 for c in classes_of(n) if c.is_even)
        if 2 * inside < partitions.partition_count(n):
            short.append(n)
    yield Check("partition-identity", f"classes inside A_n >= P(n)/2 for n <= {max_classes}", not short,
                data={"failures": short})


def hardy_ramanujan(points=(100, 200, 500, 1000), max_enum: int = 30) -> Iterator[Check]:
    agree = all(partitions.partition_count(n) == len(partitions.enumerate_partitions(n))
                for n in range(max_enum + 1))
    yield Check("hardy-ramanujan", f"recurrence matches enumeration n <= {max_enum}", agree)
    errors = []
    for n in points:
        exact = partitions.partition_count(n)
        est = partitions.hardy_ramanujan_estimate(n)
        err = abs(exact / est - 1)
        errors.append(err)
        yield Check("hardy-ramanujan", f"n={n}", True, assertable=False,
                    data={"P": str(exact), "estimate": est, "relative_error": err,
                          "paper_lower_bound": partitions.paper_lower_bound(n), "asymptotic_only": True})
    trend = all(a > b for a, b in zip(errors, errors[1:]))
    yield Check("hardy-ramanujan", "relative error decreasing", trend, assertable=False)
    yield Check("hardy-ramanujan", f"relative error < 0.1 at n={points[-1]}", errors[-1] < 0.1,
                assertable=False, data={"relative_error": errors[-1]})


def class_product_masses(max_brute: int = 7, report_degrees=(16, 24, 32), delta: Fraction = Fraction(1, 4)) -> Iterator[Check]:
    for n in range(2, max_brute + 1):
        census = countkit.set_stabilizer_census(n)
        bad = [
            (tuple(c.cycle_type), k) for c in classes_of(n) for k in range(1, n)
            if partitions.class_product_mass(c, k) != census[c.cycle_type, k]
        ]
        yield Check("lemma256", f"class-product mass = set-stabilizer count S_{n}", not bad,
                    data={"mismatches": bad})
    for n in report_degrees:
        tally = Counter()
        worst = {}
        for c in classes_of(n):
            if c.fixed_points > delta * n:
                continue
            for row in countkit.lemma_2_5_6_report(c, delta):
                tally[row.kind, row.holds] += 1
                ratio = row.mass / row.bound if row.bound else 0.0
                if ratio > worst.get(row.kind, (-1.0,))[0]:
                    worst[row.kind] = (ratio, list(c.cycle_type), row.k)
        for kind in ("middle", "n-1", "n-2"):
            held, failed = tally[kind, True], tally[kind, False]
            yield Check("lemma256", f"n={n} {kind} bound", failed == 0, assertable=False,
                        data={"delta": str(delta), "held": held, "failed": failed,
                              "worst_mass_over_bound": worst.get(kind)})


def mn_bound(max_n: int = 12) -> Iterator[Check]:
    for n in range(2, max_n + 1):
        rows = characters.mn_bound_report(n)
        held = sum(r.holds for r in rows)
        yield Check("mn-bound", f"n={n}", held == len(rows), assertable=False,
                    data={"rows": len(rows), "held": held,
                          "pass_fraction": held / len(rows) if rows else None})


SUITES: dict[str, Callable[[], Iterator[Check]]] = {
    "orthogonality": orthogonality,
    "frobenius": frobenius,
    "commutator": commutator,
    "tsystem-chain": tsystem_chain,
    "partition-identity": partition_identity,
    "hardy-ramanujan": hardy_ramanujan,
    "lemma256": class_product_masses,
    "mn-bound": mn_bound,
}
