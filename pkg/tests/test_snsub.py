from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from math import factorial

import pytest

from wreathcover.perm import Permutation, all_permutations, cycle_type, cycle_types, parity, random_of_type
from wreathcover.snsub import (
    all_block_systems,
    all_ksets,
    b_class,
    bipartition,
    class_count_in,
    class_count_in_wreath,
    class_count_in_wreath2,
    class_count_in_young,
    dblocks,
    eric_sum_bound,
    f_members_containing,
    image,
    index_set,
    kset,
    normalize,
    odd_element,
    outside_theorem,
    parse,
    stabilizer_order,
    stabilizes,
    text,
)


def _descs(n):
    out = [kset(n, i) for i in range(1, n // 2 + 1)]
    if n % 2 == 0:
        out.append(bipartition(n))
    out += [dblocks(n, d) for d in range(3, n // 2 + 1) if n % d == 0]
    return out


@pytest.mark.parametrize("n", range(2, 9))
def test_class_counts_match_brute_force(n):
    descs = _descs(n)
    counts = {text(d): Counter() for d in descs}
    for p in all_permutations(n):
        ct = cycle_type(p)
        for d in descs:
            if stabilizes(p, d):
                counts[text(d)][ct] += 1
    for d in descs:
        got = {ct: class_count_in(ct, d) for ct in cycle_types(n)}
        assert sum(got.values()) == stabilizer_order(d)
        assert all(got[ct] == counts[text(d)][ct] for ct in cycle_types(n)), text(d)


def test_young_and_wreath_sums():
    for n in range(2, 13):
        for a in range(0, n + 1):
            assert sum(class_count_in_young(ct, a, n - a) for ct in cycle_types(n)) == factorial(a) * factorial(n - a)
        if n % 2 == 0:
            h = n // 2
            assert sum(class_count_in_wreath2(ct, n) for ct in cycle_types(n)) == 2 * factorial(h) ** 2
        for b in range(2, n + 1):
            if n % b == 0:
                a = n // b
                total = sum(class_count_in_wreath(ct, a, b) for ct in cycle_types(n))
                assert total == factorial(a) ** b * factorial(b)


def test_descriptor_round_trips():
    rng = random.Random(5)
    for d in _descs(8):
        assert parse(text(d), 8) == normalize(d)
        g = Permutation(rng.sample(range(1, 9), 8))
        assert normalize(image(image(d, g), g ** -1)) == normalize(d)
        assert stabilizes(odd_element(d), d) and parity(odd_element(d)) == 1


def test_family_enumeration_sizes():
    assert len(all_ksets(6, 2)) == 15
    assert len(all_ksets(6, 3)) == 10  # complements identified
    assert len(all_block_systems(6, 2)) == 10
    assert len(all_block_systems(6, 3)) == 15
    assert len(all_block_systems(8, 4)) == 105


def test_b_classes_odd_and_distinct():
    for n in range(6, 61, 6):
        classes = [b_class(n, i) for i in index_set(n)]
        assert len(set(classes)) == len(classes)
        assert all(not c.is_even() for c in classes)
    assert b_class(30, -1).parts == (30,)
    with pytest.raises(ValueError):
        b_class(8, 1)


def test_outside_theorem():
    assert outside_theorem(6) and outside_theorem(24) and outside_theorem(32)
    assert not outside_theorem(30) and not outside_theorem(36)


def test_f_members_match_brute_force():
    rng = random.Random(7)
    n = 12
    family = [d for i in range(1, 4) for d in all_ksets(n, i)] + all_block_systems(n, 2)
    family = [normalize(d) for d in family]
    for i in index_set(n):
        for _ in range(3):
            p = random_of_type(b_class(n, i), rng)
            brute = {text(d) for d in family if stabilizes(p, d)}
            assert {text(d) for d in f_members_containing(p)} == brute


def test_eric_bound_decreasing():
    vals = [eric_sum_bound(n) for n in range(30, 400, 6)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert eric_sum_bound(30) < Fraction(9925, 10000)
