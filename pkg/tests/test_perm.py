from __future__ import annotations

import itertools
import random
from collections import Counter
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wreathcover.perm import (
    CycleType,
    Permutation,
    all_permutations,
    alternating_elements,
    binomial,
    class_size,
    conjugate,
    conjugator,
    cycle_type,
    cycle_types,
    inverse,
    invariant_bipartitions,
    invariant_ksubsets,
    mul,
    order,
    parity,
    power,
    random_even,
    random_of_type,
    representative,
)


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(Permutation)


def test_left_to_right_composition():
    a = Permutation.from_cycles(3, (1, 2))
    b = Permutation.from_cycles(3, (2, 3))
    # apply (1 2) first: 1 -> 2 -> 3, 3 -> 2 ... gives (1 3 2)
    assert mul(a, b) == Permutation.from_cycles(3, (1, 3, 2))
    assert a * b != b * a


def test_bad_input_rejected():
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])
    with pytest.raises(ValueError):
        Permutation.from_cycles(3, (1, 4))
    with pytest.raises(ValueError):
        mul(Permutation.identity(3), Permutation.identity(4))


@settings(max_examples=60, deadline=None)
@given(perms(7), perms(7), perms(7))
def test_group_axioms(p, q, r):
    assert mul(mul(p, q), r) == mul(p, mul(q, r))
    assert mul(p, inverse(p)).is_identity()
    assert conjugate(mul(p, q), r) == mul(conjugate(p, r), conjugate(q, r))
    assert conjugate(p, mul(q, r)) == conjugate(conjugate(p, q), r)


@settings(max_examples=60, deadline=None)
@given(perms(8), st.integers(-20, 20))
def test_power_and_order(p, k):
    assert power(p, order(p)).is_identity()
    assert power(p, k) == power(p, k % order(p))
    assert cycle_type(conjugate(p, Permutation.from_cycles(8, (1, 5, 2)))) == cycle_type(p)


@settings(max_examples=60, deadline=None)
@given(perms(8))
def test_parity_matches_inversions(p):
    img = p.images
    inv = sum(1 for i, j in itertools.combinations(range(8), 2) if img[i] > img[j])
    assert parity(p) == inv % 2


def test_class_sizes_sum_to_factorial():
    for n in range(1, 10):
        assert sum(class_size(ct) for ct in cycle_types(n)) == factorial(n)


def test_class_sizes_match_enumeration():
    for n in range(1, 7):
        counts = Counter(cycle_type(p) for p in all_permutations(n))
        for ct in cycle_types(n):
            assert counts[ct] == class_size(ct)


def test_alternating_elements():
    assert len(alternating_elements(6)) == 360
    assert all(parity(p) == 0 for p in alternating_elements(5))


def test_invariant_subsets_brute_force():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(2, 7)
        p = Permutation(rng.sample(range(1, n + 1), n))
        for k in range(n + 1):
            brute = sum(1 for s in itertools.combinations(range(1, n + 1), k) if {p(x) for x in s} == set(s))
            assert invariant_ksubsets(p, k) == brute
        if n % 2 == 0:
            brute = sum(
                1
                for s in itertools.combinations(range(1, n + 1), n // 2)
                if 1 in s and ({p(x) for x in s} == set(s) or not {p(x) for x in s} & set(s))
            )
            assert invariant_bipartitions(p) == brute


def test_invariant_bipartitions_example():
    p = Permutation.from_cycles(6, (1, 2, 3))
    assert invariant_bipartitions(p) == 1


def test_random_samplers_hit_requested_class():
    rng = random.Random(0)
    for ct in cycle_types(7):
        assert cycle_type(random_of_type(ct, rng)) == ct
        assert cycle_type(representative(ct)) == ct
    assert all(parity(random_even(9, rng)) == 0 for _ in range(50))


def test_conjugator():
    rng = random.Random(1)
    for ct in cycle_types(6):
        a, b = random_of_type(ct, rng), random_of_type(ct, rng)
        assert conjugate(a, conjugator(a, b)) == b


def test_cycle_type_text_and_binomial():
    assert str(CycleType.of(4, 1, 1)) == "[1,1,4]"
    assert CycleType.of(4, 1, 1).is_even() is False
    assert binomial(6, 3) == 20
    assert Permutation.from_cycles(5, (1, 3)).cycles() == [(1, 3)]
