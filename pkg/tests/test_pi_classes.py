from __future__ import annotations

import random

import pytest

from wreathcover.perm import CycleType, cycle_type, mul
from wreathcover.pi_classes import (
    Pi,
    Pi0r,
    Pi02Odd,
    base_point,
    bertrand_prime,
    chain_products,
    closure_and_disjointness_check,
    d_classes,
    is_prime,
    pi0r_shift,
    pi_descriptors,
    pi_membership,
    pi_size,
    pi_zero,
    prime_divisors,
    random_member,
    single_class_check,
)
from wreathcover.wreath import GroupParams, gamma, w_conj


def test_primes():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_divisors(12) == [2, 3]
    for n in range(6, 400, 6):
        p = bertrand_prime(n)
        assert 3 * p > n and 3 * p < 2 * n and is_prime(p)


def test_descriptors_by_m():
    assert all(isinstance(d, Pi) for d in pi_descriptors(GroupParams(30, 1)))
    assert isinstance(pi_zero(GroupParams(30, 3), 2), Pi02Odd)
    assert isinstance(pi_zero(GroupParams(30, 2), 2), Pi0r)
    assert len(pi_descriptors(GroupParams(30, 6))) == 10 + 2
    with pytest.raises(ValueError):
        pi_zero(GroupParams(30, 2), 3)
    assert d_classes(12, 3) == (CycleType.of(10, 1, 1), CycleType.of(12), CycleType.of(12))


@pytest.mark.parametrize("n,m", [(12, 2), (12, 3), (12, 6), (30, 4), (18, 5)])
def test_sampler_lands_in_class(n, m):
    params = GroupParams(n, m)
    rng = random.Random(n * m)
    for desc in pi_descriptors(params, split_shifts=True):
        for _ in range(10):
            g = random_member(desc, params, rng)
            assert pi_membership(g, desc)


@pytest.mark.parametrize("n,m", [(12, 2), (12, 3), (12, 4), (12, 6)])
def test_sampled_closure_small(n, m):
    rep = closure_and_disjointness_check(GroupParams(n, m), 30, seed=11)
    assert rep.ok, (rep.failures[:2], rep.overlaps[:2])


def test_gamma_rotates_shift():
    params = GroupParams(12, 6)
    rng = random.Random(4)
    for r in (2, 3):
        desc = pi_zero(params, r, 0)
        for _ in range(10):
            g = random_member(desc, params, rng)
            s = pi0r_shift(g, desc)
            assert pi0r_shift(w_conj(g, gamma(params)), desc) == (s - 1) % r
            assert [cycle_type(p) for p in chain_products(g.xs, r, params.tau())] == list(desc.classes_at(s))


def test_sizes_add_up_small():
    # at (6,2) the marked sets are exact fractions of |G|
    params = GroupParams(6, 2)
    sizes = {repr(d): pi_size(d, params) for d in pi_descriptors(params)}
    assert sorted(sizes.values()) == [21600, 32400, 43200]


@pytest.mark.parametrize("n,m", [(6, 3), (12, 2), (30, 2), (30, 3)])
def test_single_class_sampled(n, m):
    params = GroupParams(n, m)
    rng = random.Random(0)
    desc = Pi(-1, CycleType.of(n))
    members = [random_member(desc, params, rng) for _ in range(25)]
    ok, bad = single_class_check(params, members)
    assert ok, bad[:1]
    assert cycle_type(mul(base_point(params).xs[0], params.tau())) == CycleType.of(n)
