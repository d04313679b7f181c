from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wreathcover.perm import Permutation, conjugate, inverse, mul, parity
from wreathcover.wreath import (
    GroupParams,
    WreathElement,
    canonicalize,
    deserialize,
    gamma,
    gamma_action,
    generated_order,
    identity,
    random_element,
    random_socle,
    serialize,
    socle,
    standard_generators,
    to_points,
    to_raw,
    w_conj,
    w_inv,
    w_mul,
    w_order,
    w_pow,
)

PARAMS = [GroupParams(5, 3), GroupParams(6, 2), GroupParams(4, 4), GroupParams(7, 1)]


def elements(params):
    return st.integers(0, 2**32).map(lambda s: random_element(params, random.Random(s)))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PARAMS), st.integers(0, 2**32))
def test_group_axioms(params, seed):
    rng = random.Random(seed)
    a, b, c = (random_element(params, rng) for _ in range(3))
    assert w_mul(w_mul(a, b), c) == w_mul(a, w_mul(b, c))
    assert w_mul(a, w_inv(a)).is_identity() and w_mul(w_inv(a), a).is_identity()
    assert w_mul(a, identity(params)) == a
    assert w_pow(a, w_order(a)).is_identity()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PARAMS), st.integers(0, 2**32))
def test_embedding_is_faithful_homomorphism(params, seed):
    rng = random.Random(seed)
    a, b = random_element(params, rng), random_element(params, rng)
    assert to_points(w_mul(a, b)) == mul(to_points(a), to_points(b))
    assert canonicalize(params, to_raw(a)) == a


def test_conjugation_identities():
    params = GroupParams(5, 3)
    rng = random.Random(2)
    tau = params.tau()
    g = gamma(params)
    for _ in range(50):
        x = random_element(params, rng)
        # g^gamma = A(x) gamma^k with A(x) = (x_m^tau, x_1, ..., x_{m-1})
        assert w_conj(x, g) == WreathElement(params, gamma_action(x.xs, 1, tau), x.k)
        assert gamma_action(x.xs, 1, tau)[0] == conjugate(x.xs[-1], tau)
        y = random_socle(params, rng)
        # g^y = (y^-1 x A^{-k}(y)) gamma^k
        shifted = gamma_action(y.xs, -x.k, tau)
        want = tuple(mul(mul(inverse(a), b), c) for a, b, c in zip(y.xs, x.xs, shifted))
        assert w_conj(x, y) == WreathElement(params, want, x.k)


def test_gamma_has_order_2m():
    for p in PARAMS:
        assert w_order(gamma(p)) == 2 * p.m
        assert gamma_action(tuple(random_socle(p, random.Random(0)).xs), 2 * p.m) == random_socle(p, random.Random(0)).xs


def test_checks_and_serialization():
    params = GroupParams(4, 2)
    odd = Permutation.from_cycles(4, (1, 2))
    with pytest.raises(ValueError):
        socle(params, (odd, Permutation.identity(4)))
    with pytest.raises(ValueError):
        GroupParams(1, 1)
    rng = random.Random(9)
    for _ in range(20):
        a = random_element(params, rng)
        assert deserialize(serialize(a)) == a
    assert serialize(gamma(params)) == "[1,2,3,4;1,2,3,4]^1"


def test_canonicalize_rejects_outside():
    params = GroupParams(4, 2)
    ys = (Permutation.from_cycles(4, (1, 2)), Permutation.identity(4))
    with pytest.raises(ValueError):
        canonicalize(params, (ys, Permutation.identity(2)))


def test_standard_generators_small():
    # (5,2): alpha_1, alpha_2 generate all of G of order 60^2 * 4
    params = GroupParams(5, 2)
    x1 = Permutation.from_cycles(5, (1, 2, 3))
    x2 = Permutation.from_cycles(5, (3, 4, 5))
    gens = standard_generators(params, x1, x2)
    assert all(parity(mul(x, params.tau())) == 1 for x in (x1, x2))
    assert generated_order([to_points(a) for a in gens]) == params.order
    with pytest.raises(ValueError):
        standard_generators(params, Permutation.from_cycles(5, (1, 2)), x2)
    with pytest.raises(ValueError):
        # (1 2 3) tau and (1 2 3 4 5) tau only generate a proper subgroup
        standard_generators(params, x1, Permutation.from_cycles(5, (1, 2, 3, 4, 5)))


def test_order_formula():
    assert GroupParams(6, 2).order == 518400
    assert GroupParams(30, 1).order == (265252859812191058636308480000000 // 2) * 2
