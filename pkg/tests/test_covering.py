from __future__ import annotations

import random
import warnings
from fractions import Fraction
from math import comb

import pytest

from wreathcover.covering import (
    ERIC_CONSTANT,
    Diagonal,
    ProductNormalizer,
    SocleIndex,
    alpha,
    competitors,
    contains,
    count_pi_in_normalizer,
    covering_classes,
    d_value_diagonal,
    d_value_product,
    eric_sum_exact,
    is_covering_family,
    block_factorial_check,
    normalizer_order_check,
    closed_form_bound,
    sigma_formula,
    subgroup_order,
    uniqueness_check,
    verify_theorem1,
    witness_member,
)
from wreathcover.pi_classes import pi_descriptors, pi_size
from wreathcover.snsub import PrimitiveBound, bipartition, dblocks, kset
from wreathcover.wreath import GroupParams, OutsideHypotheses, random_element


def test_alpha():
    assert [alpha(k) for k in (2, 4, 6, 12, 30)] == [1, 1, 2, 2, 3]


def test_sigma_formula_values():
    assert sigma_formula(30, 1) == 100522847
    assert sigma_formula(30, 2) == 1 + (comb(30, 15) // 2) ** 2 + sum(comb(30, i) ** 2 for i in range(1, 10))
    with pytest.raises(ValueError):
        sigma_formula(32, 2)


def test_small_n_warns():
    with pytest.warns(OutsideHypotheses):
        total = sigma_formula(6, 2)
    assert total == 137
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        sigma_formula(30, 2)


def test_covering_design_flags():
    assert "m=1 degenerate" in covering_classes(30, 1).flags
    assert covering_classes(36, 3).flags == []


@pytest.mark.parametrize("n,m", [(6, 2), (30, 2), (30, 3), (12, 4)])
def test_witness_member_contains(n, m):
    params = GroupParams(n, m)
    rng = random.Random(n + m)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OutsideHypotheses)
        for _ in range(300):
            g = random_element(params, rng)
            w = witness_member(g)
            if w is None:
                continue
            assert contains(w, g)


def test_witness_member_socle_index():
    params = GroupParams(30, 3)
    g = random_element(params, random.Random(0), k=2)
    w = witness_member(g)
    assert isinstance(w, SocleIndex) and w.r == 2


def test_subgroup_orders():
    p = GroupParams(6, 2)
    assert subgroup_order(SocleIndex(2), p) == 259200
    assert subgroup_order(ProductNormalizer(bipartition(6)), p) == 5184
    assert subgroup_order(Diagonal(2), GroupParams(7, 2)) == 10080


def test_counts_are_fractions_of_pi_sizes():
    params = GroupParams(30, 2)
    for d in [bipartition(30)] + [kset(30, i) for i in range(1, 10)]:
        for pd in pi_descriptors(params):
            assert 0 <= count_pi_in_normalizer(d, pd, params) <= pi_size(pd, params)


def test_uniqueness_small_finding():
    rep = uniqueness_check(6)
    assert not rep.ok
    bad = rep.findings
    assert [r["class"] for r in bad] == ["[1,1,4]"]
    assert sorted(bad[0]["members"]) == ["kset:1:{1}", "kset:1:{2}"]


def test_uniqueness_theorem_scale():
    for n in (30, 36, 42):
        assert uniqueness_check(n).ok


def test_competitors_and_family():
    comp = competitors(30)
    assert not any(is_covering_family(c) for c in comp)
    assert any(isinstance(c, PrimitiveBound) for c in comp)
    assert is_covering_family(kset(30, 9)) and not is_covering_family(kset(30, 10))


def test_d_values_product_and_diagonal():
    params = GroupParams(30, 2)
    for c in competitors(30):
        r = d_value_product(c, params)
        assert r.verdict and r.margin > 0
        assert r.extras["cap_holds"]
    assert d_value_diagonal(2, params).bound == 0
    r3 = d_value_diagonal(3, GroupParams(30, 3))
    assert r3.verdict and r3.bound < Fraction(1, 10**10)
    with pytest.raises(ValueError):
        d_value_diagonal(3, params)


def test_eric_sums():
    for c in competitors(30):
        if isinstance(c, PrimitiveBound):
            continue
        assert eric_sum_exact(c, 30) < ERIC_CONSTANT
    assert eric_sum_exact(kset(30, 10), 30) == Fraction(10, 21)


def test_display_bound_encloses_below_one():
    b = closed_form_bound(30, 2)
    assert b.upper < 1 and b.lower > ERIC_CONSTANT


def test_order_lemmas():
    assert block_factorial_check(60)["ok"]
    assert normalizer_order_check(30)["ok"]


def test_verify_theorem1_certifies_at_scale():
    out = verify_theorem1(GroupParams(30, 2), trials=5, seed=1)
    assert out["certified"] and out["sigma"] == sigma_formula(30, 2)
    small = verify_theorem1(GroupParams(12 * 3, 1), trials=2, seed=1)
    assert not small["certified"]  # m = 1 is degenerate
