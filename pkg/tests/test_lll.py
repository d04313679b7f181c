from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest

from wreathcover.covering import ProductNormalizer, SocleIndex
from wreathcover.lll import (
    case2_display,
    case_bound,
    clique_family_stats,
    conjugate_count_check,
    lll_verdict,
    omega_sigma_ratio,
    threshold_scan,
)
from wreathcover.snsub import bipartition, dblocks, kset
from wreathcover.wreath import GroupParams


def test_stats_small():
    st = clique_family_stats(6, 2)
    assert (st.l, st.d, st.c_h) == (100, 196, 432)


def test_case_bounds_shape():
    assert case_bound(1, 36, 2) == 0
    c2 = case_bound(2, 36, 2)
    assert c2 < 1 and c2 <= case2_display(36, 2).upper
    assert case_bound(3, 40, 2) == 0  # 6 does not divide 40
    assert case_bound(4, 30, 2) == 0  # 4 does not divide 30
    # case 6 uses the smallest prime divisor of m: t = 2 for m = 6, t = 3 for m = 9
    assert case_bound(6, 36, 6) == 6 * 2**6 * 216 * Fraction(12 * (factorial(36) // 2) ** 3, clique_family_stats(36, 6).c_h)
    assert case_bound(6, 12, 9) == 9 * 2**9 * 108 * Fraction(18 * (factorial(12) // 2) ** 3, clique_family_stats(12, 9).c_h)
    with pytest.raises(ValueError):
        case_bound(7, 36, 2)


def test_verdict_certified_at_48():
    for m in (2, 3):
        r = lll_verdict(48, m)
        assert r.verdict and r.margin > 0
        assert r.extras["l_below_2^(m(n-1))"] and r.d == 2 * (r.l - 2)
        assert r.conclusion() == f"omega(G_{{48,{m}}}) >= {r.l}"


def test_verdict_stable_under_precision():
    for n in (36, 48, 60):
        assert lll_verdict(n, 2, 170).verdict == lll_verdict(n, 2, 340).verdict


def test_threshold_m3_monotone():
    sc = threshold_scan(3, n_max=120)
    assert sc.n0 == 48 and sc.monotone and sc.stable


def test_threshold_m2_first_and_eventual():
    sc = threshold_scan(2, n_max=120)
    assert sc.n0 == 48 and sc.n0_eventual == 72 and sc.stable


def test_closing_step_half_power():
    # total <= (1/2)^{mn} on the tail of the scan
    for m in (2, 3):
        for n in range(72, 145, 12):
            assert lll_verdict(n, m).extras["below_half_power"]


def test_case4_generic_path_never_certifies():
    for n in (48, 72, 96):
        assert lll_verdict(n, 2).verdict
        assert not lll_verdict(n, 2).extras["verdict_with_case4_star"]


@pytest.mark.parametrize("sub", [SocleIndex(2), ProductNormalizer(bipartition(6)), ProductNormalizer(kset(6, 1)),
                                 ProductNormalizer(kset(6, 2)), ProductNormalizer(dblocks(6, 3))])
def test_conjugates_through_marked_element(sub):
    c = conjugate_count_check(GroupParams(6, 2), sub)
    assert 0 <= c <= 12


def test_ratio_below_one():
    for n in (36, 48, 120):
        r, _ = omega_sigma_ratio(n, 2, check=False)
        assert 0 < r < 1
    r, cert = omega_sigma_ratio(48, 2)
    assert cert and r > Fraction(99, 100)
