from __future__ import annotations

import random

import numpy as np

from wreathcover.oracles import (
    alt_table,
    diagonal_census,
    diagonal_expected_order,
    exhaustive_normalizer_counts,
    full_closure_size,
    g2_index,
    orbit_mask,
)
from wreathcover.perm import Permutation
from wreathcover.pi_classes import pi_index
from wreathcover.wreath import GroupParams, random_element, random_socle, standard_generators, w_conj, gamma


def test_alt_table_basics():
    A = alt_table(5)
    assert A.N == 60
    assert A.closure_size([A.idx(Permutation.from_cycles(5, (1, 2, 3))), A.idx(Permutation.from_cycles(5, (3, 4, 5)))]) == 60


def test_index_conjugation_matches_element_arithmetic():
    gi = g2_index(6)
    params = GroupParams(6, 2)
    rng = random.Random(3)
    cg = gi.conj_gamma()
    for _ in range(100):
        g = random_element(params, rng)
        y = random_socle(params, rng)
        code = gi.code_of(g)
        assert gi.element(int(cg[code])) == w_conj(g, gamma(params))
        cy = gi.conj_socle(gi.A.idx(y.xs[0]), gi.A.idx(y.xs[1]), sel=np.array([code]))
        assert gi.element(int(cy[0])) == w_conj(g, y)


def test_standard_generators_generate_g62():
    gi = g2_index(6)
    params = GroupParams(6, 2)
    gens = standard_generators(params, Permutation.from_cycles(6, (1, 2, 3)), Permutation.from_cycles(6, (2, 3, 4, 5, 6)))
    assert full_closure_size(gi, gens) == params.order


def test_pi_minus_one_is_one_conjugacy_class():
    gi = g2_index(6)
    mask = gi.pi_mask(pi_index(GroupParams(6, 2), -1))
    start = int(np.flatnonzero(mask)[0])
    orbit = orbit_mask(gi, start, gi.generator_conjugations())
    assert np.array_equal(orbit, mask)


def test_normalizer_counts_exhaustive():
    rep = exhaustive_normalizer_counts(6)
    assert rep["ok"]
    bip = rep["rows"][0]
    assert bip["counts"]["Pi(-1)"] == 432 and bip["order"] == 5184


def test_diagonal_census_n7():
    c = diagonal_census(7)
    assert c.empty_intersections
    assert c.by_k[1] == 0 and c.by_k[3] == 0
    assert c.k2_same_type
    twisted = diagonal_census(7, (2, 3, 1, 4, 5, 7, 6))
    assert twisted.order == c.order and twisted.empty_intersections
    assert diagonal_expected_order(7) == 10080
