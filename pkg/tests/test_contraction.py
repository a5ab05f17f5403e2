# -*- coding: utf-8 -*-
"""收縮與約化測試"""

import random
from collections import Counter
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from contraction import (
    CONTRACTION,
    REDUCTION,
    contract,
    degree_balanced,
    has_rational_parameters,
    integer_difference_candidates,
    is_contracted,
    is_reduced,
    reduce_full,
)
from exact_core import PolyQ, poly_gcd, shift_search_bound
from hypergeom_params import FactorPair

F = Fraction

params = st.lists(st.builds(Fraction, st.integers(-8, 8), st.integers(1, 4)), max_size=6)


def P(*coeffs):
    return PolyQ.from_coefficients(coeffs)


def pair(c, d):
    return FactorPair.from_parameters(c, d)


CRAZY = FactorPair(
    PolyQ.from_parameters([F(1, 14), F(3, 14), F(11, 14)]) * P(4, 2, 1),
    PolyQ.from_parameters([F(1, 7), F(3, 7), 3]) * P(3, 0, 1),
)


def pairwise_contraction(c, d, seed):
    """逐對移除：每次在最小的非負差值中隨機挑一對"""
    rng = random.Random(seed)
    c, d = list(c), list(d)
    while True:
        candidates = [(a - b, i, j) for i, a in enumerate(c) for j, b in enumerate(d)
                      if (a - b).denominator == 1 and a - b >= 0]
        if not candidates:
            return c, d
        smallest = min(n for n, _, _ in candidates)
        _, i, j = rng.choice([item for item in candidates if item[0] == smallest])
        del c[i]
        del d[j]


def test_contraction_of_worked_example():
    contracted, steps = contract(pair([F(1, 3), F(1, 2), 2, 4], [F(3, 2), 3, 1, 1]))
    assert contracted == pair([F(1, 3), F(1, 2)], [F(3, 2), 1])
    assert len(steps) == 1
    step = steps[0]
    assert (step.difference, step.pairs_removed, step.kind) == (1, 2, CONTRACTION)
    assert step.removed_factor == PolyQ.from_parameters([2, 4])
    assert step.d_factor == PolyQ.from_parameters([1, 3])
    assert is_contracted(contracted)
    assert not is_reduced(contracted)


def test_reduction_of_worked_example():
    reduced, steps = reduce_full(pair([F(1, 3), F(1, 2), 2, 4], [F(3, 2), 3, 1, 1]))
    assert reduced == pair([F(1, 3)], [1])
    assert [s.kind for s in steps] == [CONTRACTION, REDUCTION]
    assert steps[1].removed_factor == P(F(1, 2), 1)
    assert steps[1].d_factor == P(F(3, 2), 1)
    assert is_reduced(reduced)


def test_contraction_removes_irrational_block():
    contracted, steps = contract(CRAZY)
    assert contracted == pair([F(1, 14), F(3, 14), F(11, 14)], [F(1, 7), F(3, 7), 3])
    assert len(steps) == 1
    assert steps[0].difference == 1
    assert steps[0].removed_factor == P(4, 2, 1)
    assert steps[0].d_factor == P(3, 0, 1)
    assert steps[0].pairs_removed == 2
    assert has_rational_parameters(contracted) == ([F(1, 14), F(3, 14), F(11, 14)], [F(1, 7), F(3, 7), F(3)])
    assert has_rational_parameters(CRAZY) is None


def test_zero_difference_pairs_are_removed_first():
    contracted, steps = contract(pair([1, 1], [2, 1]))
    assert contracted == pair([1], [2])
    assert steps[0].difference == 0


def test_integer_difference_candidates():
    assert integer_difference_candidates(pair([F(1, 2), 2], [F(3, 2), 1])) == [-1, 1]
    assert integer_difference_candidates(pair([F(1, 3)], [F(1, 2)])) == []
    bound = shift_search_bound(P(4, 2, 1), P(3, 0, 1))
    assert set(range(-bound, bound + 1)) <= set(integer_difference_candidates(CRAZY))


def test_degree_balance():
    assert degree_balanced(pair([F(1, 2)], [1]))
    assert not degree_balanced(pair([F(1, 2)], [F(1, 3), 1]))
    assert not degree_balanced(pair([F(1, 2), F(1, 3)], [1]))


def test_empty_pair_is_reduced():
    assert is_reduced(pair([], []))
    assert contract(pair([], [])) == (pair([], []), [])


@given(params, params)
@settings(max_examples=200, deadline=None)
def test_contract_is_idempotent_and_preserves_degree_gap(c, d):
    original = pair(c, d)
    contracted, steps = contract(original)
    again, more = contract(contracted)
    assert again == contracted and more == []
    assert original.c_poly.degree - original.d_poly.degree == contracted.c_poly.degree - contracted.d_poly.degree
    assert sum(s.pairs_removed for s in steps) == original.c_poly.degree - contracted.c_poly.degree
    reduced, _ = reduce_full(original)
    assert original.c_poly.degree - original.d_poly.degree == reduced.c_poly.degree - reduced.d_poly.degree


@given(params, params, st.integers(0, 10 ** 6))
@settings(max_examples=200, deadline=None)
def test_contract_matches_random_pairwise_removal(c, d, seed):
    contracted, _ = contract(pair(c, d))
    left_c, left_d = pairwise_contraction(c, d, seed)
    assert contracted == pair(left_c, left_d)


@given(params, params)
@settings(max_examples=100, deadline=None)
def test_no_shifted_common_factor_survives(c, d):
    contracted, _ = contract(pair(c, d))
    bound = shift_search_bound(contracted.c_poly, contracted.d_poly)
    for n in range(0, bound + 1):
        assert poly_gcd(contracted.c_poly, contracted.d_poly.shift(n)).is_constant
    reduced, _ = reduce_full(pair(c, d))
    bound = shift_search_bound(reduced.c_poly, reduced.d_poly)
    for n in range(-bound, bound + 1):
        assert poly_gcd(reduced.c_poly, reduced.d_poly.shift(n)).is_constant
    remaining = Counter(has_rational_parameters(reduced)[0])
    assert all(count <= Counter(c)[value] for value, count in remaining.items())
