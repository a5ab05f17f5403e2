# -*- coding: utf-8 -*-
"""驗證預言測試：係數展開、分母掃描、零化多項式猜測、微分方程殘差"""

import logging
import time
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from classification_manager import classify
from config_params import DEFAULT_GUESS_BIDEGREE, DEFAULT_GUESS_TERMS, GUARD_TERMS
from exact_core import PolyQ, lcm_of_denominators
from expression_parser import parse_expression
from hypergeom_params import IllDefined, assemble
from interlacing_criteria import christol_globally_bounded
from series_oracle import (
    InsufficientTerms,
    coefficients,
    denominator_primes,
    eisenstein_constant,
    guess_annihilator,
    ode_residual,
    recurrence_residual,
)

F = Fraction

TRANSCENDENTAL_ENTRIES = ["log_quotient", "complete_elliptic", "entire", "binomial_v", "f_r_two", "contraction_example"]


def P(*coeffs):
    return PolyQ.from_coefficients(coeffs)


def test_coefficients_of_corpus_entries(spec_from):
    assert list(coefficients(spec_from("intro"), 3)) == [1, 1, -6]
    assert list(coefficients(spec_from("intro_recurrence"), 3)) == [1, 1, -6]
    assert list(coefficients(spec_from("gessel"), 4)) == [1, 2, 11, 85]
    assert list(coefficients(spec_from("complete_elliptic"), 4)) == [1, F(1, 4), F(9, 64), F(25, 256)]
    assert list(coefficients(spec_from("binomial_u"), 4)) == [1, F(9, 4), F(56, 5), F(275, 4)]
    assert list(coefficients(spec_from("binomial_v"), 4)) == [1, F(3, 2), F(56, 9), F(275, 8)]


def test_truncated_series_stops():
    prefix = coefficients(assemble([-2, F(1, 2)], [F(1, 3)]), 6)
    assert list(prefix) == [1, -3, F(27, 16), 0, 0, 0]
    assert len(prefix) == 6


def test_tolerated_pole_is_never_evaluated():
    prefix = coefficients(assemble([-3, 1], [-5]), 10)
    assert all(u == 0 for u in prefix[4:])


def test_recurrence_residual_vanishes(spec_from):
    for name in ("intro", "crazy", "gessel", "truncated"):
        spec = spec_from(name)
        assert not any(recurrence_residual(spec, coefficients(spec, 25)))


@pytest.mark.parametrize(
    "name, dx, dy, rows",
    [
        ("intro", 5, 2, {2: [1, -20, 160, -640, 1280, -1024], 1: [], 0: [-1, 18, -109, 252, -196]}),
        ("binomial_root", 1, 2, {2: [1, -1], 1: [], 0: [-1]}),
        ("rational_g", 3, 1, {1: [1, -3, 3, -1], 0: [-1, -1]}),
        ("truncated", 2, 1, {1: [16], 0: [-16, 48, -27]}),
    ],
)
def test_guess_known_annihilators(spec_from, name, dx, dy, rows):
    prefix = coefficients(spec_from(name), 60)
    found = guess_annihilator(prefix, dx, dy)
    assert found is not None
    assert found.dy == dy
    for j, coeffs in rows.items():
        assert found.row(j) == P(*coeffs)
    assert not any(found.evaluate_series(list(prefix)))


def test_guess_geometric_and_square_root_quotient():
    geometric = guess_annihilator(coefficients(assemble([1], []), 30), 1, 1)
    assert geometric.grid == ((F(-1), F(0)), (F(1), F(-1)))
    assert str(geometric) == "(-x + 1)*y - 1"

    quotient = guess_annihilator(coefficients(assemble([1, F(1, 2)], [2]), 40), 1, 2)
    assert quotient.row(2) == P(0, 1)
    assert quotient.row(1) == P(-4)
    assert quotient.row(0) == P(4)


def test_guess_rational_with_polynomial_coefficients(spec_from):
    found = guess_annihilator(coefficients(spec_from("g_r_two"), 40), 6, 1)
    assert found.dy == 1
    assert found.row(1) == P(1, -6, 15, -20, 15, -6, 1)


@pytest.mark.parametrize("name", TRANSCENDENTAL_ENTRIES)
def test_guess_finds_nothing_for_transcendental_entries(spec_from, name):
    spec = spec_from(name)
    assert not classify(spec).verdict.is_algebraic
    assert guess_annihilator(coefficients(spec, 40), 3, 3) is None


GUESS_OUT_OF_REACH = {"crazy", "crazy_blocks", "fourteenths"}
REJECTED_INPUTS = {"non_algebraic_parameter", "pole_before_truncation"}


def test_guessing_agrees_with_classification_on_golden_suite(corpus_expressions):
    start = time.perf_counter()
    checked = 0
    for name, expression in corpus_expressions.items():
        if name in GUESS_OUT_OF_REACH | REJECTED_INPUTS:
            continue
        spec = parse_expression(expression).to_spec()
        prefix = coefficients(spec, DEFAULT_GUESS_TERMS)
        found = guess_annihilator(prefix, *DEFAULT_GUESS_BIDEGREE, guard=GUARD_TERMS)
        if classify(spec).verdict.is_algebraic:
            assert found is not None, name
            assert not any(found.evaluate_series(list(prefix))), name
        else:
            assert found is None, name
        checked += 1
    assert checked == 16
    assert time.perf_counter() - start < 60.0


def test_logarithmic_quotient_has_no_annihilator(spec_from):
    prefix = coefficients(spec_from("log_quotient"), 120)
    assert guess_annihilator(prefix, 6, 6) is None


def test_guard_terms_are_held_out_for_verification(caplog):
    broken = coefficients(assemble([1], []), 30).perturbed(29, 1)
    with caplog.at_level(logging.WARNING, logger="series_oracle"):
        assert guess_annihilator(broken, 1, 1) is None
    assert "rejected spurious annihilator" in caplog.text

def test_guess_needs_guard_terms(spec_from):
    with pytest.raises(InsufficientTerms):
        guess_annihilator(coefficients(spec_from("intro"), 5), 2, 2)
    with pytest.raises(ValueError):
        guess_annihilator(coefficients(spec_from("intro"), 60), 2, 2, guard=3)


def test_denominator_scan():
    prefix = coefficients(assemble([1, 1], [F(1, 2)]), 10)
    assert {3, 5, 7} <= denominator_primes(prefix)
    assert denominator_primes(coefficients(assemble([F(1, 2)], [], scale=4), 20)) == set()


def test_eisenstein_constant_of_elliptic_series(spec_from):
    assert eisenstein_constant(coefficients(spec_from("complete_elliptic"), 20)) == 16
    assert eisenstein_constant(coefficients(spec_from("gessel"), 20)) == 1


def test_ode_residual_falls_back_for_irrational_parameters(spec_from):
    spec = spec_from("crazy")
    residual = ode_residual(spec, 20)
    assert len(residual) == 19
    assert not any(residual)


positive = st.builds(Fraction, st.integers(1, 12), st.integers(1, 6))


def _primes_of(value: int):
    return set(int(p) for p in sympy.primefactors(abs(value))) if abs(value) > 1 else set()


@given(st.integers(1, 3).flatmap(
    lambda q: st.tuples(st.lists(positive, min_size=q + 1, max_size=q + 1),
                        st.lists(positive, min_size=q, max_size=q))),
    st.sampled_from([F(1), F(4), F(27, 4), F(-16), F(1, 2)]))
@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
def test_globally_bounded_series_have_few_denominator_primes(lists, scale):
    a, b = lists
    assume(christol_globally_bounded(a, b).satisfied)
    modulus = lcm_of_denominators(a + b)
    height = max(abs(modulus * v) for v in a + b)
    allowed = _primes_of(modulus * scale.numerator * scale.denominator)
    allowed |= set(int(p) for p in sympy.primerange(2, int(height) + 1))
    primes = denominator_primes(coefficients(assemble(a, b, scale=scale), 200))
    assert primes <= allowed


@given(st.lists(st.builds(Fraction, st.integers(-8, 8), st.integers(1, 4)), max_size=3),
       st.lists(positive, max_size=3),
       st.sampled_from([F(1), F(-2), F(3, 4)]))
@settings(max_examples=50, deadline=None)
def test_ode_residual_vanishes_and_detects_perturbation(top, bottom, scale):
    try:
        spec = assemble(top, bottom, scale=scale)
    except IllDefined:
        return
    prefix = coefficients(spec, 100)
    assert not any(ode_residual(spec, 100, prefix))
    broken = ode_residual(spec, 100, prefix.perturbed(3, 1))
    assert broken[3] != 0
