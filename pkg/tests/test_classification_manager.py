# -*- coding: utf-8 -*-
"""分類決策流程測試"""

import time
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from classification_manager import (
    NODE_DEGREE,
    NODE_INTERLACING,
    NODE_ORDER,
    NODE_POLYNOMIAL,
    NODE_RATIONALITY,
    NODE_REDUCEDNESS,
    ClassificationManager,
    Verdict,
    VerdictKind,
    classify,
    derivative_spec,
    gaussian_degenerate_verdict,
)
from exact_core import PolyQ
from hypergeom_params import FORM_F, FORM_RECURRENCE, FORM_SCRIPT_F, HypergeomSpec, IllDefined, assemble
from trace_report_generator import trace_to_document

F = Fraction

GOLDEN = [
    ("intro", "ALGEBRAIC"),
    ("intro_recurrence", "ALGEBRAIC"),
    ("log_quotient", "TRANSCENDENTAL"),
    ("rational_g", "ALGEBRAIC"),
    ("complete_elliptic", "TRANSCENDENTAL"),
    ("fourteenths", "ALGEBRAIC"),
    ("crazy", "ALGEBRAIC"),
    ("crazy_blocks", "ALGEBRAIC"),
    ("f_r_two", "TRANSCENDENTAL"),
    ("g_r_two", "ALGEBRAIC"),
    ("binomial_u", "ALGEBRAIC"),
    ("binomial_v", "TRANSCENDENTAL"),
    ("gessel", "ALGEBRAIC"),
    ("gessel_gaussian", "ALGEBRAIC"),
    ("truncated", "POLYNOMIAL(deg<3)"),
    ("contraction_example", "TRANSCENDENTAL"),
]

rational = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))
bottom_rational = rational.filter(lambda v: not (v.denominator == 1 and v <= 0))


def kinds(trace):
    return [node.name for node in trace.nodes]


@pytest.mark.parametrize("name, label", GOLDEN)
def test_golden_verdicts(spec_from, name, label):
    trace = classify(spec_from(name))
    assert trace.verdict.label == label


def test_golden_suite_is_fast(spec_from):
    specs = [spec_from(name) for name, _ in GOLDEN]
    for spec in specs:
        classify(spec)
    start = time.perf_counter()
    for spec in specs:
        classify(spec)
    assert time.perf_counter() - start < 1.0


def test_nodes_follow_fixed_order_with_single_terminal(spec_from):
    for name, _ in GOLDEN:
        trace = classify(spec_from(name))
        names = kinds(trace)
        assert names == list(NODE_ORDER[:len(names)])
        assert [n.terminal for n in trace.nodes].count(True) == 1
        assert trace.terminal_node.terminal


def test_crazy_trace_details(spec_from):
    trace = classify(spec_from("crazy"))
    assert trace.terminal_node.name == NODE_INTERLACING
    assert trace.ic_report.lambdas == [1, 3, 5, 9, 11, 13]
    assert len(trace.contraction_steps) == 1
    assert trace.contraction_steps[0].difference == 1
    assert trace.contraction_steps[0].removed_factor.degree == 2
    payload = trace.node(NODE_RATIONALITY).payload
    assert payload["c_parameters"] == ["1/14", "3/14", "11/14"]
    assert payload["d_parameters"] == ["1/7", "3/7", "3"]


def test_log_example_stops_at_reducedness(spec_from):
    trace = classify(spec_from("log_quotient"))
    assert trace.terminal_node.name == NODE_REDUCEDNESS
    assert trace.terminal_node.outcome is False
    assert trace.ic_report is None
    assert trace.node(NODE_REDUCEDNESS).payload["integer_difference_pairs"][0]["difference"] == 1


def test_polynomial_trace(spec_from):
    trace = classify(spec_from("truncated"))
    assert trace.verdict == Verdict.polynomial(3)
    assert trace.verdict.is_algebraic
    assert trace.terminal_node.name == NODE_POLYNOMIAL
    assert trace.terminal_node.payload["truncation_degree"] == 3
    assert trace.terminal_node.payload["algebraic"] is True


def test_degree_regimes(spec_from):
    entire = classify(spec_from("entire"))
    assert entire.terminal_node.name == NODE_DEGREE
    assert entire.terminal_node.payload["regime"] == "entire"
    zero = classify(spec_from("zero_radius"))
    assert zero.terminal_node.payload["regime"] == "zero_radius"
    assert zero.verdict.kind is VerdictKind.TRANSCENDENTAL


def test_irrational_contraction_is_transcendental(spec_from):
    trace = classify(spec_from("f_r_two"))
    assert trace.node(NODE_RATIONALITY).outcome is True
    assert trace.terminal_node.name == NODE_INTERLACING
    assert trace.node(NODE_RATIONALITY).payload["c_parameters"] == ["-1/2", "1/2"]

    irrational = HypergeomSpec(PolyQ.from_coefficients([-2, 0, 1]), PolyQ.from_coefficients([1, 0, 1]))
    trace = classify(irrational)
    assert trace.terminal_node.name == NODE_RATIONALITY
    assert trace.terminal_node.outcome is False
    assert trace.verdict.kind is VerdictKind.TRANSCENDENTAL


def test_raw_form_flags(spec_from):
    trace = classify(spec_from("contraction_example"))
    assert trace.raw_contracted is False
    assert trace.raw_reduced is False
    assert classify(assemble([F(1, 3)], [F(1, 2)])).raw_reduced is True


def test_tolerated_poles_are_recorded():
    trace = classify(assemble([-3, 1], [-5]))
    assert trace.tolerated_poles == (5,)
    assert trace.verdict == Verdict.polynomial(4)


def test_classify_rejects_ill_defined_spec():
    spec = HypergeomSpec(PolyQ.one(), PolyQ.from_parameters([-2]))
    with pytest.raises(IllDefined):
        classify(spec)


def test_zero_leading_value_is_zero_polynomial():
    trace = classify(assemble([F(1, 2)], [], u0=0))
    assert trace.verdict == Verdict.polynomial(0)


def test_gaussian_lists():
    assert gaussian_degenerate_verdict(1, F(1, 2), 2) == Verdict.algebraic()
    assert gaussian_degenerate_verdict(1, 1, 2) == Verdict.transcendental()
    assert gaussian_degenerate_verdict(F(1, 3), F(1, 2), F(1, 5)) is None
    assert gaussian_degenerate_verdict(1, 1, -2) is None


@pytest.mark.parametrize("alpha, beta, gamma", [
    (F(1, 2), F(-2), F(3, 2)),
    (F(1), F(1, 2), F(-1, 2)),
    (F(-1), F(1, 2), F(1, 3)),
])
def test_gaussian_lists_worked_examples(alpha, beta, gamma):
    assert gaussian_degenerate_verdict(alpha, beta, gamma) == Verdict.algebraic()
    assert classify(assemble([alpha, beta], [gamma])).verdict.is_algebraic


def test_derivative_examples():
    d = derivative_spec(assemble([1, 1], [2]))
    target = assemble([2, 2], [3])
    assert (d.c_poly, d.d_poly, d.leading_value) == (target.c_poly, target.d_poly, F(1, 2))

    d = derivative_spec(assemble([1], []))
    target = assemble([2], [])
    assert (d.c_poly, d.d_poly, d.leading_value) == (target.c_poly, target.d_poly, F(1))

    d = derivative_spec(assemble([F(1, 2), F(1, 2)], [1]))
    target = assemble([F(3, 2), F(3, 2)], [2])
    assert (d.c_poly, d.d_poly, d.leading_value) == (target.c_poly, target.d_poly, F(1, 4))


def test_manager_caches_by_canonical_form(spec_from):
    manager = ClassificationManager()
    first = manager.classify(spec_from("gessel"))
    second = manager.classify(spec_from("gessel"))
    assert first is second
    assert manager.get_statistics() == {"cached": 1, "hits": 1, "misses": 1}
    assert manager.verdict(spec_from("gessel")) == Verdict.algebraic()
    manager.clear()
    assert manager.get_statistics()["cached"] == 0


def test_cached_trace_keeps_the_callers_input(spec_from):
    manager = ClassificationManager()
    first = manager.classify(spec_from("intro"))
    second = manager.classify(spec_from("intro_recurrence"))
    assert manager.get_statistics()["hits"] == 1
    assert second.verdict == first.verdict
    assert second.nodes == first.nodes
    assert first.spec.origin.form == FORM_F
    assert second.spec.origin.form == FORM_RECURRENCE
    document = trace_to_document(second)
    assert document["input"]["form"] == FORM_RECURRENCE
    assert document["input"]["expression"].startswith("rec:")


def test_parallel_classification_agrees(spec_from):
    spec = spec_from("crazy")
    assert classify(spec, parallel=True).ic_report == classify(spec).ic_report


def test_lambda_sweep_for_modulus_2310_is_fast():
    top = [F(1, 2), F(1, 3), F(1, 5), F(1, 7), F(1, 11), F(2, 3)]
    bottom = [F(2, 5), F(3, 7), F(4, 11), F(3, 5), F(5, 7)]
    spec = assemble(top, bottom)
    start = time.perf_counter()
    trace = classify(spec)
    elapsed = time.perf_counter() - start
    assert trace.ic_report.modulus == 2310
    assert len(trace.ic_report.per_lambda) == 480
    assert elapsed < 1.0


def _safe_spec(top, bottom, form="F", scale=1):
    try:
        return assemble(top, bottom, form=form, scale=scale)
    except IllDefined:
        assume(False)


@given(st.lists(rational, max_size=4), st.lists(bottom_rational, max_size=3))
@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
def test_derivative_preserves_verdict(top, bottom):
    spec = _safe_spec(top, bottom)
    original = classify(spec).verdict
    derived = classify(derivative_spec(spec)).verdict
    assert derived.kind is original.kind


@given(st.lists(rational, max_size=4), st.lists(bottom_rational, max_size=3),
       st.builds(Fraction, st.integers(-9, 9).filter(bool), st.integers(1, 9)), st.randoms())
@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
def test_verdict_invariant_under_scale_and_permutation(top, bottom, scale, rnd):
    spec = _safe_spec(top, bottom)
    shuffled_top, shuffled_bottom = list(top), list(bottom)
    rnd.shuffle(shuffled_top)
    rnd.shuffle(shuffled_bottom)
    other = assemble(shuffled_top, shuffled_bottom, scale=scale)
    assert classify(other).verdict == classify(spec).verdict


@given(st.lists(st.builds(Fraction, st.integers(7, 40), st.integers(1, 6)).filter(lambda v: v > 1),
                min_size=1, max_size=4),
       st.lists(st.builds(Fraction, st.integers(7, 40), st.integers(1, 6)).filter(lambda v: v > 1),
                min_size=1, max_size=4))
@settings(max_examples=200, deadline=None)
def test_shifting_all_parameters_down_by_one(top, bottom):
    spec = assemble(top, bottom, form=FORM_SCRIPT_F)
    shifted = assemble([a - 1 for a in top], [b - 1 for b in bottom], form=FORM_SCRIPT_F)
    assert classify(spec).verdict.is_algebraic == classify(shifted).verdict.is_algebraic


@given(st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6)),
       st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6)),
       st.integers(-5, 5), st.booleans())
@settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
def test_gaussian_lists_agree_with_classification(alpha, beta, k, integer_top):
    if integer_top:
        alpha = Fraction(k)
        gamma = beta + Fraction(k) / 2 if beta.denominator > 2 else Fraction(1, 7) + k
    else:
        gamma = alpha + k
    verdict = gaussian_degenerate_verdict(alpha, beta, gamma)
    assume(verdict is not None)
    trace = classify(assemble([alpha, beta], [gamma]))
    assert trace.verdict.is_algebraic == verdict.is_algebraic


@given(st.integers(-5, 6), st.integers(-3, 6), st.integers(-4, 4), st.sampled_from([F(0), F(1, 2), F(1, 3)]))
@settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
def test_gaussian_lists_with_integer_gamma(alpha, gamma, offset, fraction):
    beta = gamma + offset + fraction
    verdict = gaussian_degenerate_verdict(alpha, beta, gamma)
    assume(verdict is not None)
    trace = classify(assemble([alpha, beta], [gamma]))
    assert trace.verdict.is_algebraic == verdict.is_algebraic
