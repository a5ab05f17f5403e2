#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
交錯判準模組
============

兩個作用在有理參數多重集合上的算術判準：

1. 交錯判準（IC）：對每個與 N 互質的 λ，λC 與 λD 在單位圓上嚴格交錯
2. Christol 全域有界判準：以 ⪯ 計數的不等式

N 為所有參數分母的最小公倍數（整數視為分母 1）。各 λ 彼此獨立，
可以並行計算，但報告一律依 λ 遞增排列。
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import List, Optional, Sequence, Tuple

from config_params import LAMBDA_SWEEP_WORKERS
from exact_core import bracket, format_rational, is_negative_natural, lcm_of_denominators, prec_le
from hypergeom_params import InvalidParameter

logger = logging.getLogger(__name__)

CRITERION_INTERLACING = "interlacing"
CRITERION_CHRISTOL = "christol"

FAILURE_SIZE_MISMATCH = "size_mismatch"
FAILURE_INTERLACING = "interlacing"
FAILURE_COUNT = "count"


@dataclass(frozen=True)
class LambdaReport:
    lam: int
    sorted_top: Tuple[Tuple[Fraction, Fraction], ...]
    sorted_bottom: Tuple[Tuple[Fraction, Fraction], ...]
    satisfied: bool
    failure_witness: Optional[str] = None


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    modulus: int
    top: Tuple[Fraction, ...]
    bottom: Tuple[Fraction, ...]
    per_lambda: Tuple[LambdaReport, ...]
    satisfied: bool
    failure_kind: Optional[str] = None

    @property
    def lambdas(self) -> List[int]:
        return [r.lam for r in self.per_lambda]

    def first_failure(self) -> Optional[LambdaReport]:
        return next((r for r in self.per_lambda if not r.satisfied), None)


def units_modulo(modulus: int) -> List[int]:
    """[1, N] 中與 N 互質的 λ；N = 1 時只有 λ = 1"""
    return [lam for lam in range(1, modulus + 1) if math.gcd(lam, modulus) == 1]


def _by_bracket(values: Sequence[Fraction]) -> List[Tuple[Fraction, Fraction]]:
    return sorted(((v, bracket(v)) for v in values), key=lambda item: (item[1], item[0]))


def interlacing_failure(top: Sequence[Fraction], bottom: Sequence[Fraction]) -> Optional[str]:
    """回傳第一個違反嚴格交錯的描述；交錯成立時回傳 None"""
    if len(top) != len(bottom):
        return f"size mismatch: {len(top)} top vs {len(bottom)} bottom parameters"
    a = [b for _, b in _by_bracket(top)]
    b = [b for _, b in _by_bracket(bottom)]
    chain = []
    for i in range(len(a)):
        chain.append(("a", i + 1, a[i]))
        chain.append(("b", i + 1, b[i]))
    for (n1, i1, v1), (n2, i2, v2) in zip(chain, chain[1:]):
        if not v1 < v2:
            return (
                f"<{n1}{i1}> = {format_rational(v1)} is not below "
                f"<{n2}{i2}> = {format_rational(v2)}"
            )
    return None


def interlaces(top: Sequence[Fraction], bottom: Sequence[Fraction]) -> bool:
    """排序後 ⟨a₁⟩ < ⟨b₁⟩ < ⟨a₂⟩ < ⋯ < ⟨a_p⟩ < ⟨b_p⟩；空集合視為交錯"""
    return interlacing_failure(top, bottom) is None


def _interlacing_lambda(lam: int, top: Tuple[Fraction, ...], bottom: Tuple[Fraction, ...]) -> LambdaReport:
    scaled_top = [lam * v for v in top]
    scaled_bottom = [lam * v for v in bottom]
    witness = interlacing_failure(scaled_top, scaled_bottom)
    return LambdaReport(
        lam,
        tuple(_by_bracket(scaled_top)),
        tuple(_by_bracket(scaled_bottom)),
        witness is None,
        witness,
    )


def _sweep(worker, lambdas: List[int], parallel: bool, workers: Optional[int]) -> Tuple[LambdaReport, ...]:
    if parallel and len(lambdas) > 1:
        with ThreadPoolExecutor(max_workers=workers or LAMBDA_SWEEP_WORKERS) as pool:
            return tuple(pool.map(worker, lambdas))
    return tuple(worker(lam) for lam in lambdas)


def ic_check(
    c_params: Sequence[Fraction],
    d_params: Sequence[Fraction],
    parallel: bool = False,
    workers: Optional[int] = None,
) -> CriterionReport:
    """對每個與 N 互質的 λ 檢查 λC 與 λD 是否交錯"""
    top = tuple(Fraction(v) for v in c_params)
    bottom = tuple(Fraction(v) for v in d_params)
    modulus = lcm_of_denominators(top + bottom)
    lambdas = units_modulo(modulus)
    logger.debug("interlacing sweep over %d residues modulo %d", len(lambdas), modulus)

    reports = _sweep(partial(_interlacing_lambda, top=top, bottom=bottom), lambdas, parallel, workers)
    if len(top) != len(bottom):
        failure = FAILURE_SIZE_MISMATCH
    elif all(r.satisfied for r in reports):
        failure = None
    else:
        failure = FAILURE_INTERLACING
        bad = next(r for r in reports if not r.satisfied)
        logger.debug("interlacing fails at lambda=%d: %s", bad.lam, bad.failure_witness)
    return CriterionReport(CRITERION_INTERLACING, modulus, top, bottom, reports, failure is None, failure)


def _prec_sorted(values: Sequence[Fraction]) -> List[Tuple[Fraction, Fraction]]:
    """依 ⪯ 排序：括號遞增，括號相同時較大者在前"""
    return sorted(((v, bracket(v)) for v in values), key=lambda item: (item[1], -item[0]))


def _christol_lambda(lam: int, top: Tuple[Fraction, ...], bottom: Tuple[Fraction, ...]) -> LambdaReport:
    scaled_top = [lam * v for v in top]
    scaled_bottom = [lam * v for v in bottom]
    witness = None
    for k, target in enumerate(scaled_bottom, start=1):
        above = sum(1 for a in scaled_top if prec_le(a, target))
        below = sum(1 for b in scaled_bottom if prec_le(b, target))
        if above - below < 0:
            witness = (
                f"k={k} (lambda*b={format_rational(target)}): "
                f"{above} - {below} = {above - below}"
            )
            break
    return LambdaReport(
        lam,
        tuple(_prec_sorted(scaled_top)),
        tuple(_prec_sorted(scaled_bottom)),
        witness is None,
        witness,
    )


def christol_globally_bounded(
    a_params: Sequence[Fraction],
    b_params: Sequence[Fraction],
    parallel: bool = False,
    workers: Optional[int] = None,
) -> CriterionReport:
    """
    F 形式參數（p = q + 1）的全域有界判準

    內部補上 b_p = 1，並對每個 λ 與 k 檢查
    #{j : λa_j ⪯ λb_k} − #{j : λb_j ⪯ λb_k} ≥ 0。
    """
    top = tuple(Fraction(v) for v in a_params)
    bottom = tuple(Fraction(v) for v in b_params) + (Fraction(1),)
    offending = [v for v in top + bottom if is_negative_natural(v)]
    if offending:
        raise InvalidParameter(
            f"parameters in -N are outside the counting criterion: {format_rational(offending[0])}"
        )
    modulus = lcm_of_denominators(top + bottom)
    if len(top) != len(bottom):
        report = LambdaReport(1, tuple(_prec_sorted(top)), tuple(_prec_sorted(bottom)), False,
                              f"size mismatch: p={len(top)} but q+1={len(bottom)}")
        return CriterionReport(CRITERION_CHRISTOL, modulus, top, bottom, (report,), False,
                               FAILURE_SIZE_MISMATCH)

    reports = _sweep(partial(_christol_lambda, top=top, bottom=bottom),
                     units_modulo(modulus), parallel, workers)
    satisfied = all(r.satisfied for r in reports)
    return CriterionReport(CRITERION_CHRISTOL, modulus, top, bottom, reports, satisfied,
                           None if satisfied else FAILURE_COUNT)
