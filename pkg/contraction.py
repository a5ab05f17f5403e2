#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
收縮與約化模組
==============

在因式對 (C, D) 上做精確改寫：

- 收縮：依差值 n = 0, 1, 2, … 遞增，移除所有 c − d = n 的參數對
- 約化：收縮後再移除所有 d − c ∈ ℕ 的參數對
- 結構判斷：是否已收縮、是否已約化、參數是否全為有理數、次數是否平衡

同一差值的參數對以 gcd(C(t), D(t+n)) 一次整批移除。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from exact_core import (
    PolyQ,
    poly_gcd,
    rational_root_free_part,
    rational_roots,
    shift_search_bound,
)
from hypergeom_params import FactorPair

logger = logging.getLogger(__name__)

CONTRACTION = "contraction"
REDUCTION = "reduction"


@dataclass(frozen=True)
class RemovalStep:
    """
    一次整批移除

    removed_factor 是從 C 取出的首一因式；D 端對應的因式是它平移 −difference
    （收縮）或 +difference（約化）後的結果。
    """

    difference: int
    removed_factor: PolyQ
    pairs_removed: int
    kind: str = CONTRACTION

    @property
    def d_factor(self) -> PolyQ:
        offset = -self.difference if self.kind == CONTRACTION else self.difference
        return self.removed_factor.shift(offset)


def _split_rational(poly: PolyQ) -> Tuple[List[Fraction], PolyQ]:
    """回傳（有理參數值, 無有理根的餘因式）"""
    if poly.is_constant:
        return [], PolyQ.one()
    params = [-root for root in rational_roots(poly)]
    return params, rational_root_free_part(poly)


def integer_difference_candidates(pair: FactorPair) -> List[int]:
    """
    所有可能的整數差 c − d（遞增）

    有理參數之間直接相減；無理部分只可能與無理部分相差整數，
    以兩個餘因式的 shift_search_bound 界住搜尋範圍。
    """
    c_params, c_irr = _split_rational(pair.c_poly)
    d_params, d_irr = _split_rational(pair.d_poly)
    diffs = {int(c - d) for c in c_params for d in d_params if (c - d).denominator == 1}
    if not c_irr.is_constant and not d_irr.is_constant:
        bound = shift_search_bound(c_irr, d_irr)
        diffs.update(range(-bound, bound + 1))
    return sorted(diffs)


def contract(pair: FactorPair) -> Tuple[FactorPair, List[RemovalStep]]:
    c_poly, d_poly = pair.c_poly, pair.d_poly
    steps: List[RemovalStep] = []
    for n in integer_difference_candidates(pair):
        if n < 0:
            continue
        g = poly_gcd(c_poly, d_poly.shift(n))
        if g.is_constant:
            continue
        c_poly = c_poly.exact_div(g)
        d_poly = d_poly.exact_div(g.shift(-n))
        steps.append(RemovalStep(n, g, g.degree, CONTRACTION))
        logger.debug("contraction at difference %d removed %s", n, g)
    return FactorPair(c_poly, d_poly), steps


def reduce_full(pair: FactorPair) -> Tuple[FactorPair, List[RemovalStep]]:
    """先收縮，再移除 d − c ∈ ℕ 的參數對"""
    contracted, steps = contract(pair)
    c_poly, d_poly = contracted.c_poly, contracted.d_poly
    for n in integer_difference_candidates(contracted):
        if n >= 0:
            continue
        diff = -n
        g = poly_gcd(d_poly, c_poly.shift(diff))
        if g.is_constant:
            continue
        c_factor = g.shift(-diff)
        c_poly = c_poly.exact_div(c_factor)
        d_poly = d_poly.exact_div(g)
        steps.append(RemovalStep(diff, c_factor, g.degree, REDUCTION))
        logger.debug("reduction at difference %d removed %s", diff, c_factor)
    return FactorPair(c_poly, d_poly), steps


def _has_common_shift(pair: FactorPair, negative: bool) -> bool:
    for n in integer_difference_candidates(pair):
        if n < 0 and not negative:
            continue
        if n >= 0 and negative:
            continue
        if not poly_gcd(pair.c_poly, pair.d_poly.shift(n)).is_constant:
            return True
    return False


def is_contracted(pair: FactorPair) -> bool:
    """沒有任何 c − d ∈ ℕ"""
    return not _has_common_shift(pair, negative=False)


def is_reduced(pair: FactorPair) -> bool:
    """沒有任何 c − d ∈ ℤ"""
    return is_contracted(pair) and not _has_common_shift(pair, negative=True)


def has_rational_parameters(pair: FactorPair) -> Optional[Tuple[List[Fraction], List[Fraction]]]:
    """C 與 D 皆在 ℚ 上完全分解時回傳兩組參數（遞增），否則 None"""
    c_params, c_irr = _split_rational(pair.c_poly)
    d_params, d_irr = _split_rational(pair.d_poly)
    if not c_irr.is_constant or not d_irr.is_constant:
        return None
    return sorted(c_params), sorted(d_params)


def degree_balanced(pair: FactorPair) -> bool:
    return pair.c_poly.degree == pair.d_poly.degree
