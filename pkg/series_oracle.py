#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
級數驗證預言模組
================

與分類器無關的桌上型驗證工具：

1. 以一階遞迴精確展開級數係數
2. 係數分母的質因數掃描與 Eisenstein 常數（有限深度的必要條件）
3. 以精確線性代數猜測零化多項式 P(x, y)，P(x, f(x)) = 0
4. 超幾何微分算子（或多項式對遞迴）的殘差檢查

猜測結果只是證據，不是證明；分類結果永遠以決策流程為準。
"""

import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

import sympy
from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from config_params import GUARD_TERMS
from contraction import has_rational_parameters
from exact_core import PolyQ, lcm_of_denominators
from hypergeom_params import HypergeomSpec, IllDefined, cancel_common

logger = logging.getLogger(__name__)

# 模 p 秩檢查用的大質數 2^61 − 1
_RANK_PRIME = 2305843009213693951


class InsufficientTerms(ValueError):
    """級數項數不足以建立帶保護項的線性系統"""


@dataclass(frozen=True)
class SeriesPrefix:
    coefficients: Tuple[Fraction, ...]
    spec: Optional[HypergeomSpec] = None

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, index):
        return self.coefficients[index]

    def perturbed(self, index: int, delta) -> "SeriesPrefix":
        """回傳第 index 項加上 delta 的副本（負面對照用）"""
        coeffs = list(self.coefficients)
        coeffs[index] += Fraction(delta)
        return replace(self, coefficients=tuple(coeffs))


def coefficients(spec: HypergeomSpec, m: int) -> SeriesPrefix:
    """u_0 … u_{m−1}，由 u_{n+1} = scale·C(n)/D(n)·u_n 逐項計算"""
    canonical = cancel_common(spec)
    out: List[Fraction] = []
    u = canonical.leading_value
    for n in range(m):
        out.append(u)
        if u == 0:
            continue
        c_val = canonical.c_poly(n)
        if c_val == 0:
            u = Fraction(0)
            continue
        d_val = canonical.d_poly(n)
        if d_val == 0:
            raise IllDefined(f"denominator vanishes at n={n} before the series truncates")
        u = u * canonical.scale * c_val / d_val
    return SeriesPrefix(tuple(out), spec)


# ===== 分母掃描 =====

def denominator_primes(prefix: SeriesPrefix) -> Set[int]:
    primes: Set[int] = set()
    for u in prefix.coefficients:
        if u.denominator > 1:
            primes.update(int(p) for p in sympy.primefactors(u.denominator))
    return primes


def eisenstein_constant(prefix: SeriesPrefix) -> int:
    """
    最小正整數 M，使得所有涵蓋的 n ≥ 1 都有 M^n·u_n ∈ ℤ

    每個質數 p 取 max_n ⌈v_p(den u_n) / n⌉ 次方。
    """
    exponents: Dict[int, int] = {}
    for n, u in enumerate(prefix.coefficients):
        if n == 0 or u.denominator == 1:
            continue
        for p in sympy.primefactors(u.denominator):
            need = -(-int(sympy.multiplicity(p, u.denominator)) // n)
            exponents[int(p)] = max(exponents.get(int(p), 0), need)
    result = 1
    for p, e in exponents.items():
        result *= p ** e
    return result


# ===== 零化多項式猜測 =====

@dataclass(frozen=True)
class BivariatePolyQ:
    """係數格 grid[j][i] 對應單項式 x^i·y^j，存成本原整數形式"""

    grid: Tuple[Tuple[Fraction, ...], ...]

    @property
    def dx(self) -> int:
        return max((len(row) - 1 for row in self.grid), default=0)

    @property
    def dy(self) -> int:
        return len(self.grid) - 1

    def row(self, j: int) -> PolyQ:
        return PolyQ(self.grid[j])

    def evaluate_series(self, series: Sequence[Fraction]) -> List[Fraction]:
        """P(x, f(x)) mod x^len 的係數"""
        length = len(series)
        residual = [Fraction(0)] * length
        power = [Fraction(1)] + [Fraction(0)] * (length - 1)
        for j, row in enumerate(self.grid):
            if j > 0:
                power = _truncated_product(power, series, length)
            for i, coeff in enumerate(row):
                if coeff == 0:
                    continue
                for n in range(i, length):
                    residual[n] += coeff * power[n - i]
        return residual

    def __str__(self) -> str:
        terms = []
        for j in range(self.dy, -1, -1):
            row = self.row(j)
            if row.is_zero:
                continue
            text = row.format("x")
            mono = "" if j == 0 else ("y" if j == 1 else f"y^{j}")
            if not mono:
                terms.append(text if len([c for c in row.coeffs if c]) == 1 else f"({text})")
            elif text == "1":
                terms.append(mono)
            elif text == "-1":
                terms.append(f"-{mono}")
            elif len([c for c in row.coeffs if c]) == 1:
                terms.append(f"{text}*{mono}")
            else:
                terms.append(f"({text})*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _truncated_product(a: Sequence[Fraction], b: Sequence[Fraction], length: int) -> List[Fraction]:
    out = [Fraction(0)] * length
    for i, x in enumerate(a[:length]):
        if x == 0:
            continue
        for j in range(length - i):
            if b[j]:
                out[i + j] += x * b[j]
    return out


def _normalize(vector: List[Fraction], dx: int, dy: int) -> BivariatePolyQ:
    """本原整數化；最高 y 次列的最低非零係數取正號"""
    den = lcm_of_denominators(v for v in vector if v)
    ints = [int(v * den) for v in vector]
    g = math.gcd(*[abs(v) for v in ints if v]) or 1
    rows = [ints[j * (dx + 1):(j + 1) * (dx + 1)] for j in range(dy + 1)]
    while rows and not any(rows[-1]):
        rows.pop()
    lead = next(v for v in rows[-1] if v)
    sign = 1 if lead > 0 else -1
    grid = tuple(tuple(Fraction(sign * v // g) for v in row) for row in rows)
    return BivariatePolyQ(grid)


def _full_rank_mod_p(rows: List[List[Fraction]], ncols: int) -> bool:
    """模大質數的秩等於欄數時，有理數上的核必為零"""
    field = GF(_RANK_PRIME)
    converted = []
    for row in rows:
        entries = []
        for v in row:
            if v.denominator % _RANK_PRIME == 0:
                return False
            entries.append(field(v.numerator * pow(v.denominator, -1, _RANK_PRIME) % _RANK_PRIME))
        converted.append(entries)
    matrix = DomainMatrix(converted, (len(rows), ncols), field)
    return matrix.rank() == ncols


def _rational_nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    matrix = DomainMatrix(
        [[QQ(v.numerator, v.denominator) for v in row] for row in rows],
        (len(rows), ncols),
        QQ,
    )
    basis = matrix.nullspace().to_list()
    result = []
    for vec in basis:
        converted = [QQ.to_sympy(e) for e in vec]
        result.append([Fraction(int(e.p), int(e.q)) for e in converted])
    return result


def guess_annihilator(
    prefix: SeriesPrefix,
    dx: int,
    dy: int,
    guard: int = GUARD_TERMS,
) -> Optional[BivariatePolyQ]:
    """
    在雙次數 ≤ (dx, dy) 內找 P(x, f) ≡ 0 mod x^len

    依 y 次數由小到大嘗試。零空間只用前 len − guard 個方程求出，
    最後 guard 項保留作為驗證，候選必須對全部項數成立。
    找不到時回傳 None（只表示此界限內沒有，不代表超越）。
    """
    if guard < GUARD_TERMS:
        raise ValueError(f"guard must be at least {GUARD_TERMS}")
    length = len(prefix)
    needed = (dx + 1) * (dy + 1) + guard
    if length < needed:
        raise InsufficientTerms(f"need at least {needed} terms for bidegree ({dx}, {dy}), got {length}")

    series = list(prefix.coefficients)
    fit = length - guard
    powers = [[Fraction(1)] + [Fraction(0)] * (length - 1)]

    def system(xdeg: int, ydeg: int) -> List[List[Fraction]]:
        return [
            [powers[j][n - i] if n >= i else Fraction(0) for j in range(ydeg + 1) for i in range(xdeg + 1)]
            for n in range(fit)
        ]

    for ydeg in range(1, dy + 1):
        powers.append(_truncated_product(powers[-1], series, length))
        if _full_rank_mod_p(system(dx, ydeg), (ydeg + 1) * (dx + 1)):
            continue
        # 找到最小 y 次數後，再找最小 x 次數
        for xdeg in range(dx + 1):
            ncols = (ydeg + 1) * (xdeg + 1)
            rows = system(xdeg, ydeg)
            if xdeg < dx and _full_rank_mod_p(rows, ncols):
                continue
            kernel = _rational_nullspace(rows, ncols)
            logger.debug("bidegree (%d, %d): kernel dimension %d", xdeg, ydeg, len(kernel))
            if not kernel:
                continue
            candidate = _normalize(kernel[0], xdeg, ydeg)
            if any(candidate.evaluate_series(series)):
                logger.warning("rejected spurious annihilator at bidegree (%d, %d)", xdeg, ydeg)
                continue
            return candidate
    return None


# ===== 微分算子殘差 =====

def _theta_product(series: Sequence[Fraction], shifts: Sequence[Fraction]) -> List[Fraction]:
    """∏(θ + s) 作用在級數上：第 n 項乘以 ∏(n + s)"""
    out = []
    for n, u in enumerate(series):
        factor = Fraction(1)
        for s in shifts:
            factor *= n + s
        out.append(factor * u)
    return out


def recurrence_residual(spec: HypergeomSpec, prefix: SeriesPrefix) -> List[Fraction]:
    """u_{n+1}·D(n) − scale·C(n)·u_n，n = 0 … len−2"""
    canonical = cancel_common(spec)
    u = prefix.coefficients
    return [
        u[n + 1] * canonical.d_poly(n) - canonical.scale * canonical.c_poly(n) * u[n]
        for n in range(len(u) - 1)
    ]


def ode_residual(spec: HypergeomSpec, m: int, prefix: Optional[SeriesPrefix] = None) -> List[Fraction]:
    """
    θ∏(θ + b_k − 1)F − x·scale·∏(θ + a_j)F 在截斷級數上的係數（n = 0 … m−1）

    a = C 的參數加上 1，b = D 的參數（F 形式）。參數非有理時改用多項式對遞迴殘差。
    """
    canonical = cancel_common(spec)
    prefix = prefix if prefix is not None else coefficients(spec, m)
    params = has_rational_parameters(canonical.pair)
    if params is None:
        logger.info("irrational parameters: checking the polynomial-pair recurrence instead")
        return recurrence_residual(spec, prefix)

    c_params, d_params = params
    a_params = list(c_params) + [Fraction(1)]
    series = list(prefix.coefficients[:m])
    lhs = _theta_product(series, [Fraction(0)] + [b - 1 for b in d_params])
    inner = _theta_product(series, a_params)
    rhs = [Fraction(0)] + [canonical.scale * v for v in inner[:-1]]
    return [l - r for l, r in zip(lhs, rhs)]
