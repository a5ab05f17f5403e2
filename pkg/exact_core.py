#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
精確運算核心模組
================

所有分類步驟共用的精確算術基礎：

1. 有理數（fractions.Fraction，永遠是最簡分數且分母為正）
2. 括號函數 ⟨x⟩ 與 ⪯ 全序
3. 有理係數單變數多項式 PolyQ（gcd、平移、有理根、Cauchy 根界）

多項式的 gcd、平移與有理根委託給 sympy 的 Poly（domain=QQ），
本模組只負責把結果轉回不可變的 PolyQ。
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import sympy
from sympy import QQ, Poly

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_T = sympy.Symbol("t")


def to_rational(value: RationalLike) -> Fraction:
    """
    將整數、Fraction 或 "p/q" 字串轉為精確有理數

    浮點數一律拒絕，避免二進位誤差悄悄進入精確計算。
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational literals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if any(ch in text for ch in ".eE"):
            raise ValueError(f"floating-point literal not allowed: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(value: Fraction) -> str:
    """以 "num/den" 形式輸出；整數只輸出分子"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_integer(value: Fraction) -> bool:
    return value.denominator == 1


def is_negative_natural(value: Fraction) -> bool:
    """value ∈ −ℕ（ℕ 含 0）"""
    return value.denominator == 1 and value <= 0


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    """所有參數分母的最小公倍數；整數貢獻 1，空集合得 1"""
    return reduce(lambda acc, v: acc * v.denominator // math.gcd(acc, v.denominator), values, 1)


# ===== 括號函數與 ⪯ 全序 =====

def bracket(x: Fraction) -> Fraction:
    """
    ⟨x⟩：整數映到 1，其餘為小數部分 x − ⌊x⌋

    結果恆落在 (0, 1]。
    """
    x = Fraction(x)
    frac = x - math.floor(x)
    return Fraction(1) if frac == 0 else frac


class Ordering(Enum):
    BEFORE = "before"
    EQUAL = "equal"
    AFTER = "after"


def prec_compare(a: Fraction, b: Fraction) -> Ordering:
    """a ⪯ b：先比 ⟨·⟩，括號相同時較大的實數排在前面"""
    if a == b:
        return Ordering.EQUAL
    ba, bb = bracket(a), bracket(b)
    if ba < bb or (ba == bb and a > b):
        return Ordering.BEFORE
    return Ordering.AFTER


def prec_le(a: Fraction, b: Fraction) -> bool:
    """自反版本的 ⪯"""
    return prec_compare(a, b) is not Ordering.AFTER


# ===== 有理係數多項式 =====

@dataclass(frozen=True)
class PolyQ:
    """
    有理係數單變數多項式，係數由低次到高次排列

    零多項式以空 tuple 表示；其餘情況最高次係數不為零。
    """

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        trimmed = [Fraction(c) for c in self.coeffs]
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(trimmed))

    # ----- 建構 -----

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[RationalLike]) -> "PolyQ":
        return cls(tuple(to_rational(c) for c in coeffs))

    @classmethod
    def constant(cls, value: RationalLike) -> "PolyQ":
        return cls((to_rational(value),))

    @classmethod
    def one(cls) -> "PolyQ":
        return cls((Fraction(1),))

    @classmethod
    def variable(cls) -> "PolyQ":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def from_parameters(cls, params: Iterable[Fraction]) -> "PolyQ":
        """∏(t + a)；參數 a 對應根 −a"""
        result = cls.one()
        for a in params:
            result = result * cls((Fraction(a), Fraction(1)))
        return result

    @classmethod
    def from_sympy(cls, poly: Poly) -> "PolyQ":
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        return cls(tuple(coeffs))

    def to_sympy(self) -> Poly:
        coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)] or [0]
        return Poly(coeffs, _T, domain=QQ)

    # ----- 基本屬性 -----

    @property
    def degree(self) -> int:
        """零多項式的次數定為 −1"""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "PolyQ":
        if self.is_zero:
            return self
        lead = self.leading_coefficient
        return PolyQ(tuple(c / lead for c in self.coeffs))

    def primitive_integer_coefficients(self) -> List[int]:
        """同號倍數下的本原整數係數（最高次係數為正）"""
        if self.is_zero:
            return []
        den = lcm_of_denominators(self.coeffs)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints)
        sign = 1 if ints[-1] > 0 else -1
        return [sign * v // g for v in ints]

    # ----- 算術 -----

    def __add__(self, other: "PolyQ") -> "PolyQ":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return PolyQ(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "PolyQ":
        return PolyQ(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return self + (-other)

    def __mul__(self, other: Union["PolyQ", Fraction, int]) -> "PolyQ":
        if not isinstance(other, PolyQ):
            return PolyQ(tuple(c * other for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "PolyQ":
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = PolyQ.one()
        for _ in range(exponent):
            result = result * self
        return result

    def divmod(self, other: "PolyQ") -> Tuple["PolyQ", "PolyQ"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coeffs)
        quotient = [Fraction(0)] * max(len(remainder) - len(other.coeffs) + 1, 0)
        lead = other.leading_coefficient
        for shift in range(len(quotient) - 1, -1, -1):
            factor = remainder[shift + other.degree] / lead
            quotient[shift] = factor
            if factor:
                for j, c in enumerate(other.coeffs):
                    remainder[shift + j] -= factor * c
        return PolyQ(tuple(quotient)), PolyQ(tuple(remainder))

    def exact_div(self, other: "PolyQ") -> "PolyQ":
        quotient, remainder = self.divmod(other)
        if not remainder.is_zero:
            raise ValueError(f"{other} does not divide {self}")
        return quotient

    def __call__(self, x: RationalLike) -> Fraction:
        """Horner 求值"""
        x = to_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def affine(self, a: RationalLike, b: RationalLike) -> "PolyQ":
        """回傳 P(a·t + b)"""
        inner = PolyQ((to_rational(b), to_rational(a)))
        acc = PolyQ()
        for c in reversed(self.coeffs):
            acc = acc * inner + PolyQ((c,))
        return acc

    def shift(self, n: int) -> "PolyQ":
        return poly_shift(self, n)

    def derivative(self) -> "PolyQ":
        return PolyQ(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    # ----- 輸出 -----

    def format(self, var: str = "t") -> str:
        """人類可讀且可被解析器讀回的字串，例如 "t^2 + 2*t - 1" """
        if self.is_zero:
            return "0"
        parts: List[str] = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if power == 0:
                body = format_rational(mag)
            else:
                mono = var if power == 1 else f"{var}^{power}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if sign == "-" else body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()


def poly_gcd(p: PolyQ, q: PolyQ) -> PolyQ:
    """首一最大公因式；兩者不可同時為零"""
    if p.is_zero and q.is_zero:
        raise ValueError("gcd of two zero polynomials is undefined")
    return PolyQ.from_sympy(p.to_sympy().gcd(q.to_sympy())).monic()


def poly_shift(p: PolyQ, n: int) -> PolyQ:
    """回傳 P(t + n)"""
    if n == 0 or p.is_constant:
        return p
    return PolyQ.from_sympy(p.to_sympy().shift(int(n)))


def rational_root_multiplicities(p: PolyQ) -> Dict[Fraction, int]:
    if p.is_zero:
        raise ValueError("rational roots of the zero polynomial are undefined")
    if p.is_constant:
        return {}
    roots = p.to_sympy().ground_roots()
    return {Fraction(int(r.p), int(r.q)): int(m) for r, m in roots.items()}


def rational_roots(p: PolyQ) -> List[Fraction]:
    """
    含重數的有理根（遞增排序）

    P 在 ℚ 上完全分解若且唯若回傳長度等於 deg P。
    """
    result: List[Fraction] = []
    for root, mult in sorted(rational_root_multiplicities(p).items()):
        result.extend([root] * mult)
    return result


def rational_root_free_part(p: PolyQ) -> PolyQ:
    """除去所有有理根後的首一餘因式"""
    cofactor = p.monic()
    for root, mult in rational_root_multiplicities(p).items():
        cofactor = cofactor.exact_div(PolyQ((-root, Fraction(1))) ** mult)
    return cofactor


def cauchy_bound(p: PolyQ) -> Fraction:
    """Cauchy 根界 1 + max|a_i|/|lead|；常數多項式得 1"""
    if p.is_zero:
        raise ValueError("root bound of the zero polynomial is undefined")
    lead = abs(p.leading_coefficient)
    lower = [abs(c) for c in p.coeffs[:-1]]
    return 1 + (max(lower) / lead if lower else Fraction(0))


def shift_search_bound(p: PolyQ, q: PolyQ) -> int:
    """
    ⌈B(P) + B(Q)⌉

    任何使 P(t) 與 Q(t+n) 有公根的整數 n 都滿足 |n| ≤ 此界。
    """
    return math.ceil(cauchy_bound(p) + cauchy_bound(q))


def is_squarefree(p: PolyQ) -> bool:
    if p.is_constant:
        return True
    return poly_gcd(p, p.derivative()).is_constant


def count_real_roots(p: PolyQ, lo: Union[Fraction, None] = None, hi: Union[Fraction, None] = None) -> int:
    """閉區間 [lo, hi] 內的實根個數（不計重數）；端點為 None 代表無界"""
    sym = p.to_sympy()
    inf = None if lo is None else sympy.Rational(lo.numerator, lo.denominator)
    sup = None if hi is None else sympy.Rational(hi.numerator, hi.denominator)
    return int(sym.count_roots(inf, sup))
