#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
超幾何參數模組
==============

負責參數模型、輸入驗證與正規化：

1. 參數三種型態：有理數、實代數單根（最小多項式 + 隔離區間）、共軛根塊
2. 由參數列表組裝 (C, D) 因式對（F 形式會補上 n! 對應的 (t+1)）
3. 由一階遞迴 u_{n+1} = A(n)/B(n)·u_n 建立同一個正規形式
4. 約去公因式、截斷次數與定義性檢查

ℕ 一律包含 0。
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import ClassVar, Dict, List, Optional, Sequence, Tuple, Union

from exact_core import (
    PolyQ,
    RationalLike,
    count_real_roots,
    format_rational,
    is_squarefree,
    poly_gcd,
    rational_root_free_part,
    rational_roots,
    to_rational,
)

logger = logging.getLogger(__name__)

FORM_F = "F"
FORM_SCRIPT_F = "scriptF"
FORM_RECURRENCE = "recurrence"
VALID_FORMS = (FORM_F, FORM_SCRIPT_F, FORM_RECURRENCE)


# ===== 例外 =====

class HypergeomInputError(ValueError):
    """所有輸入驗證錯誤的共同基底"""


class InvalidParameter(HypergeomInputError):
    pass


class ConjugateClosureViolation(HypergeomInputError):
    """參數組合會讓係數成為無理數"""


class NonAlgebraicParameter(HypergeomInputError):
    """參數不是代數數（例如 pi）"""


class IllDefined(HypergeomInputError):
    """某個分母參數落在 −ℕ 且沒有被更早的截斷遮蔽"""


# ===== 參數型態 =====

@dataclass(frozen=True)
class RationalParameter:
    value: Fraction
    kind: ClassVar[str] = "rational"

    def __post_init__(self):
        object.__setattr__(self, "value", to_rational(self.value))

    def affine(self, k: Fraction, r: Fraction) -> "RationalParameter":
        return RationalParameter(k * self.value + r)

    def __str__(self) -> str:
        return format_rational(self.value)


@dataclass(frozen=True)
class RealAlgebraicParameter:
    """
    實代數單根：無平方因子多項式在開區間 (lo, hi) 內唯一的根

    多項式一律存成首一形式。
    """

    minpoly: PolyQ
    lo: Fraction
    hi: Fraction
    kind: ClassVar[str] = "real_algebraic"

    def __post_init__(self):
        lo, hi = to_rational(self.lo), to_rational(self.hi)
        poly = self.minpoly
        if poly.is_constant:
            raise InvalidParameter(f"minimal polynomial must be nonconstant: {poly}")
        if not is_squarefree(poly):
            raise InvalidParameter(f"minimal polynomial must be squarefree: {poly}")
        if not lo < hi:
            raise InvalidParameter(f"empty isolating interval ({lo}, {hi})")
        if poly(lo) == 0 or poly(hi) == 0:
            raise InvalidParameter(f"isolating interval endpoint is a root of {poly}")
        roots_inside = count_real_roots(poly, lo, hi)
        if roots_inside != 1:
            raise InvalidParameter(
                f"interval ({format_rational(lo)}, {format_rational(hi)}) contains "
                f"{roots_inside} roots of {poly}, expected exactly one"
            )
        object.__setattr__(self, "minpoly", poly.monic())
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def rational_value(self) -> Optional[Fraction]:
        for root in rational_roots(self.minpoly):
            if self.lo < root < self.hi:
                return root
        return None

    def affine(self, k: Fraction, r: Fraction) -> "RealAlgebraicParameter":
        """數值 k·ρ + r（k ≠ 0）"""
        poly = self.minpoly.affine(1 / k, -r / k)
        ends = sorted((k * self.lo + r, k * self.hi + r))
        return RealAlgebraicParameter(poly, ends[0], ends[1])

    def __str__(self) -> str:
        return f"root({self.minpoly}, {format_rational(self.lo)}, {format_rational(self.hi)})"


@dataclass(frozen=True)
class RootBlockParameter:
    """多項式的全部根（含重數）一次放進參數列表"""

    poly: PolyQ
    multiplicity: int = 1
    kind: ClassVar[str] = "root_block"

    def __post_init__(self):
        if self.poly.is_constant:
            raise InvalidParameter(f"root block polynomial must be nonconstant: {self.poly}")
        if self.multiplicity < 1:
            raise InvalidParameter(f"root block multiplicity must be positive: {self.multiplicity}")
        object.__setattr__(self, "poly", self.poly.monic())

    @property
    def size(self) -> int:
        return self.poly.degree * self.multiplicity

    def affine(self, k: Fraction, r: Fraction) -> "RootBlockParameter":
        return RootBlockParameter(self.poly.affine(1 / k, -r / k), self.multiplicity)

    def factor(self) -> PolyQ:
        """∏(t + ρ) = poly(−t) 正規化為首一，再取重數次方"""
        return self.poly.affine(-1, 0).monic() ** self.multiplicity

    def __str__(self) -> str:
        if self.multiplicity == 1:
            return f"allroots({self.poly})"
        return f"allroots({self.poly}, {self.multiplicity})"


Parameter = Union[RationalParameter, RealAlgebraicParameter, RootBlockParameter]


def as_parameter(value: Union[Parameter, RationalLike]) -> Parameter:
    if isinstance(value, (RationalParameter, RealAlgebraicParameter, RootBlockParameter)):
        return value
    return RationalParameter(to_rational(value))


def parameter_count(params: Sequence[Parameter]) -> int:
    """參數個數；根塊依次數乘重數計算"""
    return sum(p.size if isinstance(p, RootBlockParameter) else 1 for p in params)


# ===== 正規形式 =====

@dataclass(frozen=True)
class SpecOrigin:
    """使用者原始輸入的紀錄，可重新組裝成完全相同的規格"""

    form: str
    top: Tuple[Parameter, ...] = ()
    bottom: Tuple[Parameter, ...] = ()
    scale: Fraction = Fraction(1)
    u0: Fraction = Fraction(1)
    a_poly: Optional[PolyQ] = None
    b_poly: Optional[PolyQ] = None


@dataclass(frozen=True)
class FactorPair:
    """u_{n+1}/u_n = scale·C(n)/D(n) 的首一多項式對"""

    c_poly: PolyQ
    d_poly: PolyQ

    @classmethod
    def from_parameters(cls, c_params: Sequence[RationalLike], d_params: Sequence[RationalLike]) -> "FactorPair":
        return cls(
            PolyQ.from_parameters(to_rational(c) for c in c_params),
            PolyQ.from_parameters(to_rational(d) for d in d_params),
        )


@dataclass(frozen=True)
class HypergeomSpec:
    c_poly: PolyQ
    d_poly: PolyQ
    scale: Fraction = Fraction(1)
    leading_value: Fraction = Fraction(1)
    origin: Optional[SpecOrigin] = field(default=None, compare=False)

    @property
    def pair(self) -> FactorPair:
        return FactorPair(self.c_poly, self.d_poly)

    def with_pair(self, pair: FactorPair) -> "HypergeomSpec":
        return replace(self, c_poly=pair.c_poly, d_poly=pair.d_poly)

    def coefficient_ratio(self, n: int) -> Fraction:
        return self.scale * self.c_poly(n) / self.d_poly(n)


def _group_singletons(singletons: List[RealAlgebraicParameter]) -> PolyQ:
    """檢查實代數單根的共軛封閉性，回傳它們貢獻的因式"""
    groups: Dict[Tuple[Fraction, ...], List[RealAlgebraicParameter]] = defaultdict(list)
    for param in singletons:
        groups[rational_root_free_part(param.minpoly).coeffs].append(param)

    product = PolyQ.one()
    for coeffs, members in groups.items():
        poly = PolyQ(coeffs)
        degree = poly.degree
        if count_real_roots(poly) != degree:
            raise ConjugateClosureViolation(
                f"{poly} has non-real roots; give its conjugates with allroots({poly})"
            )
        # 以 (−∞, lo] 內的根數當作根的編號
        indices = Counter(count_real_roots(poly, None, p.lo) for p in members)
        counts = set(indices.values())
        if set(indices) != set(range(degree)) or len(counts) != 1:
            raise ConjugateClosureViolation(
                f"real roots of {poly} must all appear with equal multiplicity "
                f"(found {sum(indices.values())} of {degree} conjugates)"
            )
        product = product * poly.affine(-1, 0).monic() ** counts.pop()
    return product


def parameter_polynomial(params: Sequence[Parameter]) -> PolyQ:
    """∏(t + a)；無理參數經共軛封閉驗證後以整塊多項式相乘"""
    product = PolyQ.one()
    singletons: List[RealAlgebraicParameter] = []
    for param in params:
        param = as_parameter(param)
        if isinstance(param, RationalParameter):
            product = product * PolyQ((param.value, Fraction(1)))
        elif isinstance(param, RootBlockParameter):
            product = product * param.factor()
        else:
            value = param.rational_value()
            if value is not None:
                product = product * PolyQ((value, Fraction(1)))
            else:
                singletons.append(param)
    if singletons:
        product = product * _group_singletons(singletons)
    return product


def assemble(
    top: Sequence[Union[Parameter, RationalLike]],
    bottom: Sequence[Union[Parameter, RationalLike]],
    form: str = FORM_F,
    scale: RationalLike = 1,
    u0: RationalLike = 1,
) -> HypergeomSpec:
    """由參數列表組裝規格；F 形式在分母補上 (t+1)"""
    if form not in (FORM_F, FORM_SCRIPT_F):
        raise InvalidParameter(f"unknown parameter form: {form!r}")
    scale, u0 = to_rational(scale), to_rational(u0)
    if scale == 0:
        raise InvalidParameter("argument scale must be nonzero")
    top_params = tuple(as_parameter(p) for p in top)
    bottom_params = tuple(as_parameter(p) for p in bottom)

    c_poly = parameter_polynomial(top_params)
    d_poly = parameter_polynomial(bottom_params)
    if form == FORM_F:
        d_poly = d_poly * PolyQ((Fraction(1), Fraction(1)))

    origin = SpecOrigin(form, top_params, bottom_params, scale, u0)
    spec = HypergeomSpec(c_poly, d_poly, scale, u0, origin)
    check_defined(spec)
    return spec


def from_recurrence(a_poly: PolyQ, b_poly: PolyQ, u0: RationalLike = 1) -> HypergeomSpec:
    """由 B(n)·u_{n+1} = A(n)·u_n 建立規格，scale = lead(A)/lead(B)"""
    if a_poly.is_zero or b_poly.is_zero:
        raise InvalidParameter("recurrence polynomials must be nonzero")
    u0 = to_rational(u0)
    scale = a_poly.leading_coefficient / b_poly.leading_coefficient
    origin = SpecOrigin(FORM_RECURRENCE, scale=scale, u0=u0, a_poly=a_poly, b_poly=b_poly)
    spec = HypergeomSpec(a_poly.monic(), b_poly.monic(), scale, u0, origin)
    check_defined(spec)
    return spec


def reassemble(origin: SpecOrigin) -> HypergeomSpec:
    if origin.form == FORM_RECURRENCE:
        return from_recurrence(origin.a_poly, origin.b_poly, origin.u0)
    return assemble(origin.top, origin.bottom, origin.form, origin.scale, origin.u0)


def cancel_common(spec: HypergeomSpec) -> HypergeomSpec:
    """約去 C 與 D 的公因式（差為 0 的參數對），級數不變"""
    g = poly_gcd(spec.c_poly, spec.d_poly)
    if g.is_constant:
        return spec
    return replace(spec, c_poly=spec.c_poly.exact_div(g), d_poly=spec.d_poly.exact_div(g))


def natural_roots(poly: PolyQ) -> List[int]:
    return sorted({int(r) for r in rational_roots(poly) if r.denominator == 1 and r >= 0})


def truncation_degree(spec: HypergeomSpec) -> Optional[int]:
    """
    最小的 m 使得 n ≥ m 時 u_n = 0

    m = r + 1，r 為 C 最小的自然數根；u0 = 0 時為 0；無截斷回傳 None。
    """
    if spec.leading_value == 0:
        return 0
    spec = cancel_common(spec)
    roots = natural_roots(spec.c_poly)
    return roots[0] + 1 if roots else None


def check_defined(spec: HypergeomSpec) -> Tuple[int, ...]:
    """
    檢查定義性

    回傳被截斷遮蔽而容許的分母自然數根；若有未被遮蔽者則拋出 IllDefined。
    """
    canonical = cancel_common(spec)
    poles = natural_roots(canonical.d_poly)
    if not poles:
        return ()
    if spec.leading_value == 0:
        return tuple(poles)
    c_roots = natural_roots(canonical.c_poly)
    cutoff = c_roots[0] if c_roots else None
    blocking = [s for s in poles if cutoff is None or s < cutoff]
    if blocking:
        raise IllDefined(
            f"denominator vanishes at n={blocking[0]} before the series truncates"
        )
    logger.info("denominator zeros %s are shielded by truncation at n=%s", poles, cutoff)
    return tuple(poles)
