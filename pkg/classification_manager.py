#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
分類決策模組
============

完整的判定流程（依序）：

1. PolynomialCheck       : 有自然數截斷 → 多項式
2. DegreeBalance         : deg C ≠ deg D → 超越（整函數或收斂半徑為 0）
3. ContractionRationality: 收縮後的參數不全為有理數 → 超越
4. Reducedness           : 收縮後仍有整數差 → 超越
5. InterlacingCriterion  : 交錯判準成立 ↔ 代數

另外提供退化 ₂F₁ 的兩張情況表、微分後的規格，以及帶快取的管理器。
"""

import logging
import threading
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from contraction import (
    RemovalStep,
    contract,
    degree_balanced,
    has_rational_parameters,
    is_contracted,
    is_reduced,
    reduce_full,
)
from exact_core import PolyQ, format_rational, is_integer, is_negative_natural, to_rational
from hypergeom_params import (
    FactorPair,
    HypergeomSpec,
    IllDefined,
    assemble,
    cancel_common,
    check_defined,
    natural_roots,
    truncation_degree,
)
from interlacing_criteria import CriterionReport, ic_check

logger = logging.getLogger(__name__)

NODE_POLYNOMIAL = "PolynomialCheck"
NODE_DEGREE = "DegreeBalance"
NODE_RATIONALITY = "ContractionRationality"
NODE_REDUCEDNESS = "Reducedness"
NODE_INTERLACING = "InterlacingCriterion"
NODE_ORDER = (NODE_POLYNOMIAL, NODE_DEGREE, NODE_RATIONALITY, NODE_REDUCEDNESS, NODE_INTERLACING)


class VerdictKind(Enum):
    POLYNOMIAL = "polynomial"
    ALGEBRAIC = "algebraic"
    TRANSCENDENTAL = "transcendental"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    degree_bound: Optional[int] = None

    @classmethod
    def polynomial(cls, degree_bound: int) -> "Verdict":
        return cls(VerdictKind.POLYNOMIAL, degree_bound)

    @classmethod
    def algebraic(cls) -> "Verdict":
        return cls(VerdictKind.ALGEBRAIC)

    @classmethod
    def transcendental(cls) -> "Verdict":
        return cls(VerdictKind.TRANSCENDENTAL)

    @property
    def is_algebraic(self) -> bool:
        """多項式也算代數函數"""
        return self.kind is not VerdictKind.TRANSCENDENTAL

    @property
    def label(self) -> str:
        if self.kind is VerdictKind.POLYNOMIAL:
            return f"POLYNOMIAL(deg<{self.degree_bound})"
        return self.kind.value.upper()

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class DecisionNode:
    name: str
    outcome: bool
    payload: Dict[str, Any]
    terminal: bool = False


@dataclass
class ClassificationTrace:
    spec: HypergeomSpec
    canonical_pair: FactorPair
    nodes: List[DecisionNode] = field(default_factory=list)
    contraction_steps: List[RemovalStep] = field(default_factory=list)
    contracted_pair: Optional[FactorPair] = None
    ic_report: Optional[CriterionReport] = None
    verdict: Optional[Verdict] = None
    raw_contracted: bool = False
    raw_reduced: bool = False
    tolerated_poles: Tuple[int, ...] = ()

    def node(self, name: str) -> Optional[DecisionNode]:
        return next((n for n in self.nodes if n.name == name), None)

    @property
    def terminal_node(self) -> DecisionNode:
        return self.nodes[-1]

    def _finish(self, name: str, outcome: bool, payload: Dict[str, Any], verdict: Verdict) -> "ClassificationTrace":
        self.nodes.append(DecisionNode(name, outcome, payload, terminal=True))
        self.verdict = verdict
        logger.debug("verdict %s decided at %s", verdict.label, name)
        return self

    def _pass(self, name: str, outcome: bool, payload: Dict[str, Any]):
        self.nodes.append(DecisionNode(name, outcome, payload))


def _fmt_list(values) -> List[str]:
    return [format_rational(v) for v in values]


def classify(spec: HypergeomSpec, parallel: bool = False) -> ClassificationTrace:
    """對一個已驗證的規格執行完整判定流程並回傳追蹤紀錄"""
    tolerated = check_defined(spec)
    canonical = cancel_common(spec)
    trace = ClassificationTrace(
        spec=spec,
        canonical_pair=canonical.pair,
        raw_contracted=is_contracted(spec.pair),
        raw_reduced=is_reduced(spec.pair),
        tolerated_poles=tolerated,
    )

    degree = truncation_degree(canonical)
    poly_payload = {
        "truncation_degree": degree,
        "natural_roots_of_c": natural_roots(canonical.c_poly),
        "leading_value": format_rational(spec.leading_value),
        "tolerated_poles": list(tolerated),
        "algebraic": degree is not None,
    }
    if degree is not None:
        return trace._finish(NODE_POLYNOMIAL, True, poly_payload, Verdict.polynomial(degree))
    trace._pass(NODE_POLYNOMIAL, False, poly_payload)

    deg_c, deg_d = canonical.c_poly.degree, canonical.d_poly.degree
    balanced = degree_balanced(canonical.pair)
    if balanced:
        regime = "balanced"
    elif deg_c < deg_d:
        regime = "entire"
    else:
        regime = "zero_radius"
    degree_payload = {"deg_c": deg_c, "deg_d": deg_d, "regime": regime}
    if not balanced:
        return trace._finish(NODE_DEGREE, False, degree_payload, Verdict.transcendental())
    trace._pass(NODE_DEGREE, True, degree_payload)

    contracted, steps = contract(spec.pair)
    trace.contraction_steps = steps
    trace.contracted_pair = contracted
    params = has_rational_parameters(contracted)
    rational_payload = {
        "contracted_c": str(contracted.c_poly),
        "contracted_d": str(contracted.d_poly),
        "removal_steps": len(steps),
        "pairs_removed": sum(s.pairs_removed for s in steps),
        "c_parameters": _fmt_list(params[0]) if params else None,
        "d_parameters": _fmt_list(params[1]) if params else None,
    }
    if params is None:
        return trace._finish(NODE_RATIONALITY, False, rational_payload, Verdict.transcendental())
    trace._pass(NODE_RATIONALITY, True, rational_payload)

    reduced = is_reduced(contracted)
    reduced_pair, reduction_steps = reduce_full(contracted)
    reduced_payload = {
        "raw_contracted": trace.raw_contracted,
        "raw_reduced": trace.raw_reduced,
        "integer_difference_pairs": [
            {"difference": s.difference, "c_factor": str(s.removed_factor)}
            for s in reduction_steps
        ],
        "reduced_c": str(reduced_pair.c_poly),
        "reduced_d": str(reduced_pair.d_poly),
    }
    if not reduced:
        return trace._finish(NODE_REDUCEDNESS, False, reduced_payload, Verdict.transcendental())
    trace._pass(NODE_REDUCEDNESS, True, reduced_payload)

    report = ic_check(params[0], params[1], parallel=parallel)
    trace.ic_report = report
    failing = [r.lam for r in report.per_lambda if not r.satisfied]
    first = report.first_failure()
    ic_payload = {
        "modulus": report.modulus,
        "lambdas": report.lambdas,
        "failing_lambdas": failing,
        "witness": first.failure_witness if first else None,
    }
    verdict = Verdict.algebraic() if report.satisfied else Verdict.transcendental()
    return trace._finish(NODE_INTERLACING, report.satisfied, ic_payload, verdict)


# ===== 退化 ₂F₁ 情況表 =====

def _is_natural(value: Fraction) -> bool:
    return value.denominator == 1 and value >= 0


def _list_gamma_offset(alpha: Fraction, beta: Fraction, k: int) -> bool:
    """₂F₁([α, β], [α + k])，k ∈ ℤ"""
    if k <= 0:
        return True
    alpha_int, beta_int = is_integer(alpha), is_integer(beta)
    if alpha_int and not beta_int:
        return True
    if not alpha_int and is_negative_natural(beta):
        return True
    if not alpha_int and not beta_int and _is_natural(beta - alpha - k):
        return True
    if alpha_int and beta_int and alpha < beta <= 0 and beta - alpha >= k:
        return True
    # 條件 0 < α < β ≤ 0 照字面保留，永遠不成立
    if alpha_int and beta_int and 0 < alpha < beta <= 0:
        return True
    if alpha_int and beta_int and beta <= 0 < alpha:
        return True
    return False


def _list_integer_top(k: int, beta: Fraction, gamma: Fraction) -> bool:
    """₂F₁([k, β], [γ])，k ∈ ℤ"""
    if k <= 0:
        return True
    if not is_negative_natural(beta) and _is_natural(beta - gamma):
        return True
    if is_negative_natural(beta):
        return True
    if is_integer(beta) and is_integer(gamma) and 0 < beta < gamma <= k:
        return True
    if not is_integer(beta) and _is_natural(k - gamma):
        return True
    return False


def gaussian_degenerate_verdict(alpha, beta, gamma) -> Optional[Verdict]:
    """
    退化 ₂F₁（γ − α ∈ ℤ 或 α ∈ ℤ，α ↔ β 對稱）的情況表判定

    所有適用的情況表只要有一張判為代數即為代數（多項式亦歸為代數）。
    非退化或無定義的輸入回傳 None。
    """
    alpha, beta, gamma = to_rational(alpha), to_rational(beta), to_rational(gamma)
    try:
        assemble([alpha, beta], [gamma])
    except IllDefined:
        return None

    evaluations = []
    for a, b in ((alpha, beta), (beta, alpha)):
        if is_integer(gamma - a):
            evaluations.append(_list_gamma_offset(a, b, int(gamma - a)))
        if is_integer(a):
            evaluations.append(_list_integer_top(int(a), b, gamma))
    if not evaluations:
        return None
    return Verdict.algebraic() if any(evaluations) else Verdict.transcendental()


def derivative_spec(spec: HypergeomSpec) -> HypergeomSpec:
    """
    F′(x) 的規格：F 形式參數全部加 1，首項乘上 scale·C(0)/D(0)

    在 𝓕 形式下即 C′(t) = (t+2)·C(t+1)、D′(t) = (t+1)·D(t+1)。
    """
    spec = cancel_common(spec)
    c_new = PolyQ((Fraction(2), Fraction(1))) * spec.c_poly.shift(1)
    d_new = PolyQ((Fraction(1), Fraction(1))) * spec.d_poly.shift(1)
    if spec.leading_value == 0 or spec.c_poly(0) == 0:
        leading = Fraction(0)
    else:
        leading = spec.leading_value * spec.coefficient_ratio(0)
    return cancel_common(HypergeomSpec(c_new, d_new, spec.scale, leading))


# ===== 管理器 =====

class ClassificationManager:
    """分類管理器 - 以正規因式對為鍵快取判定結果"""

    def __init__(self, parallel: bool = False):
        self.parallel = parallel
        self._cache: Dict[Tuple, ClassificationTrace] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    @staticmethod
    def _key(spec: HypergeomSpec) -> Tuple:
        return (spec.c_poly.coeffs, spec.d_poly.coeffs, spec.scale, spec.leading_value)

    def classify(self, spec: HypergeomSpec, parallel: Optional[bool] = None) -> ClassificationTrace:
        """
        快取命中時若輸入來源不同，以呼叫者的規格重建追蹤紀錄

        parallel 未指定時使用管理器的預設值
        """
        key = self._key(spec)
        with self._lock:
            cached = self._cache.get(key)
            if cached is not None:
                self.hits += 1
                if cached.spec.origin == spec.origin:
                    return cached
                return replace(cached, spec=spec)
        trace = classify(spec, parallel=self.parallel if parallel is None else parallel)
        with self._lock:
            self._cache[key] = trace
            self.misses += 1
        return trace

    def verdict(self, spec: HypergeomSpec) -> Verdict:
        return self.classify(spec).verdict

    def clear(self):
        with self._lock:
            self._cache.clear()
            self.hits = self.misses = 0

    def get_statistics(self) -> Dict[str, int]:
        return {"cached": len(self._cache), "hits": self.hits, "misses": self.misses}


_manager: Optional[ClassificationManager] = None


def get_classification_manager() -> ClassificationManager:
    global _manager
    if _manager is None:
        _manager = ClassificationManager()
    return _manager
