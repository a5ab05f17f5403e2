#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
追蹤報告生成器
==============

把 ClassificationTrace 轉成兩種輸出：

1. JSON 追蹤文件（版本化、欄位順序固定、有理數一律寫成 "num/den" 字串）
2. Markdown 稽核報告（決策表、收縮步驟、λ 交錯表）

JSON 文件可重播：以記錄的正規因式對重新分類，必須得到相同的判定。
"""

import json
import logging
import os
from datetime import datetime
from fractions import Fraction
from typing import Any, Dict, List, Optional

from classification_manager import ClassificationTrace, classify
from config_params import TOOL_VERSION, TRACE_SCHEMA_VERSION
from exact_core import PolyQ, format_rational
from expression_parser import KIND_PFQ, KIND_RECURRENCE, KIND_SCRIPT_F, InputDocument, format_document
from hypergeom_params import FORM_F, FORM_RECURRENCE, HypergeomSpec, SpecOrigin
from interlacing_criteria import CriterionReport
from path_utils import get_result_file_path

logger = logging.getLogger(__name__)


def _coeffs(poly: PolyQ) -> List[str]:
    return [format_rational(c) for c in poly.coeffs]


def _origin_expression(origin: Optional[SpecOrigin]) -> Optional[str]:
    if origin is None:
        return None
    if origin.form == FORM_RECURRENCE:
        doc = InputDocument(KIND_RECURRENCE, u0=origin.u0, a_poly=origin.a_poly, b_poly=origin.b_poly)
    else:
        kind = KIND_PFQ if origin.form == FORM_F else KIND_SCRIPT_F
        doc = InputDocument(kind, origin.top, origin.bottom, origin.scale, origin.u0)
    return format_document(doc)


def criterion_to_document(report: CriterionReport) -> Dict[str, Any]:
    return {
        "criterion": report.criterion,
        "modulus": report.modulus,
        "top": [format_rational(v) for v in report.top],
        "bottom": [format_rational(v) for v in report.bottom],
        "satisfied": report.satisfied,
        "failure_kind": report.failure_kind,
        "per_lambda": [
            {
                "lambda": r.lam,
                "sorted_top": [{"value": format_rational(v), "bracket": format_rational(b)} for v, b in r.sorted_top],
                "sorted_bottom": [{"value": format_rational(v), "bracket": format_rational(b)} for v, b in r.sorted_bottom],
                "satisfied": r.satisfied,
                "failure_witness": r.failure_witness,
            }
            for r in report.per_lambda
        ],
    }


def verdict_to_document(trace: ClassificationTrace) -> Dict[str, Any]:
    verdict = trace.verdict
    return {
        "kind": verdict.kind.value,
        "label": verdict.label,
        "algebraic": verdict.is_algebraic,
        "degree_bound": verdict.degree_bound,
    }


def trace_to_document(trace: ClassificationTrace, oracles: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """ClassificationTrace → 可序列化的 dict（插入順序即輸出順序）"""
    spec = trace.spec
    document: Dict[str, Any] = {
        "schema_version": TRACE_SCHEMA_VERSION,
        "tool": {"name": "hypalg", "version": TOOL_VERSION},
        "input": {
            "form": spec.origin.form if spec.origin else None,
            "expression": _origin_expression(spec.origin),
        },
        "canonical": {
            "c_poly": _coeffs(spec.c_poly),
            "d_poly": _coeffs(spec.d_poly),
            "scale": format_rational(spec.scale),
            "leading_value": format_rational(spec.leading_value),
            "cancelled_c_poly": _coeffs(trace.canonical_pair.c_poly),
            "cancelled_d_poly": _coeffs(trace.canonical_pair.d_poly),
        },
        "raw_contracted": trace.raw_contracted,
        "raw_reduced": trace.raw_reduced,
        "tolerated_poles": list(trace.tolerated_poles),
        "nodes": [
            {"name": n.name, "outcome": n.outcome, "terminal": n.terminal, "payload": n.payload}
            for n in trace.nodes
        ],
        "contraction_steps": [
            {
                "kind": s.kind,
                "difference": s.difference,
                "removed_factor": _coeffs(s.removed_factor),
                "removed_factor_text": str(s.removed_factor),
                "pairs_removed": s.pairs_removed,
            }
            for s in trace.contraction_steps
        ],
        "ic_report": criterion_to_document(trace.ic_report) if trace.ic_report else None,
        "verdict": verdict_to_document(trace),
    }
    if oracles:
        document["oracles"] = oracles
    return document


def emit_trace_json(
    trace: ClassificationTrace,
    path: Optional[str] = None,
    oracles: Optional[Dict[str, Any]] = None,
) -> str:
    """序列化追蹤文件；給定 path 時同時寫檔"""
    text = json.dumps(trace_to_document(trace, oracles), ensure_ascii=False, indent=2) + "\n"
    if path:
        target = get_result_file_path(path)
        with open(target, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info("trace written to %s", target)
    return text


def replay_trace_document(document: Dict[str, Any]) -> bool:
    """以記錄的正規因式對重新分類，判定序列化結果必須逐位元組相同"""
    canonical = document["canonical"]
    spec = HypergeomSpec(
        PolyQ.from_coefficients(canonical["c_poly"]),
        PolyQ.from_coefficients(canonical["d_poly"]),
        Fraction(canonical["scale"]),
        Fraction(canonical["leading_value"]),
    )
    replayed = verdict_to_document(classify(spec))
    return json.dumps(replayed, sort_keys=True) == json.dumps(document["verdict"], sort_keys=True)


# ===== Markdown 報告 =====

class MDReportGenerator:
    def __init__(self, trace: ClassificationTrace, oracles: Optional[Dict[str, Any]] = None):
        self.trace = trace
        self.oracles = oracles or {}

    def _header(self) -> str:
        timestamp = datetime.now().strftime("%Y年%m月%d日 %H:%M:%S")
        spec = self.trace.spec
        expression = _origin_expression(spec.origin) or "(由因式對直接建立)"
        return f"""# 超幾何級數代數性分類報告

**報告生成時間：** {timestamp}
**工具版本：** hypalg v{TOOL_VERSION}
**輸入：** `{expression}`

---

## 判定結果

- **判定：** **{self.trace.verdict.label}**
- **代數函數：** {'是' if self.trace.verdict.is_algebraic else '否'}
- **決定節點：** {self.trace.terminal_node.name}

## 正規形式

| 項目 | 值 |
|------|----|
| C(t) | `{spec.c_poly}` |
| D(t) | `{spec.d_poly}` |
| 約去公因式後 C(t) | `{self.trace.canonical_pair.c_poly}` |
| 約去公因式後 D(t) | `{self.trace.canonical_pair.d_poly}` |
| 參數倍率 | {format_rational(spec.scale)} |
| 首項 u₀ | {format_rational(spec.leading_value)} |
| 原始形式已收縮 | {'是' if self.trace.raw_contracted else '否'} |
| 原始形式已約化 | {'是' if self.trace.raw_reduced else '否'} |
"""

    def _decision_section(self) -> str:
        md = """
## 決策流程

| 節點 | 結果 | 終止 | 細節 |
|------|:----:|:----:|------|
"""
        for node in self.trace.nodes:
            details = "; ".join(f"{k}={v}" for k, v in node.payload.items())
            md += f"| {node.name} | {'✅' if node.outcome else '❌'} | {'●' if node.terminal else ''} | {details} |\n"
        return md

    def _contraction_section(self) -> str:
        if not self.trace.contraction_steps:
            return ""
        md = """
## 收縮步驟

| 差值 | 移除的 C 因式 | 對應的 D 因式 | 參數對數 |
|:----:|---------------|---------------|:--------:|
"""
        for step in self.trace.contraction_steps:
            md += f"| {step.difference} | `{step.removed_factor}` | `{step.d_factor}` | {step.pairs_removed} |\n"
        return md

    def _lambda_section(self) -> str:
        report = self.trace.ic_report
        if report is None:
            return ""
        md = f"""
## 交錯判準

- **N：** {report.modulus}
- **λ 範圍：** {', '.join(str(lam) for lam in report.lambdas)}

| λ | 分子括號 ⟨λc⟩ | 分母括號 ⟨λd⟩ | 交錯 | 說明 |
|:-:|---------------|---------------|:----:|------|
"""
        for r in report.per_lambda:
            tops = ", ".join(format_rational(b) for _, b in r.sorted_top)
            bottoms = ", ".join(format_rational(b) for _, b in r.sorted_bottom)
            md += f"| {r.lam} | {tops} | {bottoms} | {'✅' if r.satisfied else '❌'} | {r.failure_witness or ''} |\n"
        return md

    def _oracle_section(self) -> str:
        if not self.oracles:
            return ""
        md = "\n## 驗證預言（僅為證據）\n\n"
        for key, value in self.oracles.items():
            md += f"- **{key}：** {value}\n"
        return md

    def generate_report(self) -> str:
        return (
            self._header()
            + self._decision_section()
            + self._contraction_section()
            + self._lambda_section()
            + self._oracle_section()
        )


def generate_md_report(trace: ClassificationTrace, path: Optional[str] = None,
                       oracles: Optional[Dict[str, Any]] = None) -> str:
    """生成 Markdown 報告並回傳檔案路徑"""
    content = MDReportGenerator(trace, oracles).generate_report()
    if path is None:
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        path = f"分類報告_{timestamp}.md"
    filepath = get_result_file_path(path)
    os.makedirs(os.path.dirname(os.path.abspath(filepath)), exist_ok=True)
    with open(filepath, "w", encoding="utf-8") as f:
        f.write(content)
    return filepath
