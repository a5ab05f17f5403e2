#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
超幾何代數性分類器 - 主要管理腳本
==================================

整合分類、驗證預言與輸出的命令列程式。

功能包括：
1. 分類單一表達式（文字、檔案或 JSON 輸入文件）
2. 輸出 JSON 追蹤、SVG 交錯圖與 Markdown 報告
3. Christol 全域有界判準、係數列印、零化多項式猜測與微分方程殘差
4. 批次分類 CSV 語料
5. 顯示執行期配置

使用方法：
    hypalg [classify] <expr|file> [選項]
    hypalg batch <csv> [--output <path>]
    hypalg config

結束代碼：0 成功分類，1 批次有判定不符，2 語法或驗證錯誤，3 函數無定義。
"""

import argparse
import logging
import os
import sys
from datetime import datetime
from typing import Any, Dict, List, Optional, Tuple

from classification_manager import ClassificationTrace, get_classification_manager
from config_params import (
    DEFAULT_GUESS_BIDEGREE,
    DEFAULT_GUESS_TERMS,
    DEFAULT_PRINT_TERMS,
    DEFAULT_RESIDUAL_TERMS,
    DENOMINATOR_SCAN_TERMS,
    EXIT_BATCH_MISMATCH,
    EXIT_CLASSIFIED,
    EXIT_ILL_DEFINED,
    EXIT_INPUT_ERROR,
    GUARD_TERMS,
    TOOL_VERSION,
    print_config,
)
from contraction import has_rational_parameters
from exact_core import format_rational
from expression_parser import InputDocument, document_from_json, format_document, parse_expression
from hypergeom_params import HypergeomInputError, HypergeomSpec, IllDefined, cancel_common
from interlacing_criteria import christol_globally_bounded
from series_oracle import (
    coefficients,
    denominator_primes,
    eisenstein_constant,
    guess_annihilator,
    ode_residual,
)
from svg_diagram_generator import emit_interlacing_svg
from trace_report_generator import emit_trace_json, generate_md_report

logger = logging.getLogger(__name__)

COMMANDS = ("classify", "batch", "config")


def load_document(source: str, recurrence: bool = False) -> InputDocument:
    """
    讀取輸入：既有檔案的內容或表達式本身

    以 "{" 開頭的內容視為 JSON 輸入文件；--recurrence 時可省略 "rec:" 前綴。
    """
    text = source
    if os.path.isfile(source):
        with open(source, "r", encoding="utf-8") as f:
            text = f.read()
        logger.info("read input from %s", source)
    stripped = text.strip()
    if stripped.startswith("{"):
        return document_from_json(stripped)
    if recurrence and not stripped.startswith("rec"):
        stripped = f"rec: {stripped}"
    return parse_expression(stripped)


def parse_bidegree(text: str) -> Tuple[int, int]:
    try:
        dx, dy = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <dx>,<dy>, got {text!r}")
    if dx < 0 or dy < 1:
        raise argparse.ArgumentTypeError("need dx >= 0 and dy >= 1")
    return dx, dy


class ClassificationRunner:
    """單一表達式的分類流程"""

    def __init__(self, document: InputDocument, parallel: bool = False):
        self.document = document
        self.spec: HypergeomSpec = document.to_spec()
        self.trace: ClassificationTrace = get_classification_manager().classify(self.spec, parallel=parallel)
        self.oracles: Dict[str, Any] = {}

    def print_verdict(self):
        print(self.trace.verdict.label)

    def run_globally_bounded(self):
        """Christol 判準：F 形式參數 a = C 的參數 + [1]，b = D 的參數"""
        print("\n🔍 全域有界判準 (Christol)...")
        params = has_rational_parameters(cancel_common(self.spec).pair)
        if params is None:
            print("❌ 參數不全為有理數，判準不適用")
            self.oracles["globally_bounded"] = None
            return
        c_params, d_params = params
        try:
            report = christol_globally_bounded(list(c_params) + [1], d_params)
        except HypergeomInputError as exc:
            print(f"❌ {exc}")
            self.oracles["globally_bounded"] = None
            return
        self.oracles["globally_bounded"] = report.satisfied
        if report.satisfied:
            print(f"✅ 全域有界（N = {report.modulus}）")
        else:
            failure = report.first_failure()
            print(f"❌ 非全域有界: λ={failure.lam} {failure.failure_witness}")

    def print_terms(self, count: int):
        prefix = coefficients(self.spec, count)
        print(f"\n📊 前 {count} 項係數:")
        print(", ".join(format_rational(u) for u in prefix.coefficients))
        self.oracles["terms"] = [format_rational(u) for u in prefix.coefficients]

    def run_denominator_scan(self, count: int = DENOMINATOR_SCAN_TERMS):
        prefix = coefficients(self.spec, count)
        primes = sorted(denominator_primes(prefix))
        self.oracles["denominator_primes"] = primes
        self.oracles["eisenstein_constant"] = eisenstein_constant(prefix)
        print(f"🔢 分母質數（前 {count} 項）: {primes[:20]}{' …' if len(primes) > 20 else ''}")

    def run_guess(self, dx: int, dy: int):
        print(f"\n🔍 猜測零化多項式（雙次數 ≤ ({dx}, {dy})）...")
        terms = max(DEFAULT_GUESS_TERMS, (dx + 1) * (dy + 1) + GUARD_TERMS)
        annihilator = guess_annihilator(coefficients(self.spec, terms), dx, dy)
        if annihilator is None:
            print("❌ 此界限內找不到零化多項式（不代表超越）")
            self.oracles["guess"] = None
            return
        print(f"✅ P(x, y) = {annihilator}")
        self.oracles["guess"] = {"bidegree": [annihilator.dx, annihilator.dy], "polynomial": str(annihilator)}

    def run_residual(self, count: int):
        residual = ode_residual(self.spec, count)
        ok = not any(residual)
        self.oracles["residual"] = {"terms": count, "vanishes": ok}
        print(f"{'✅' if ok else '❌'} 微分方程殘差（{count} 項）{'為零' if ok else '不為零'}")

    def write_trace(self, path: str):
        emit_trace_json(self.trace, path, self.oracles or None)
        print(f"📄 追蹤文件已保存到: {path}")

    def write_diagram(self, path: str):
        if self.trace.ic_report is None:
            print(f"❌ 判定在 {self.trace.terminal_node.name} 結束，沒有交錯報告可畫")
            return
        target = emit_interlacing_svg(self.trace.ic_report, path)
        print(f"📄 交錯圖已保存到: {target}")

    def write_markdown(self, path: str):
        target = generate_md_report(self.trace, path, self.oracles)
        print(f"📄 Markdown 報告已保存到: {target}")


def _configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypalg",
        description="超幾何級數代數性分類器",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
使用範例:
    hypalg "3F2([1/2, 1+sqrt(2), 1-sqrt(2)], [sqrt(2), -sqrt(2)]; 4*x)"
    hypalg classify "2F1([1,1],[2]; x)" --trace log.json
    hypalg --recurrence "u0=1; A=2*(2*n+1)*(n^2+2*n-1); B=(n+1)*(n^2-2)" --guess 5,2
    hypalg batch golden_corpus.csv --output verdicts.csv
    hypalg config
        """,
    )
    parser.add_argument("--version", action="version", version=f"hypalg {TOOL_VERSION}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v 顯示 INFO，-vv 顯示 DEBUG")
    sub = parser.add_subparsers(dest="command")

    classify = sub.add_parser("classify", help="分類單一表達式（預設）")
    classify.add_argument("source", help="表達式、表達式檔案或 JSON 輸入文件")
    classify.add_argument("--recurrence", action="store_true", help="輸入為遞迴（可省略 rec: 前綴）")
    classify.add_argument("--trace", metavar="PATH", help="寫出 JSON 追蹤文件")
    classify.add_argument("--diagram", metavar="PATH", help="寫出 SVG 交錯圖")
    classify.add_argument("--markdown", metavar="PATH", help="寫出 Markdown 報告")
    classify.add_argument("--globally-bounded", action="store_true", help="執行 Christol 全域有界判準")
    classify.add_argument("--terms", type=int, nargs="?", const=DEFAULT_PRINT_TERMS, metavar="N",
                          help=f"列印前 N 項係數（預設 {DEFAULT_PRINT_TERMS}）")
    classify.add_argument("--guess", type=parse_bidegree, nargs="?", const=DEFAULT_GUESS_BIDEGREE, metavar="DX,DY",
                          help=f"猜測零化多項式（預設雙次數 {DEFAULT_GUESS_BIDEGREE[0]},{DEFAULT_GUESS_BIDEGREE[1]}）")
    classify.add_argument("--residual", type=int, nargs="?", const=DEFAULT_RESIDUAL_TERMS, metavar="N",
                          help=f"檢查微分方程殘差（預設 {DEFAULT_RESIDUAL_TERMS} 項）")
    classify.add_argument("--primes", action="store_true", help="掃描係數分母的質因數")
    classify.add_argument("--parallel", action="store_true", help="並行掃描 λ")
    classify.add_argument("-v", "--verbose", action="count", default=0, dest="sub_verbose")

    batch = sub.add_parser("batch", help="批次分類 CSV 語料")
    batch.add_argument("csv", nargs="?", help="語料 CSV（預設為隨附的 golden_corpus.csv）")
    batch.add_argument("--output", metavar="PATH", help="結果 CSV 路徑")
    batch.add_argument("-v", "--verbose", action="count", default=0, dest="sub_verbose")

    sub.add_parser("config", help="顯示執行期配置")
    return parser


def _with_default_command(argv: List[str]) -> List[str]:
    passthrough = {"-h", "--help", "--version"}
    for index, arg in enumerate(argv):
        if arg in COMMANDS or arg in passthrough:
            return argv
        if arg.startswith("-v") and set(arg[1:]) == {"v"} or arg == "--verbose":
            continue
        return argv[:index] + ["classify"] + argv[index:]
    return argv


def run_classify(args: argparse.Namespace) -> int:
    try:
        document = load_document(args.source, args.recurrence)
        runner = ClassificationRunner(document, parallel=args.parallel)
    except IllDefined as exc:
        print(f"❌ 函數無定義: {exc}", file=sys.stderr)
        return EXIT_ILL_DEFINED
    except (HypergeomInputError, OSError) as exc:
        print(f"❌ 輸入錯誤: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    runner.print_verdict()
    logger.info("input: %s", format_document(document))
    if args.globally_bounded:
        runner.run_globally_bounded()
    if args.terms:
        runner.print_terms(args.terms)
    if args.primes:
        runner.run_denominator_scan()
    if args.guess:
        runner.run_guess(*args.guess)
    if args.residual:
        runner.run_residual(args.residual)
    if args.trace:
        runner.write_trace(args.trace)
    if args.diagram:
        runner.write_diagram(args.diagram)
    if args.markdown:
        runner.write_markdown(args.markdown)
    return EXIT_CLASSIFIED


def run_batch_command(args: argparse.Namespace) -> int:
    from batch_manager import run_batch

    start = datetime.now()
    print(f"📅 執行時間: {start.strftime('%Y-%m-%d %H:%M:%S')}")
    try:
        _, mismatches = run_batch(args.csv, args.output)
    except (FileNotFoundError, ValueError) as exc:
        print(f"❌ 語料錯誤: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    print(f"⏱️  耗時 {(datetime.now() - start).total_seconds():.2f} 秒")
    return EXIT_CLASSIFIED if mismatches == 0 else EXIT_BATCH_MISMATCH


def main(argv: Optional[List[str]] = None) -> int:
    """主函數"""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_with_default_command(argv))
    _configure_logging(args.verbose + getattr(args, "sub_verbose", 0))

    if args.command == "config":
        print_config()
        return EXIT_CLASSIFIED
    if args.command == "batch":
        return run_batch_command(args)
    if args.command == "classify":
        return run_classify(args)
    parser.print_help()
    return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
