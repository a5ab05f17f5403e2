#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
批次分類模組
===========

負責讀取表達式語料 CSV、逐筆分類並輸出結果。

功能包括：
1. 從 CSV 讀取語料（name, expression[, expected]）
2. 驗證欄位與名稱唯一性
3. 逐筆解析、分類，錯誤轉成 INPUT_ERROR / ILL_DEFINED 標籤
4. 與預期判定比對並寫出結果 CSV
"""

import logging
import os
from typing import Optional, Tuple

import pandas as pd

from classification_manager import ClassificationManager, get_classification_manager
from config_params import BATCH_REQUIRED_COLUMNS, GOLDEN_CORPUS_FILE
from expression_parser import parse_expression
from hypergeom_params import HypergeomInputError, IllDefined
from path_utils import get_data_file_path, get_result_file_path

logger = logging.getLogger(__name__)

LABEL_INPUT_ERROR = "INPUT_ERROR"
LABEL_ILL_DEFINED = "ILL_DEFINED"


class BatchClassifier:
    """批次分類器 - 處理語料的載入、分類與結果輸出"""

    def __init__(self, manager: Optional[ClassificationManager] = None):
        self.manager = manager or get_classification_manager()
        self.corpus_df = None
        self.results_df = None
        self.is_loaded = False

    def load_corpus(self, csv_file: Optional[str] = None) -> bool:
        """
        從 CSV 檔案載入語料

        Args:
            csv_file (str, optional): CSV 檔案路徑，預設使用隨附的 golden_corpus.csv

        Returns:
            bool: 載入是否成功
        """
        csv_file = csv_file or get_data_file_path(GOLDEN_CORPUS_FILE)
        if not os.path.exists(csv_file):
            raise FileNotFoundError(f"corpus file not found: {csv_file}")

        df = pd.read_csv(csv_file, dtype=str, keep_default_na=False)

        missing_columns = [col for col in BATCH_REQUIRED_COLUMNS if col not in df.columns]
        if missing_columns:
            raise ValueError(f"corpus is missing required columns: {missing_columns}")

        duplicate_names = df[df.duplicated(subset=["name"])]
        if not duplicate_names.empty:
            raise ValueError(f"duplicate corpus names: {duplicate_names['name'].tolist()}")

        if "expected" not in df.columns:
            df["expected"] = ""

        self.corpus_df = df
        self.is_loaded = True
        print(f"✅ 語料載入成功: {len(df)} 筆表達式")
        return True

    def _classify_row(self, expression: str) -> Tuple[str, str, str]:
        """回傳（判定標籤, 決定節點, 錯誤訊息）"""
        try:
            spec = parse_expression(expression).to_spec()
            trace = self.manager.classify(spec)
            return trace.verdict.label, trace.terminal_node.name, ""
        except IllDefined as exc:
            return LABEL_ILL_DEFINED, "", str(exc)
        except HypergeomInputError as exc:
            return LABEL_INPUT_ERROR, "", str(exc)

    def classify_all(self) -> pd.DataFrame:
        if not self.is_loaded:
            self.load_corpus()

        rows = []
        for record in self.corpus_df.itertuples(index=False):
            label, node, error = self._classify_row(record.expression)
            expected = record.expected.strip()
            rows.append({
                "name": record.name,
                "expression": record.expression,
                "verdict": label,
                "decided_at": node,
                "expected": expected,
                "match": (label == expected) if expected else None,
                "error": error,
            })
            logger.debug("%s -> %s", record.name, label)

        self.results_df = pd.DataFrame(rows)
        return self.results_df

    def get_mismatches(self) -> pd.DataFrame:
        if self.results_df is None:
            self.classify_all()
        return self.results_df[self.results_df["match"] == False]  # noqa: E712

    def save_results(self, output_file: Optional[str] = None) -> str:
        if self.results_df is None:
            self.classify_all()
        output_file = get_result_file_path(output_file or "corpus_verdicts.csv")
        self.results_df.to_csv(output_file, index=False, encoding="utf-8-sig")
        print(f"📄 判定結果已保存到: {output_file}")
        return output_file

    def print_summary(self):
        if self.results_df is None:
            return
        df = self.results_df
        print("📊 批次分類摘要")
        print("=" * 40)
        for label, count in df["verdict"].value_counts().sort_index().items():
            print(f"   {label}: {count}")
        mismatches = self.get_mismatches()
        if mismatches.empty:
            print("✅ 全部符合預期判定")
        else:
            print(f"❌ {len(mismatches)} 筆不符合預期:")
            for record in mismatches.itertuples(index=False):
                print(f"   {record.name}: 預期 {record.expected}，實得 {record.verdict}")


def run_batch(csv_file: Optional[str] = None, output_file: Optional[str] = None) -> Tuple[pd.DataFrame, int]:
    """分類整份語料並寫出結果，回傳（結果表, 不符筆數）"""
    classifier = BatchClassifier()
    classifier.load_corpus(csv_file)
    results = classifier.classify_all()
    classifier.save_results(output_file)
    classifier.print_summary()
    return results, len(classifier.get_mismatches())
