# -*- coding: utf-8 -*-
"""測試共用設定：平面模組佈局，把專案根目錄放進 sys.path"""

import os
import sys

import pandas as pd
import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.append(ROOT)

from expression_parser import parse_expression  # noqa: E402

CORPUS_PATH = os.path.join(ROOT, "golden_corpus.csv")


def spec_of(text):
    return parse_expression(text).to_spec()


@pytest.fixture(scope="session")
def corpus():
    return pd.read_csv(CORPUS_PATH, dtype=str, keep_default_na=False)


@pytest.fixture(scope="session")
def corpus_expressions(corpus):
    """name → expression"""
    return dict(zip(corpus["name"], corpus["expression"]))


@pytest.fixture
def spec_from(corpus_expressions):
    """依語料名稱建立規格"""

    def build(name):
        return spec_of(corpus_expressions[name])

    return build


@pytest.fixture
def in_tmp(tmp_path, monkeypatch):
    """在暫存目錄執行，result/ 不會寫進專案目錄"""
    monkeypatch.chdir(tmp_path)
    return tmp_path
