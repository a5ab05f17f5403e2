# -*- coding: utf-8 -*-
"""命令列介面測試"""

import argparse
import json
from fractions import Fraction

import pandas as pd
import pytest

from classification_manager import get_classification_manager
from config_params import EXIT_BATCH_MISMATCH, EXIT_CLASSIFIED, EXIT_ILL_DEFINED, EXIT_INPUT_ERROR, TOOL_VERSION
from main_manager import _with_default_command, load_document, main, parse_bidegree

INTRO = "3F2([1/2, 1+sqrt(2), 1-sqrt(2)], [sqrt(2), -sqrt(2)]; 4*x)"


def first_line(text):
    return text.splitlines()[0]


def test_verdict_is_first_line(capsys):
    assert main(["2F1([1,1],[2]; x)"]) == EXIT_CLASSIFIED
    assert first_line(capsys.readouterr().out) == "TRANSCENDENTAL"
    assert main(["classify", INTRO]) == EXIT_CLASSIFIED
    assert first_line(capsys.readouterr().out) == "ALGEBRAIC"
    assert main(["2F1([-2,1/2],[1/3]; x)"]) == EXIT_CLASSIFIED
    assert first_line(capsys.readouterr().out) == "POLYNOMIAL(deg<3)"


def test_recurrence_flag_adds_prefix(capsys):
    assert main(["classify", "--recurrence",
                 "u0=1; A=2*(2*n+1)*(n^2+2*n-1); B=(n+1)*(n^2-2)"]) == EXIT_CLASSIFIED
    assert first_line(capsys.readouterr().out) == "ALGEBRAIC"


def test_error_exit_codes(capsys):
    assert main(["2F1([pi,1],[2]; x)"]) == EXIT_INPUT_ERROR
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "❌" in captured.err
    assert main(["2F1([1,1],[2]; 0.5*x)"]) == EXIT_INPUT_ERROR
    assert "column 16" in capsys.readouterr().err
    assert main(["2F1([1,1],[-2]; x)"]) == EXIT_ILL_DEFINED
    assert "n=2" in capsys.readouterr().err


def test_file_and_json_inputs(tmp_path, capsys):
    text_file = tmp_path / "intro.txt"
    text_file.write_text(INTRO + "\n", encoding="utf-8")
    assert main([str(text_file)]) == EXIT_CLASSIFIED
    assert first_line(capsys.readouterr().out) == "ALGEBRAIC"

    json_file = tmp_path / "log.json"
    json_file.write_text(json.dumps({"kind": "pFq", "top": [1, 1], "bottom": [2]}), encoding="utf-8")
    assert main([str(json_file)]) == EXIT_CLASSIFIED
    assert first_line(capsys.readouterr().out) == "TRANSCENDENTAL"

    assert load_document('{"expression": "1F0([1/2],[]; x)"}').top[0].value == Fraction(1, 2)


def test_output_artifacts(in_tmp, capsys):
    code = main([INTRO, "--terms", "3", "--trace", "intro.json", "--diagram", "intro.svg", "--markdown", "intro.md"])
    assert code == EXIT_CLASSIFIED
    out = capsys.readouterr().out
    assert "1, 1, -6" in out
    result = in_tmp / "result"
    trace = json.loads((result / "intro.json").read_text(encoding="utf-8"))
    assert trace["verdict"]["label"] == "ALGEBRAIC"
    assert trace["oracles"]["terms"] == ["1", "1", "-6"]
    assert (result / "intro.svg").read_text(encoding="utf-8").startswith("<?xml")
    assert "ALGEBRAIC" in (result / "intro.md").read_text(encoding="utf-8")


def test_diagram_without_interlacing_report(in_tmp, capsys):
    assert main(["2F1([1,1],[2]; x)", "--diagram", "log.svg"]) == EXIT_CLASSIFIED
    assert "Reducedness" in capsys.readouterr().out
    assert not (in_tmp / "result" / "log.svg").exists()


def test_globally_bounded_flag(capsys):
    main(["2F1([1/2,1/2],[1]; x)", "--globally-bounded"])
    out = capsys.readouterr().out
    assert first_line(out) == "TRANSCENDENTAL"
    assert "✅ 全域有界（N = 2）" in out
    main(["2F1([1,1],[1/2]; x)", "--globally-bounded"])
    assert "❌ 非全域有界: λ=1" in capsys.readouterr().out


def test_oracle_flags(capsys):
    main(["3F2([5/6,1/2,1],[5/3,2]; 16*x)", "--terms", "4"])
    assert "1, 2, 11, 85" in capsys.readouterr().out
    main(["1F0([1/2],[]; x)", "--guess", "1,2"])
    assert "✅ P(x, y) = (-x + 1)*y^2 - 1" in capsys.readouterr().out
    main(["2F1([1/2,1/2],[1]; x)", "--guess", "2,2"])
    assert "❌" in capsys.readouterr().out
    main(["2F1([1/2,1/2],[1]; x)", "--residual", "30", "--primes"])
    out = capsys.readouterr().out
    assert "✅" in out
    assert "[2]" in out


def test_default_terms_count(capsys):
    main(["1F0([1],[]; x)", "--terms"])
    assert "1, 1, 1, 1, 1, 1, 1, 1, 1, 1" in capsys.readouterr().out


def test_bidegree_argument():
    assert parse_bidegree("5,2") == (5, 2)
    for bad in ("3", "a,b", "1,0", "-1,2"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_bidegree(bad)
    with pytest.raises(SystemExit) as info:
        main(["1F0([1],[]; x)", "--guess", "1,0"])
    assert info.value.code == 2


def test_default_command_insertion():
    assert _with_default_command(["expr"]) == ["classify", "expr"]
    assert _with_default_command(["-vv", "expr"]) == ["-vv", "classify", "expr"]
    assert _with_default_command(["batch"]) == ["batch"]
    assert _with_default_command(["--version"]) == ["--version"]
    assert _with_default_command([]) == []


def test_version_and_config(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert f"hypalg {TOOL_VERSION}" in capsys.readouterr().out
    assert main(["config"]) == EXIT_CLASSIFIED
    assert "分類器配置" in capsys.readouterr().out


def test_batch_command(in_tmp, capsys):
    assert main(["batch", "--output", "golden.csv"]) == EXIT_CLASSIFIED
    saved = pd.read_csv(in_tmp / "result" / "golden.csv", encoding="utf-8-sig", dtype=str, keep_default_na=False)
    assert len(saved) == 21

    bad = in_tmp / "bad.csv"
    bad.write_text("name,expression,expected\nlog,\"2F1([1,1],[2]; x)\",ALGEBRAIC\n", encoding="utf-8")
    assert main(["batch", str(bad)]) == EXIT_BATCH_MISMATCH
    assert main(["batch", str(in_tmp / "missing.csv")]) == EXIT_INPUT_ERROR
    assert "❌" in capsys.readouterr().err


def test_parallel_flag_does_not_change_shared_manager(capsys):
    manager = get_classification_manager()
    default = manager.parallel
    assert main(["6F5([1/14, 3/14, 11/14, allroots(t^2-2*t+4), 1], [1/7, 3/7, 3, allroots(t^2+3)]; x)",
                 "--parallel"]) == EXIT_CLASSIFIED
    assert first_line(capsys.readouterr().out) == "ALGEBRAIC"
    assert manager.parallel == default
