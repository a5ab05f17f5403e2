#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
交錯圖 SVG 生成器

每個 λ 一個單位圓：分子參數 exp(2πiλc) 畫成紅點，分母參數畫成藍點。
相同位置的重複參數往圓外依序錯開。輸出不含時間戳或亂數，
相同報告的輸出逐位元組相同。
"""

from collections import Counter
from typing import List

import numpy as np

from config_params import (
    SVG_BOTTOM_COLOR,
    SVG_CELL_SIZE,
    SVG_CIRCLE_RADIUS,
    SVG_COLUMNS,
    SVG_FAILED_COLOR,
    SVG_POINT_RADIUS,
    SVG_TOP_COLOR,
)
from exact_core import format_rational
from interlacing_criteria import CriterionReport, LambdaReport
from path_utils import get_result_file_path


def _num(value: float) -> str:
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


def _points(entries, color: str, cx: float, cy: float, square: bool) -> List[str]:
    elements = []
    seen: Counter = Counter()
    for value, frac in entries:
        angle = 2 * np.pi * float(frac)
        offset = seen[frac] * (2 * SVG_POINT_RADIUS + 2)
        seen[frac] += 1
        radius = SVG_CIRCLE_RADIUS + offset
        x = cx + radius * np.cos(angle)
        y = cy - radius * np.sin(angle)
        title = f"<title>{format_rational(value)}</title>"
        if square:
            side = 2 * SVG_POINT_RADIUS
            elements.append(
                f'<rect x="{_num(x - SVG_POINT_RADIUS)}" y="{_num(y - SVG_POINT_RADIUS)}" '
                f'width="{side}" height="{side}" fill="{color}">{title}</rect>'
            )
        else:
            elements.append(
                f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{SVG_POINT_RADIUS}" fill="{color}">{title}</circle>'
            )
    return elements


def _cell(report: LambdaReport, index: int) -> List[str]:
    col, row = index % SVG_COLUMNS, index // SVG_COLUMNS
    cx = col * SVG_CELL_SIZE + SVG_CELL_SIZE / 2
    cy = row * SVG_CELL_SIZE + SVG_CELL_SIZE / 2
    stroke = "#000000" if report.satisfied else SVG_FAILED_COLOR
    dash = "" if report.satisfied else ' stroke-dasharray="4 3"'
    elements = [
        f'<g id="lambda-{report.lam}">',
        f'<circle cx="{_num(cx)}" cy="{_num(cy)}" r="{SVG_CIRCLE_RADIUS}" fill="none" '
        f'stroke="{stroke}"{dash}/>',
        f'<text x="{_num(cx)}" y="{_num(cy + 4)}" text-anchor="middle" font-size="14">'
        f'λ={report.lam}</text>',
    ]
    elements += _points(report.sorted_top, SVG_TOP_COLOR, cx, cy, square=False)
    elements += _points(report.sorted_bottom, SVG_BOTTOM_COLOR, cx, cy, square=True)
    elements.append("</g>")
    return elements


def render_interlacing_svg(report: CriterionReport) -> str:
    cells = report.per_lambda
    columns = min(SVG_COLUMNS, max(len(cells), 1))
    rows = max(-(-len(cells) // SVG_COLUMNS), 1)
    width, height = columns * SVG_CELL_SIZE, rows * SVG_CELL_SIZE
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<desc>{report.criterion} N={report.modulus} satisfied={str(report.satisfied).lower()}</desc>",
    ]
    for index, cell in enumerate(cells):
        lines.extend(_cell(cell, index))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_interlacing_svg(report: CriterionReport, path: str) -> str:
    """寫出 SVG 檔並回傳實際路徑"""
    target = get_result_file_path(path)
    with open(target, "w", encoding="utf-8") as f:
        f.write(render_interlacing_svg(report))
    return target
