#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
表達式解析模組
==============

支援三種輸入文法：

    3F2([1/2, 1+sqrt(2), 1-sqrt(2)], [sqrt(2), -sqrt(2)]; 4*x)
    F([1/3, 1/2, 2, 4], [3/2, 3, 1, 1]; x)            # 無 n! 的 𝓕 形式
    rec: u0=1; A=2*(2*n+1)*(n^2+2*n-1); B=(n+1)*(n^2-2)

參數原子：有理數 p/q、sqrt(n)、root(<poly>, lo, hi)、allroots(<poly>[, m])，
可用 +、−、有理數倍數組合（每個參數至多一個代數原子）。
其他識別字（pi、e、…）視為非代數參數而拒絕。

格式化輸出 format_document 的結果重新解析後得到完全相同的文件。
"""

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from config_params import INPUT_SCHEMA_VERSION
from exact_core import PolyQ, format_rational, to_rational
from hypergeom_params import (
    FORM_F,
    FORM_SCRIPT_F,
    HypergeomInputError,
    HypergeomSpec,
    NonAlgebraicParameter,
    Parameter,
    RationalParameter,
    RealAlgebraicParameter,
    RootBlockParameter,
    assemble,
    from_recurrence,
    parameter_count,
)

KIND_PFQ = "pFq"
KIND_SCRIPT_F = "scriptF"
KIND_RECURRENCE = "recurrence"

_FUNCTIONS = ("sqrt", "root", "allroots")


class ExpressionSyntaxError(HypergeomInputError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class InputDocument:
    kind: str
    top: Tuple[Parameter, ...] = ()
    bottom: Tuple[Parameter, ...] = ()
    scale: Fraction = Fraction(1)
    u0: Fraction = Fraction(1)
    a_poly: Optional[PolyQ] = None
    b_poly: Optional[PolyQ] = None

    def to_spec(self) -> HypergeomSpec:
        if self.kind == KIND_RECURRENCE:
            return from_recurrence(self.a_poly, self.b_poly, self.u0)
        form = FORM_F if self.kind == KIND_PFQ else FORM_SCRIPT_F
        return assemble(self.top, self.bottom, form, self.scale, self.u0)


# ===== 詞法分析 =====

@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_SPEC = [
    ("COMMENT", r"#[^\n]*"),
    ("NEWLINE", r"\n"),
    ("SPACE", r"[ \t\r]+"),
    ("HEAD", r"\d+F\d+(?![\w.])"),
    ("NUMBER", r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?"),
    ("IDENT", r"[A-Za-z_][A-Za-z_0-9]*"),
    ("OP", r"[()\[\],;:+\-*/^=]"),
    ("MINUS", r"[−–]"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if match is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", line, column)
        kind, value = match.lastgroup, match.group()
        if kind == "NEWLINE":
            line += 1
            line_start = match.end()
        elif kind == "NUMBER" and any(ch in value for ch in ".eE"):
            raise ExpressionSyntaxError(f"floating-point literal {value!r} not allowed", line, column)
        elif kind == "MINUS":
            tokens.append(Token("OP", "-", line, column))
        elif kind not in ("SPACE", "COMMENT"):
            tokens.append(Token(kind, value, line, column))
        pos = match.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# ===== 參數值（有理數 + k·代數原子）=====

@dataclass(frozen=True)
class _Linear:
    offset: Fraction
    coef: Fraction = Fraction(0)
    atom: Optional[Union[RealAlgebraicParameter, RootBlockParameter]] = None

    @property
    def is_rational(self) -> bool:
        return self.atom is None or self.coef == 0

    def to_parameter(self) -> Parameter:
        if self.is_rational:
            return RationalParameter(self.offset)
        return self.atom.affine(self.coef, self.offset)


# ===== 語法分析 =====

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self._poly_var: Optional[str] = None

    # ----- 游標 -----

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def error(self, message: str, token: Optional[Token] = None) -> ExpressionSyntaxError:
        token = token or self.current
        return ExpressionSyntaxError(message, token.line, token.column)

    def accept(self, text: str) -> Optional[Token]:
        token = self.current
        if token.kind in ("OP", "IDENT") and token.text == text:
            self.pos += 1
            return token
        return None

    def expect(self, text: str) -> Token:
        token = self.accept(text)
        if token is None:
            found = self.current.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return token

    def expect_end(self):
        if self.current.kind != "EOF":
            raise self.error(f"unexpected {self.current.text!r} after end of expression")

    # ----- 文件 -----

    def document(self) -> InputDocument:
        if self.current.kind == "IDENT" and self.current.text == "rec":
            doc = self.recurrence()
        else:
            doc = self.hypergeometric()
        self.expect_end()
        return doc

    def recurrence(self) -> InputDocument:
        self.expect("rec")
        self.expect(":")
        values: Dict[str, Any] = {}
        while True:
            token = self.current
            if token.kind != "IDENT" or token.text not in ("u0", "A", "B"):
                raise self.error("expected one of 'u0', 'A', 'B'")
            if token.text in values:
                raise self.error(f"{token.text!r} assigned twice")
            self.pos += 1
            self.expect("=")
            if token.text == "u0":
                values["u0"] = self.signed_rational()
            else:
                self._poly_var = None
                values[token.text] = self.poly_expr()
            if not self.accept(";"):
                break
            if self.current.kind == "EOF":
                break
        for name in ("A", "B"):
            if name not in values:
                raise self.error(f"recurrence is missing {name!r}")
        return InputDocument(
            KIND_RECURRENCE,
            u0=values.get("u0", Fraction(1)),
            a_poly=values["A"],
            b_poly=values["B"],
        )

    def hypergeometric(self) -> InputDocument:
        u0 = Fraction(1)
        if self.current.kind != "HEAD" and not (self.current.kind == "IDENT" and self.current.text == "F"):
            u0 = self.signed_rational()
            self.expect("*")
        head = self.current
        if head.kind == "HEAD":
            p, q = (int(v) for v in head.text.split("F"))
            kind = KIND_PFQ
        elif head.kind == "IDENT" and head.text == "F":
            p = q = None
            kind = KIND_SCRIPT_F
        else:
            raise self.error("expected a head like '2F1' or 'F'")
        self.pos += 1
        self.expect("(")
        top = self.parameter_list()
        self.expect(",")
        bottom = self.parameter_list()
        scale = Fraction(1)
        if self.accept(";"):
            scale = self.argument()
        self.expect(")")
        if p is not None:
            if parameter_count(top) != p or parameter_count(bottom) != q:
                raise self.error(
                    f"head {head.text} declares {p} top and {q} bottom parameters, "
                    f"found {parameter_count(top)} and {parameter_count(bottom)}",
                    head,
                )
        return InputDocument(kind, tuple(top), tuple(bottom), scale, u0)

    def parameter_list(self) -> List[Parameter]:
        self.expect("[")
        params: List[Parameter] = []
        if self.accept("]"):
            return params
        while True:
            params.append(self.param_sum().to_parameter())
            if self.accept("]"):
                return params
            self.expect(",")

    def argument(self) -> Fraction:
        sign = Fraction(-1) if self.accept("-") else Fraction(1)
        if not sign < 0:
            self.accept("+")
        if self.current.kind == "IDENT" and self.current.text == "x":
            self.pos += 1
            return sign
        value = self.rational_factor()
        while self.accept("/"):
            value = value / self._nonzero(self.rational_factor())
        self.accept("*")
        token = self.current
        if token.kind != "IDENT" or token.text != "x":
            raise self.error("expected the argument variable 'x'")
        self.pos += 1
        if value == 0:
            raise self.error("argument scale must be nonzero", token)
        return sign * value

    def signed_rational(self) -> Fraction:
        sign = Fraction(-1) if self.accept("-") else Fraction(1)
        value = self.rational_factor()
        while self.accept("/"):
            value = value / self._nonzero(self.rational_factor())
        return sign * value

    def rational_factor(self) -> Fraction:
        token = self.current
        if token.kind == "NUMBER":
            self.pos += 1
            return Fraction(int(token.text))
        if self.accept("("):
            value = self.param_sum()
            self.expect(")")
            if not value.is_rational:
                raise self.error("expected a rational value", token)
            return value.offset
        raise self.error("expected a rational number")

    def _nonzero(self, value: Fraction) -> Fraction:
        if value == 0:
            raise self.error("division by zero")
        return value

    # ----- 參數表達式 -----

    def param_sum(self) -> _Linear:
        value = self.param_term()
        while self.current.kind == "OP" and self.current.text in "+-":
            op = self.current
            self.pos += 1
            rhs = self.param_term()
            if op.text == "-":
                rhs = _Linear(-rhs.offset, -rhs.coef, rhs.atom)
            value = self._add(value, rhs, op)
        return value

    def _add(self, lhs: _Linear, rhs: _Linear, token: Token) -> _Linear:
        if lhs.is_rational:
            return _Linear(lhs.offset + rhs.offset, rhs.coef, rhs.atom)
        if rhs.is_rational:
            return _Linear(lhs.offset + rhs.offset, lhs.coef, lhs.atom)
        if lhs.atom != rhs.atom:
            raise self.error("a parameter may contain only one algebraic atom", token)
        return _Linear(lhs.offset + rhs.offset, lhs.coef + rhs.coef, lhs.atom)

    def param_term(self) -> _Linear:
        value = self.param_unary()
        while self.current.kind == "OP" and self.current.text in "*/":
            op = self.current
            self.pos += 1
            rhs = self.param_unary()
            if op.text == "/":
                if not rhs.is_rational:
                    raise self.error("cannot divide by an algebraic atom", op)
                divisor = self._nonzero(rhs.offset)
                value = _Linear(value.offset / divisor, value.coef / divisor, value.atom)
            elif value.is_rational:
                value = _Linear(value.offset * rhs.offset, value.offset * rhs.coef, rhs.atom)
            elif rhs.is_rational:
                value = _Linear(value.offset * rhs.offset, value.coef * rhs.offset, value.atom)
            else:
                raise self.error("product of two algebraic atoms is not supported", op)
        return value

    def param_unary(self) -> _Linear:
        if self.accept("-"):
            inner = self.param_unary()
            return _Linear(-inner.offset, -inner.coef, inner.atom)
        if self.accept("+"):
            return self.param_unary()
        return self.param_primary()

    def param_primary(self) -> _Linear:
        token = self.current
        if token.kind == "NUMBER":
            self.pos += 1
            return _Linear(Fraction(int(token.text)))
        if self.accept("("):
            value = self.param_sum()
            self.expect(")")
            return value
        if token.kind == "IDENT":
            if token.text not in _FUNCTIONS:
                raise NonAlgebraicParameter(
                    f"unsupported parameter atom {token.text!r} at line {token.line}, "
                    f"column {token.column}; only algebraic parameters are accepted"
                )
            self.pos += 1
            return _Linear(Fraction(0), Fraction(1), self.atom(token))
        raise self.error("expected a parameter")

    def atom(self, name: Token):
        self.expect("(")
        try:
            if name.text == "sqrt":
                token = self.current
                n = self.signed_rational()
                if n.denominator != 1 or n <= 0:
                    raise self.error("sqrt() takes a positive integer", token)
                n = int(n)
                root = math.isqrt(n)
                if root * root == n:
                    raise self.error(f"sqrt({n}) is rational; write {root} instead", token)
                atom = RealAlgebraicParameter(PolyQ((Fraction(-n), Fraction(0), Fraction(1))), root, root + 1)
            elif name.text == "root":
                self._poly_var = None
                poly = self.poly_expr()
                self.expect(",")
                lo = self.signed_rational()
                self.expect(",")
                hi = self.signed_rational()
                atom = RealAlgebraicParameter(poly, lo, hi)
            else:
                self._poly_var = None
                poly = self.poly_expr()
                multiplicity = 1
                if self.accept(","):
                    token = self.current
                    count = self.signed_rational()
                    if count.denominator != 1 or count < 1:
                        raise self.error("root block multiplicity must be a positive integer", token)
                    multiplicity = int(count)
                atom = RootBlockParameter(poly, multiplicity)
        except ExpressionSyntaxError:
            raise
        except HypergeomInputError as exc:
            raise ExpressionSyntaxError(str(exc), name.line, name.column) from exc
        self.expect(")")
        return atom

    # ----- 多項式表達式 -----

    def poly_expr(self) -> PolyQ:
        value = self.poly_term()
        while self.current.kind == "OP" and self.current.text in "+-":
            op = self.current.text
            self.pos += 1
            rhs = self.poly_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_primary(self) -> bool:
        token = self.current
        return token.kind in ("NUMBER", "IDENT") or (token.kind == "OP" and token.text == "(")

    def poly_term(self) -> PolyQ:
        value = self.poly_unary()
        while True:
            token = self.current
            if token.kind == "OP" and token.text == "*":
                self.pos += 1
                value = value * self.poly_unary()
            elif token.kind == "OP" and token.text == "/":
                self.pos += 1
                divisor = self.poly_unary()
                if not divisor.is_constant or divisor.is_zero:
                    raise self.error("polynomials may only be divided by nonzero constants", token)
                value = value * (1 / divisor.leading_coefficient)
            elif self._starts_primary():
                value = value * self.poly_power()
            else:
                return value

    def poly_unary(self) -> PolyQ:
        if self.accept("-"):
            return -self.poly_unary()
        if self.accept("+"):
            return self.poly_unary()
        return self.poly_power()

    def poly_power(self) -> PolyQ:
        base = self.poly_primary()
        if self.accept("^"):
            token = self.current
            if token.kind != "NUMBER":
                raise self.error("exponent must be a natural number")
            self.pos += 1
            return base ** int(token.text)
        return base

    def poly_primary(self) -> PolyQ:
        token = self.current
        if token.kind == "NUMBER":
            self.pos += 1
            return PolyQ.constant(int(token.text))
        if self.accept("("):
            value = self.poly_expr()
            self.expect(")")
            return value
        if token.kind == "IDENT":
            if self._poly_var is None:
                self._poly_var = token.text
            elif token.text != self._poly_var:
                raise self.error(
                    f"polynomial uses two variables: {self._poly_var!r} and {token.text!r}"
                )
            self.pos += 1
            return PolyQ.variable()
        raise self.error("expected a polynomial")


def parse_expression(text: str) -> InputDocument:
    """將文字表達式解析為 InputDocument"""
    return _Parser(text).document()


def parse_parameter(text: str) -> Parameter:
    parser = _Parser(text)
    value = parser.param_sum()
    parser.expect_end()
    return value.to_parameter()


def parse_polynomial(text: str) -> PolyQ:
    parser = _Parser(text)
    value = parser.poly_expr()
    parser.expect_end()
    return value


# ===== 格式化 =====

def _format_scale(scale: Fraction) -> str:
    if scale == 1:
        return "x"
    if scale == -1:
        return "-x"
    return f"{format_rational(scale)}*x"


def format_document(doc: InputDocument) -> str:
    """可被 parse_expression 讀回的標準文字"""
    if doc.kind == KIND_RECURRENCE:
        return (
            f"rec: u0={format_rational(doc.u0)}; "
            f"A={doc.a_poly.format('n')}; B={doc.b_poly.format('n')}"
        )
    top = ", ".join(str(p) for p in doc.top)
    bottom = ", ".join(str(p) for p in doc.bottom)
    head = f"{parameter_count(doc.top)}F{parameter_count(doc.bottom)}" if doc.kind == KIND_PFQ else "F"
    prefix = "" if doc.u0 == 1 else f"{format_rational(doc.u0)}*"
    return f"{prefix}{head}([{top}], [{bottom}]; {_format_scale(doc.scale)})"


# ===== JSON 輸入文件 =====

def _parameter_to_json(param: Parameter) -> Dict[str, Any]:
    if isinstance(param, RationalParameter):
        return {"rational": format_rational(param.value)}
    if isinstance(param, RealAlgebraicParameter):
        return {
            "real_algebraic": {
                "minpoly": [format_rational(c) for c in param.minpoly.coeffs],
                "interval": [format_rational(param.lo), format_rational(param.hi)],
            }
        }
    return {
        "root_block": {
            "poly": [format_rational(c) for c in param.poly.coeffs],
            "multiplicity": param.multiplicity,
        }
    }


def _parameter_from_json(item: Any) -> Parameter:
    if isinstance(item, str):
        return parse_parameter(item)
    if isinstance(item, int) and not isinstance(item, bool):
        return RationalParameter(Fraction(item))
    if not isinstance(item, dict) or len(item) != 1:
        raise ExpressionSyntaxError(f"invalid parameter descriptor: {item!r}")
    (variant, body), = item.items()
    if variant == "rational":
        return RationalParameter(to_rational(body))
    if variant == "real_algebraic":
        lo, hi = body["interval"]
        return RealAlgebraicParameter(PolyQ.from_coefficients(body["minpoly"]), to_rational(lo), to_rational(hi))
    if variant == "root_block":
        return RootBlockParameter(PolyQ.from_coefficients(body["poly"]), int(body.get("multiplicity", 1)))
    raise ExpressionSyntaxError(f"unknown parameter variant: {variant!r}")


def document_to_json(doc: InputDocument) -> Dict[str, Any]:
    data: Dict[str, Any] = {"schema_version": INPUT_SCHEMA_VERSION, "kind": doc.kind}
    if doc.kind == KIND_RECURRENCE:
        data["A"] = [format_rational(c) for c in doc.a_poly.coeffs]
        data["B"] = [format_rational(c) for c in doc.b_poly.coeffs]
    else:
        data["top"] = [_parameter_to_json(p) for p in doc.top]
        data["bottom"] = [_parameter_to_json(p) for p in doc.bottom]
        data["scale"] = format_rational(doc.scale)
    data["u0"] = format_rational(doc.u0)
    return data


def document_from_json(data: Union[str, Dict[str, Any]]) -> InputDocument:
    """
    讀取 JSON 輸入文件：{"expression": "..."} 或結構化形式

    所有數值必須是整數或 "p/q" 字串，浮點數一律拒絕。
    """
    if isinstance(data, str):
        try:
            data = json.loads(data, parse_float=_reject_float)
        except json.JSONDecodeError as exc:
            raise ExpressionSyntaxError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    if "expression" in data:
        return parse_expression(data["expression"])
    kind = data.get("kind")
    try:
        u0 = to_rational(data.get("u0", 1))
        if kind == KIND_RECURRENCE:
            return InputDocument(
                KIND_RECURRENCE,
                u0=u0,
                a_poly=PolyQ.from_coefficients(data["A"]),
                b_poly=PolyQ.from_coefficients(data["B"]),
            )
        if kind in (KIND_PFQ, KIND_SCRIPT_F):
            return InputDocument(
                kind,
                tuple(_parameter_from_json(p) for p in data.get("top", [])),
                tuple(_parameter_from_json(p) for p in data.get("bottom", [])),
                to_rational(data.get("scale", 1)),
                u0,
            )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, HypergeomInputError):
            raise
        raise ExpressionSyntaxError(f"invalid input document: {exc}") from exc
    raise ExpressionSyntaxError(f"unknown input kind: {kind!r}")


def _reject_float(text: str):
    raise ExpressionSyntaxError(f"floating-point literal {text!r} not allowed")
