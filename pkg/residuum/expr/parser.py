"""Recursive descent parser for the expression language.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' INT)?
    atom   := NUMBER | 'i' | 'z' | 'conj(z)' | FUNC '(' expr ')' | '(' expr ')' | '-' atom
    FUNC   := exp | log | sin | cos

A minus sign directly in front of a NUMBER or `i` is folded into the constant, which
is what lets the printer round-trip negative constants.
"""

import re
from dataclasses import dataclass
from typing import List

from ..errors import ExponentRangeError, ExprArityError, ExprSyntaxError
from .nodes import (
    MAX_EXPONENT,
    UNARY_FUNCTIONS,
    Add,
    Const,
    Div,
    Expr,
    Mul,
    Neg,
    PowInt,
    Sub,
    VarZ,
    VarZbar,
)

_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_PUNCT = set("+-*/^(),")

ATOM_STARTS = ["NUMBER", "i", "z", "conj", "exp", "log", "sin", "cos", "(", "-"]


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER, IDENT, a punctuation character, or EOF
    text: str
    offset: int  # byte offset into the UTF-8 source


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    byte_pos = 0
    while pos < len(source):
        ch = source[pos]
        if ch.isspace():
            byte_pos += len(ch.encode("utf-8"))
            pos += 1
            continue
        match = _NUMBER.match(source, pos)
        if match:
            tokens.append(Token("NUMBER", match.group(0), byte_pos))
        else:
            match = _IDENT.match(source, pos)
            if match:
                tokens.append(Token("IDENT", match.group(0), byte_pos))
            elif ch in _PUNCT:
                tokens.append(Token(ch, ch, byte_pos))
                byte_pos += 1
                pos += 1
                continue
            else:
                raise ExprSyntaxError(f"unexpected character {ch!r}", byte_pos, ATOM_STARTS)
        text = match.group(0)
        byte_pos += len(text.encode("utf-8"))
        pos = match.end()
    tokens.append(Token("EOF", "", byte_pos))
    return tokens


class Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "EOF":
            self.index += 1
        return token

    def expect(self, kind: str, text: str = None) -> Token:
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            raise ExprSyntaxError(f"unexpected {self._describe(token)}", token.offset, [text or kind])
        return self.advance()

    @staticmethod
    def _describe(token: Token) -> str:
        return "end of input" if token.kind == "EOF" else f"token {token.text!r}"

    def parse(self) -> Expr:
        node = self.parse_expr()
        token = self.current
        if token.kind != "EOF":
            raise ExprSyntaxError(
                f"unexpected {self._describe(token)}", token.offset, ["+", "-", "*", "/", "^", "EOF"]
            )
        return node

    def parse_expr(self) -> Expr:
        node = self.parse_term()
        while self.current.kind in ("+", "-"):
            op = self.advance().kind
            right = self.parse_term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def parse_term(self) -> Expr:
        node = self.parse_factor()
        while self.current.kind in ("*", "/"):
            op = self.advance().kind
            right = self.parse_factor()
            node = Mul(node, right) if op == "*" else Div(node, right)
        return node

    def parse_factor(self) -> Expr:
        node = self.parse_atom()
        if self.current.kind == "^":
            self.advance()
            node = PowInt(node, self.parse_int())
        return node

    def parse_int(self) -> int:
        sign = 1
        start = self.current.offset
        if self.current.kind in ("+", "-"):
            sign = -1 if self.advance().kind == "-" else 1
        token = self.current
        if token.kind != "NUMBER" or not token.text.isdigit():
            raise ExprSyntaxError(f"unexpected {self._describe(token)}", token.offset, ["INT"])
        self.advance()
        exponent = sign * int(token.text)
        if abs(exponent) > MAX_EXPONENT:
            raise ExponentRangeError(exponent, start)
        return exponent

    def parse_atom(self) -> Expr:
        token = self.current
        if token.kind == "NUMBER":
            self.advance()
            return Const(complex(float(token.text), 0.0))
        if token.kind == "-":
            self.advance()
            following = self.current
            if following.kind == "NUMBER":
                self.advance()
                return Const(complex(-float(following.text), 0.0))
            if following.kind == "IDENT" and following.text == "i":
                self.advance()
                return Const(complex(0.0, -1.0))
            return Neg(self.parse_atom())
        if token.kind == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        if token.kind == "IDENT":
            name = token.text
            if name == "i":
                self.advance()
                return Const(complex(0.0, 1.0))
            if name == "z":
                self.advance()
                return VarZ()
            if name == "conj":
                return self.parse_conj()
            if name in UNARY_FUNCTIONS:
                self.advance()
                args = self.parse_arguments()
                if len(args) != 1:
                    raise ExprArityError(name, 1, len(args), token.offset)
                return UNARY_FUNCTIONS[name](args[0])
            raise ExprSyntaxError(f"unknown name {name!r}", token.offset, ATOM_STARTS)
        raise ExprSyntaxError(f"unexpected {self._describe(token)}", token.offset, ATOM_STARTS)

    def parse_arguments(self) -> List[Expr]:
        self.expect("(")
        args = [self.parse_expr()]
        while self.current.kind == ",":
            self.advance()
            args.append(self.parse_expr())
        self.expect(")")
        return args

    def parse_conj(self) -> Expr:
        start = self.advance()
        self.expect("(")
        token = self.current
        if token.kind != "IDENT" or token.text != "z":
            raise ExprSyntaxError("conj applies to the variable z only", token.offset, ["z"])
        self.advance()
        if self.current.kind == ",":
            count = 1
            while self.current.kind == ",":
                self.advance()
                self.parse_expr()
                count += 1
            raise ExprArityError("conj", 1, count, start.offset)
        self.expect(")")
        return VarZbar()


def parse(source: str) -> Expr:
    """Parse expression source text into an AST"""
    return Parser(source).parse()
