import math

from .nodes import (
    FUNCTION_NAMES,
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

_BINARY_SYMBOLS = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def _real_text(x: float) -> str:
    if math.copysign(1.0, x) < 0:
        return "-" + repr(-x)
    return repr(x)


def _const_text(c: complex) -> str:
    if c.imag == 0:
        return _real_text(c.real)
    if c.real == 0 and c.imag == 1:
        return "i"
    if c.real == 0 and c.imag == -1:
        return "-i"
    if c.real == 0:
        return f"({_real_text(c.imag)} * i)"
    return f"({_real_text(c.real)} + {_real_text(c.imag)} * i)"


def to_source(e: Expr) -> str:
    """Print an expression so that parse(to_source(e)) == e.

    Binary operators are always parenthesised. Constants with both a real and an
    imaginary part print as a sum and therefore re-parse to an equivalent, not
    identical, tree.
    """
    if isinstance(e, Const):
        return _const_text(e.value)
    if isinstance(e, VarZ):
        return "z"
    if isinstance(e, VarZbar):
        return "conj(z)"
    if isinstance(e, Neg):
        inner = to_source(e.operand)
        if isinstance(e.operand, (Const, PowInt, Neg)):
            return f"-({inner})"
        return f"-{inner}"
    if isinstance(e, tuple(_BINARY_SYMBOLS)):
        return f"({to_source(e.left)} {_BINARY_SYMBOLS[type(e)]} {to_source(e.right)})"
    if isinstance(e, PowInt):
        base = to_source(e.base)
        if isinstance(e.base, PowInt):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    return f"{FUNCTION_NAMES[type(e)]}({to_source(e.operand)})"
