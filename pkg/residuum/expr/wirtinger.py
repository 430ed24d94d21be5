"""Symbolic Wirtinger derivatives, treating z and conj(z) as independent variables.

The smart constructors fold constants and drop additive zeros / multiplicative ones,
which is the only simplification performed.
"""

from typing import Callable

from .nodes import (
    MAX_EXPONENT,
    ONE,
    ZERO,
    Add,
    Const,
    Cos,
    Div,
    Exp,
    Expr,
    Log,
    Mul,
    Neg,
    PowInt,
    Sin,
    Sub,
    VarZ,
    VarZbar,
    is_const,
)


def add(a: Expr, b: Expr) -> Expr:
    if is_const(a, 0):
        return b
    if is_const(b, 0):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if is_const(b, 0):
        return a
    if is_const(a, 0):
        return neg(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    return Sub(a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def mul(a: Expr, b: Expr) -> Expr:
    if is_const(a, 0) or is_const(b, 0):
        return ZERO
    if is_const(a, 1):
        return b
    if is_const(b, 1):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if is_const(a, 0):
        return ZERO
    if is_const(b, 1):
        return a
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0:
        return Const(a.value / b.value)
    return Div(a, b)


def power(base: Expr, n: int) -> Expr:
    if n == 0:
        return ONE
    if n == 1:
        return base
    if isinstance(base, Const) and not (base.value == 0 and n < 0):
        return Const(base.value ** n)
    return PowInt(base, n)


def _derive(e: Expr, d: Callable[[Expr], Expr], wrt_z: bool) -> Expr:
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, VarZ):
        return ONE if wrt_z else ZERO
    if isinstance(e, VarZbar):
        return ZERO if wrt_z else ONE
    if isinstance(e, Neg):
        return neg(d(e.operand))
    if isinstance(e, Add):
        return add(d(e.left), d(e.right))
    if isinstance(e, Sub):
        return sub(d(e.left), d(e.right))
    if isinstance(e, Mul):
        return add(mul(d(e.left), e.right), mul(e.left, d(e.right)))
    if isinstance(e, Div):
        dl, dr = d(e.left), d(e.right)
        return sub(div(dl, e.right), div(mul(e.left, dr), power(e.right, 2)))
    if isinstance(e, PowInt):
        inner = d(e.base)
        if e.exponent - 1 < -MAX_EXPONENT:
            lowered = div(e, e.base)
        else:
            lowered = power(e.base, e.exponent - 1)
        return mul(mul(Const(complex(e.exponent)), lowered), inner)
    inner = d(e.operand)
    if is_const(inner, 0):
        return ZERO
    if isinstance(e, Exp):
        return mul(e, inner)
    if isinstance(e, Log):
        return div(inner, e.operand)
    if isinstance(e, Sin):
        return mul(Cos(e.operand), inner)
    if isinstance(e, Cos):
        return neg(mul(Sin(e.operand), inner))
    raise TypeError(f"unsupported expression node {type(e).__name__}")


def wirtinger_dz(e: Expr) -> Expr:
    """d/dz = (d/dx - i d/dy) / 2"""
    return _derive(e, wirtinger_dz, True)


def wirtinger_dzbar(e: Expr) -> Expr:
    """d/dconj(z) = (d/dx + i d/dy) / 2"""
    return _derive(e, wirtinger_dzbar, False)


def derivative_along_real_axis(e: Expr) -> Expr:
    """d/dx on the real axis: the sum of both Wirtinger derivatives"""
    return add(wirtinger_dz(e), wirtinger_dzbar(e))


def substitute(e: Expr, z_expr: Expr, zbar_expr: Expr) -> Expr:
    """Replace z by `z_expr` and conj(z) by `zbar_expr` (the caller keeps them conjugate)"""
    if isinstance(e, VarZ):
        return z_expr
    if isinstance(e, VarZbar):
        return zbar_expr
    if isinstance(e, Const):
        return e
    if isinstance(e, (Add, Sub, Mul, Div)):
        return type(e)(substitute(e.left, z_expr, zbar_expr), substitute(e.right, z_expr, zbar_expr))
    if isinstance(e, PowInt):
        return PowInt(substitute(e.base, z_expr, zbar_expr), e.exponent)
    return type(e)(substitute(e.operand, z_expr, zbar_expr))


def translate(e: Expr, shift: complex) -> Expr:
    """The expression of z -> f(z - shift)"""
    c = Const(complex(shift))
    return substitute(e, Sub(VarZ(), c), Sub(VarZbar(), Const(complex(shift).conjugate())))


def invert_about(e: Expr, center: complex, conjugate_weight: bool = False) -> Expr:
    """The expression of w -> w^-2 f(center + 1/w), or conj(w)^-2 f(center + 1/w)"""
    c = complex(center)
    z_expr = Add(Const(c), Div(ONE, VarZ()))
    zbar_expr = Add(Const(c.conjugate()), Div(ONE, VarZbar()))
    weight = PowInt(VarZbar() if conjugate_weight else VarZ(), -2)
    return Mul(weight, substitute(e, z_expr, zbar_expr))


def is_zero(e: Expr) -> bool:
    return is_const(e, 0)
