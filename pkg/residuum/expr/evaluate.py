from typing import Union

import numpy as np

from ..errors import DivisionByZeroError, LogOfZeroError, NonFiniteValueError
from .nodes import (
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
)

ArrayLike = Union[np.ndarray, complex, float]


def _first(mask: np.ndarray, zs: np.ndarray) -> complex:
    return complex(zs[np.flatnonzero(mask)[0]])


def _int_power(base: np.ndarray, n: int, zs: np.ndarray) -> np.ndarray:
    if n < 0 and np.any(base == 0):
        raise DivisionByZeroError("zero raised to a negative power", _first(base == 0, zs))
    result = np.ones_like(base)
    square = base
    k = abs(n)
    while k:
        if k & 1:
            result = result * square
        square = square * square
        k >>= 1
    return 1.0 / result if n < 0 else result


def _eval(e: Expr, zs: np.ndarray) -> np.ndarray:
    if isinstance(e, Const):
        return np.full(zs.shape, e.value, dtype=complex)
    if isinstance(e, VarZ):
        return zs
    if isinstance(e, VarZbar):
        return np.conj(zs)
    if isinstance(e, Neg):
        return -_eval(e.operand, zs)
    if isinstance(e, Add):
        return _eval(e.left, zs) + _eval(e.right, zs)
    if isinstance(e, Sub):
        return _eval(e.left, zs) - _eval(e.right, zs)
    if isinstance(e, Mul):
        return _eval(e.left, zs) * _eval(e.right, zs)
    if isinstance(e, Div):
        numerator = _eval(e.left, zs)
        denominator = _eval(e.right, zs)
        zero = denominator == 0
        if np.any(zero):
            raise DivisionByZeroError("division by zero", _first(zero, zs))
        return numerator / denominator
    if isinstance(e, PowInt):
        return _int_power(_eval(e.base, zs), e.exponent, zs)
    if isinstance(e, Exp):
        return np.exp(_eval(e.operand, zs))
    if isinstance(e, Log):
        arg = _eval(e.operand, zs)
        zero = arg == 0
        if np.any(zero):
            raise LogOfZeroError("logarithm of zero", _first(zero, zs))
        # a signed zero imaginary part would select -pi on the cut
        arg = np.where(arg.imag == 0, arg.real + 0j, arg)
        return np.log(arg)
    if isinstance(e, Sin):
        return np.sin(_eval(e.operand, zs))
    if isinstance(e, Cos):
        return np.cos(_eval(e.operand, zs))
    raise TypeError(f"unsupported expression node {type(e).__name__}")


def evaluate_array(e: Expr, zs: ArrayLike) -> np.ndarray:
    """Evaluate `e` at every point of `zs` (conj(z) is the conjugate of each point)"""
    points = np.asarray(zs, dtype=complex)
    flat = points.reshape(-1)
    with np.errstate(all="ignore"):
        values = _eval(e, flat)
    bad = ~np.isfinite(values)
    if np.any(bad):
        raise NonFiniteValueError("expression is not finite", _first(bad, flat))
    return values.reshape(points.shape)


def evaluate(e: Expr, z: complex) -> complex:
    return complex(evaluate_array(e, np.array([z], dtype=complex))[0])
