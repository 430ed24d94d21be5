"""AST node types for expressions in the two formal variables z and conj(z).

Nodes are frozen dataclasses, so structural equality is plain `==` and values can
be shared freely between threads.
"""

from dataclasses import dataclass
from typing import Union

MAX_EXPONENT = 64


@dataclass(frozen=True)
class Const:
    value: complex


@dataclass(frozen=True)
class VarZ:
    pass


@dataclass(frozen=True)
class VarZbar:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class PowInt:
    base: "Expr"
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or abs(self.exponent) > MAX_EXPONENT:
            raise ValueError(f"integer exponent must satisfy |n| <= {MAX_EXPONENT}")


@dataclass(frozen=True)
class Exp:
    operand: "Expr"


@dataclass(frozen=True)
class Log:
    """Principal logarithm, Im in (-pi, pi], cut along the negative real axis"""

    operand: "Expr"


@dataclass(frozen=True)
class Sin:
    operand: "Expr"


@dataclass(frozen=True)
class Cos:
    operand: "Expr"


Expr = Union[Const, VarZ, VarZbar, Neg, Add, Sub, Mul, Div, PowInt, Exp, Log, Sin, Cos]

BINARY_NODES = (Add, Sub, Mul, Div)
UNARY_FUNCTIONS = {"exp": Exp, "log": Log, "sin": Sin, "cos": Cos}
FUNCTION_NAMES = {cls: name for name, cls in UNARY_FUNCTIONS.items()}

Z = VarZ()
ZBAR = VarZbar()
ZERO = Const(0j)
ONE = Const(1 + 0j)


def is_const(e: Expr, value: complex = None) -> bool:
    if not isinstance(e, Const):
        return False
    return value is None or e.value == value


def children(e: Expr):
    if isinstance(e, (Const, VarZ, VarZbar)):
        return ()
    if isinstance(e, BINARY_NODES):
        return (e.left, e.right)
    if isinstance(e, PowInt):
        return (e.base,)
    return (e.operand,)


def contains(e: Expr, node_type) -> bool:
    if isinstance(e, node_type):
        return True
    return any(contains(child, node_type) for child in children(e))


def free_of_zbar(e: Expr) -> bool:
    """Structurally holomorphic: conj(z) never appears"""
    return not contains(e, VarZbar)


def free_of_z(e: Expr) -> bool:
    """Structurally anti-holomorphic: z never appears"""
    return not contains(e, VarZ)
