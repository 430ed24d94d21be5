import cmath
import math
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer, WithJsonSchema, model_validator


def parse_complex(value: Any) -> complex:
    """Accept {"re", "im"}, [re, im], "re,im", a plain number or a Python complex"""
    if isinstance(value, complex):
        result = value
    elif isinstance(value, bool):
        raise ValueError("booleans are not complex numbers")
    elif isinstance(value, (int, float)):
        result = complex(value, 0.0)
    elif isinstance(value, dict):
        if set(value) - {"re", "im"}:
            raise ValueError(f"unexpected keys in complex object: {sorted(value)}")
        result = complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    elif isinstance(value, (list, tuple)) and len(value) == 2:
        result = complex(float(value[0]), float(value[1]))
    elif isinstance(value, str):
        parts = [p.strip() for p in value.split(",")]
        if len(parts) == 1:
            result = complex(float(parts[0]), 0.0)
        elif len(parts) == 2:
            result = complex(float(parts[0]), float(parts[1]))
        else:
            raise ValueError(f"cannot read complex number from {value!r}; use 're,im'")
    else:
        raise ValueError(f"cannot read complex number from {value!r}")

    if not (math.isfinite(result.real) and math.isfinite(result.imag)):
        raise ValueError(f"complex number must be finite, got {result!r}")
    return result


def dump_complex(value: complex) -> dict:
    return {"re": value.real, "im": value.imag}


Complex = Annotated[
    complex,
    BeforeValidator(parse_complex),
    PlainSerializer(dump_complex, return_type=dict),
    WithJsonSchema(
        {
            "type": "object",
            "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
            "required": ["re", "im"],
        }
    ),
]


class ExtendedComplex(BaseModel):
    """A finite complex value or a signed infinity given by its unit direction"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["finite", "infinite"]
    value: Optional[Complex] = None
    direction: Optional[Complex] = None

    @model_validator(mode="after")
    def _check_shape(self) -> "ExtendedComplex":
        if self.kind == "finite":
            if self.value is None or self.direction is not None:
                raise ValueError("finite values carry `value` only")
        else:
            if self.direction is None or self.value is not None:
                raise ValueError("infinite values carry `direction` only")
            if abs(abs(self.direction) - 1.0) > 1e-12:
                raise ValueError("infinite direction must have unit modulus")
        return self

    @classmethod
    def finite(cls, value: complex) -> "ExtendedComplex":
        return cls(kind="finite", value=value)

    @classmethod
    def infinite(cls, direction: complex) -> "ExtendedComplex":
        magnitude = abs(direction)
        if magnitude == 0:
            raise ValueError("infinite direction must be non-zero")
        unit = direction / magnitude
        # snap to the axes so that +1 / -1 / +i / -i compare exactly
        for axis in (1, -1, 1j, -1j):
            if abs(unit - axis) < 1e-9:
                unit = complex(axis)
        return cls(kind="infinite", direction=unit)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __add__(self, other: "ExtendedComplex") -> "ExtendedComplex":
        if self.is_finite and other.is_finite:
            return ExtendedComplex.finite(self.value + other.value)
        if self.is_finite:
            return other
        if other.is_finite:
            return self
        if abs(self.direction - other.direction) < 1e-9:
            return self
        raise ValueError("sum of infinities with different directions is indefinite")

    def describe(self) -> str:
        if self.is_finite:
            return repr(self.value)
        return f"inf*({self.direction!r})"


def unit_phase(value: complex) -> complex:
    """Unit complex number with the phase of `value`"""
    return cmath.exp(1j * cmath.phase(value)) if value != 0 else 0j


ComplexLike = Union[complex, float, int]
