"""Deterministic rendering of numbers and reports for the CLI streams."""

import cmath
import json
import math
from typing import Any, List

import numpy as np
import pandas as pd
from pydantic import BaseModel

from .models.numbers import ExtendedComplex
from .models.results import ConvergenceRow, VerificationReport, convergence_to_dataframe

CSV_COLUMNS = ["step", "param", "value_re", "value_im", "err_estimate"]


def format_float(x: float) -> str:
    """Shortest round-trip digits in lowercase e-notation: 6.283185307179586e0, 1e-9, 0"""
    x = float(x)
    if x == 0:
        return "0"
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    text = np.format_float_scientific(x, unique=True, trim="-", exp_digits=1)
    return text.replace("e+", "e")


def format_complex(z: complex) -> str:
    re_text = format_float(z.real)
    im_text = format_float(z.imag)
    if im_text.startswith("-"):
        return f"{re_text}-{im_text[1:]}i"
    return f"{re_text}+{im_text}i"


def format_extended(value: ExtendedComplex) -> str:
    if value.is_finite:
        return format_complex(value.value)
    return f"inf*({format_complex(value.direction)})"


def to_plain(value: Any) -> Any:
    """Convert models and numbers into JSON-ready values with fixed float text"""
    if isinstance(value, BaseModel):
        return to_plain(value.model_dump(by_alias=True, mode="python"))
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return format_complex(complex(value))
    if isinstance(value, dict):
        if set(value) == {"re", "im"}:
            return format_complex(complex(value["re"], value["im"]))
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    return str(value)


def dumps(value: Any) -> str:
    return json.dumps(to_plain(value), sort_keys=False, separators=(",", ":"), ensure_ascii=True)


def convergence_csv(rows: List[ConvergenceRow]) -> str:
    df = convergence_to_dataframe(rows)
    for column in CSV_COLUMNS[1:]:
        df[column] = df[column].map(format_float)
    return df.to_csv(index=False, lineterminator="\n")


def _cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return value
    if isinstance(value, (complex, np.complexfloating)):
        # pandas stores a missing complex as nan+0j
        return "" if cmath.isnan(value) else format_complex(complex(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return value


def _formatted(df: pd.DataFrame) -> pd.DataFrame:
    formatted = df.copy()
    for column in formatted.columns:
        kind = formatted[column].dtype.kind
        if kind == "f":
            formatted[column] = formatted[column].map(format_float)
        elif kind in "cO":
            # res_star is None where its limit depends on the ray
            formatted[column] = formatted[column].map(_cell)
    return formatted


def table_csv(df: pd.DataFrame) -> str:
    return _formatted(df).to_csv(index=False, lineterminator="\n")


def table_text(df: pd.DataFrame) -> str:
    if df.empty:
        return "(no rows)\n"
    return _formatted(df).to_string(index=False) + "\n"


def summary_table(reports: List[VerificationReport]) -> str:
    """Human readable summary: one line per report"""
    df = pd.DataFrame(
        [
            {
                "name": r.name,
                "status": r.status,
                "abs_gap": format_float(r.abs_gap),
                "tolerance": format_float(r.tolerance),
            }
            for r in reports
        ],
        columns=["name", "status", "abs_gap", "tolerance"],
    )
    passed = sum(1 for r in reports if r.status == "pass")
    failed = sum(1 for r in reports if r.status == "fail")
    skipped = len(reports) - passed - failed
    footer = f"{passed} passed, {failed} failed, {skipped} not applicable"
    if df.empty:
        return footer + "\n"
    return df.to_string(index=False) + "\n" + footer + "\n"
