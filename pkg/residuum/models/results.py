import json
from typing import Dict, List, Literal, Optional, Sequence, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .numbers import Complex, ExtendedComplex


class ExcisionSpec(BaseModel):
    """Points to excise and the geometric radii schedule eps_m = eps0 * q**m, m = 0..M"""

    model_config = ConfigDict(frozen=True)

    points: List[Complex] = Field(default_factory=list)
    eps0: float = 0.1
    q: float = 0.5
    steps: int = 8

    @field_validator("eps0")
    @classmethod
    def _positive_eps0(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("eps0 must be positive")
        return value

    @field_validator("q")
    @classmethod
    def _ratio_in_unit_interval(cls, value: float) -> float:
        if not 0 < value < 1:
            raise ValueError("q must lie in (0, 1)")
        return value

    @field_validator("steps")
    @classmethod
    def _enough_steps(cls, value: int) -> int:
        if value < 3:
            raise ValueError("at least 3 schedule steps (M >= 3) are required")
        return value

    def radii(self) -> List[float]:
        return [self.eps0 * self.q ** m for m in range(self.steps + 1)]

    def with_points(self, points: List[complex]) -> "ExcisionSpec":
        return self.model_copy(update={"points": list(points)})

    def capped(self, eps_max: float) -> "ExcisionSpec":
        """Same schedule shape with eps0 no larger than `eps_max`"""
        if self.eps0 <= eps_max:
            return self
        return self.model_copy(update={"eps0": eps_max})


class ConvergenceRow(BaseModel):
    """One row of a convergence table: step, schedule parameter, value, error estimate"""

    step: int
    param: float
    value: Complex
    err_estimate: float


class QuadResult(BaseModel):
    value: Complex
    abs_error_estimate: float = Field(ge=0.0)
    evaluations: int = Field(ge=1)
    converged: bool = True
    table: List[ConvergenceRow] = Field(default_factory=list)


class ResiduePair(BaseModel):
    """Classical and conjugate residue; res_star is None when its limit depends on the ray"""

    res: Complex
    res_star: Optional[Complex]
    error_estimate: float = 0.0
    method: str = "small_circle"
    table: List[ConvergenceRow] = Field(default_factory=list)


class SectorLimit(BaseModel):
    """z- and zbar-component limits of the weighted function inside one sector.

    `converged` refers to the z-component; `a_zbar` is None when the conjugate limit is
    missing or differs between the sampled rays.
    """

    sector: int
    angle_lo: float
    angle_hi: float
    a_z: Complex
    a_zbar: Optional[Complex] = None
    converged: bool
    error_estimate: float = 0.0

    @property
    def width(self) -> float:
        return self.angle_hi - self.angle_lo


class SectorLimits(BaseModel):
    center: Complex
    at: Literal["zero", "infinity"]
    limits: List[SectorLimit]

    def all_converged(self) -> bool:
        return all(limit.converged for limit in self.limits)


class Potential(BaseModel):
    value: Complex
    kind: Literal["Interior", "Exterior", "BoundaryInteriorArc", "BoundaryExteriorArc"]
    winding: int
    interior_angle: Optional[float] = None
    outside_simple_scope: bool = False


class MatchedRadiusRow(BaseModel):
    step: int
    delta: float
    excised: Complex
    jumps: Complex
    total: Complex
    residual: float


class ImproperResult(BaseModel):
    vp: ExtendedComplex
    vs: ExtendedComplex
    vt: Complex
    vt_check: Complex
    agreement: float
    branch_convention: str = "principal log, Im in (-pi, pi]"
    table: List[MatchedRadiusRow] = Field(default_factory=list)


class NamedValue(BaseModel):
    name: str
    value: Complex


class VerificationReport(BaseModel):
    """Outcome of one numerical identity check, with every term it is built from"""

    model_config = ConfigDict(populate_by_name=True)

    name: str
    lhs: Complex
    rhs: Complex
    abs_gap: float
    tolerance: float
    passed: bool = Field(alias="pass")
    status: Literal["pass", "fail", "not_applicable"]
    details: List[NamedValue] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _pass_matches_gap(self) -> "VerificationReport":
        if self.status != "not_applicable" and self.passed != (self.abs_gap <= self.tolerance):
            raise ValueError("pass must hold exactly when abs_gap <= tolerance")
        return self

    @classmethod
    def build(cls, name: str, lhs: complex, rhs: complex, tolerance: float,
              details: Dict[str, complex], notes: Optional[List[str]] = None,
              companions: Sequence[Tuple[complex, complex]] = ()) -> "VerificationReport":
        """`companions` are further (lhs, rhs) pairs of the same identity; the gap is the largest of all"""
        gap = max([abs(lhs - rhs)] + [abs(a - b) for a, b in companions])
        passed = gap <= tolerance
        return cls(
            name=name,
            lhs=lhs,
            rhs=rhs,
            abs_gap=gap,
            tolerance=tolerance,
            passed=passed,
            status="pass" if passed else "fail",
            details=[NamedValue(name=key, value=value) for key, value in details.items()],
            notes=list(notes or []),
        )

    @classmethod
    def not_applicable(cls, name: str, tolerance: float, reason: str,
                       details: Optional[Dict[str, complex]] = None) -> "VerificationReport":
        return cls(
            name=name,
            lhs=0j,
            rhs=0j,
            abs_gap=0.0,
            tolerance=tolerance,
            passed=False,
            status="not_applicable",
            details=[NamedValue(name=key, value=value) for key, value in (details or {}).items()],
            notes=[reason],
        )

    def detail(self, name: str) -> complex:
        for item in self.details:
            if item.name == name:
                return item.value
        raise KeyError(name)


class AnalyticityReport(BaseModel):
    kind: Literal["RegularAnalytic", "SingularAnalytic", "NonAnalytic"]
    vanishing_derivative: Optional[Literal["dzbar", "dz"]] = None
    witness_points: List[Complex] = Field(default_factory=list)
    max_abs_dzbar: float
    max_abs_dz: float


def reports_to_dataframe(reports: List[VerificationReport]) -> pd.DataFrame:
    rows: List[Dict[str, object]] = []
    for report in reports:
        rows.append(
            {
                "name": report.name,
                "status": report.status,
                "abs_gap": report.abs_gap,
                "tolerance": report.tolerance,
                "lhs": report.lhs,
                "rhs": report.rhs,
                "details": json.dumps({d.name: [d.value.real, d.value.imag] for d in report.details}),
            }
        )
    return pd.DataFrame(rows, columns=["name", "status", "abs_gap", "tolerance", "lhs", "rhs", "details"])


def convergence_to_dataframe(rows: List[ConvergenceRow]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "step": row.step,
                "param": row.param,
                "value_re": row.value.real,
                "value_im": row.value.imag,
                "err_estimate": row.err_estimate,
            }
            for row in rows
        ],
        columns=["step", "param", "value_re", "value_im", "err_estimate"],
    )


class InfinityResiduePair(ResiduePair):
    """Residue at infinity from the finite residues, with the large-circle and inversion routes beside it"""

    large_circle_res: Optional[Complex] = None
    large_circle_res_star: Optional[Complex] = None
    large_circle_error: float = 0.0
    inversion_res: Optional[Complex] = None
    inversion_res_star: Optional[Complex] = None
    discrepancy: Optional[float] = None
