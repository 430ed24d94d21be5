"""Validated configuration of one CLI run, read from a JSON file and overridden by flags."""

import json
import math
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import ConfigError
from ..geometry.contour import Contour, circle_contour, make_keyhole, polygon_contour, square_contour
from ..geometry.domains import AnnularSector, Annulus, Disc, PlanarDomain, Rectangle
from ..geometry.sectors import SectorDecomposition
from .numbers import Complex
from .results import ExcisionSpec

Command = Literal["winding", "integrate", "residue", "improper", "verify"]
OutputFormat = Literal["json", "csv", "text"]
ResidueMethod = Literal["small_circle", "sectors", "infinity"]


def _numbers(body: str, field: str, count: Optional[int] = None, sep: str = ",") -> List[float]:
    try:
        values = [float(part) for part in body.split(sep)]
    except ValueError as exc:
        raise ConfigError(f"cannot read numbers from {body!r}", field=field) from exc
    if count is not None and len(values) != count:
        raise ConfigError(f"expected {count} numbers, got {len(values)} in {body!r}", field=field)
    if not all(math.isfinite(v) for v in values):
        raise ConfigError(f"numbers must be finite in {body!r}", field=field)
    return values


def _split_kind(text: str, field: str):
    kind, sep, body = text.partition(":")
    if not sep:
        raise ConfigError(f"shorthand {text!r} needs the form kind:values", field=field)
    return kind.strip().lower(), body.strip()


def parse_contour(text: str) -> Contour:
    """circle:cx,cy,r | square:cx,cy,side | polygon:x1,y1;x2,y2;... | keyhole:cx,cy,R,delta,cut,gap"""
    kind, body = _split_kind(text, "contour")
    if kind == "circle":
        cx, cy, r = _numbers(body, "contour", 3)
        return circle_contour(complex(cx, cy), r)
    if kind == "square":
        cx, cy, side = _numbers(body, "contour", 3)
        return square_contour(complex(cx, cy), side)
    if kind == "polygon":
        vertices = [complex(*_numbers(pair, "contour", 2)) for pair in body.split(";") if pair.strip()]
        return polygon_contour(vertices)
    if kind == "keyhole":
        cx, cy, R, delta, cut, gap = _numbers(body, "contour", 6)
        return make_keyhole(complex(cx, cy), R, delta, cut, gap)
    raise ConfigError(f"unknown contour kind {kind!r}; use circle, square, polygon or keyhole", field="contour")


def parse_domain(text: str):
    """disc:cx,cy,R | annulus:cx,cy,r,R | sector:cx,cy,r,R,lo,hi | rect:xlo,xhi,ylo,yhi"""
    kind, body = _split_kind(text, "domain")
    if kind == "disc":
        cx, cy, R = _numbers(body, "domain", 3)
        return Disc(center=complex(cx, cy), R=R)
    if kind == "annulus":
        cx, cy, r, R = _numbers(body, "domain", 4)
        return Annulus(center=complex(cx, cy), r=r, R=R)
    if kind == "sector":
        cx, cy, r, R, lo, hi = _numbers(body, "domain", 6)
        return AnnularSector(center=complex(cx, cy), r=r, R=R, phi_lo=lo, phi_hi=hi)
    if kind == "rect":
        x_lo, x_hi, y_lo, y_hi = _numbers(body, "domain", 4)
        return Rectangle(x_lo=x_lo, x_hi=x_hi, y_lo=y_lo, y_hi=y_hi)
    raise ConfigError(f"unknown domain kind {kind!r}; use disc, annulus, sector or rect", field="domain")


def parse_sectors(text: str) -> SectorDecomposition:
    """angles:a1,a2,... around the origin; the residue command recentres them on the point"""
    kind, body = _split_kind(text, "sectors")
    if kind != "angles":
        raise ConfigError(f"unknown sectors kind {kind!r}; use angles:a1,a2,...", field="sectors")
    return SectorDecomposition(angles=_numbers(body, "sectors"))


def parse_schedule(text: str) -> ExcisionSpec:
    """eps0,q,steps"""
    eps0, q, steps = _numbers(text, "schedule", 3)
    if steps != int(steps):
        raise ConfigError(f"schedule steps must be an integer, got {steps}", field="schedule")
    return ExcisionSpec(eps0=eps0, q=q, steps=int(steps))


class JobConfig(BaseModel):
    """Everything one command needs; geometry is validated before any computation runs"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    expression: Optional[str] = Field(default=None, description="f(z, conj(z)); the antiderivative F for improper")
    contour: Optional[Contour] = None
    domain: Optional[PlanarDomain] = None
    sectors: Optional[SectorDecomposition] = None
    points: List[Complex] = Field(default_factory=list)
    sing: List[Complex] = Field(default_factory=list, description="declared singular points")
    measure: Literal["dz", "dzbar"] = "dz"
    convention: Literal["interior", "exterior"] = "interior"
    method: ResidueMethod = "small_circle"
    a: Optional[float] = None
    b: Optional[float] = None
    tol: Optional[float] = Field(default=None, gt=0)
    schedule: Optional[ExcisionSpec] = None
    format: OutputFormat = "json"
    out: Optional[str] = None
    suite: str = "all"
    checks: List[str] = Field(default_factory=list)
    history_db: Optional[str] = None

    @field_validator("contour", mode="before")
    @classmethod
    def _contour_shorthand(cls, value: Any) -> Any:
        return parse_contour(value) if isinstance(value, str) else value

    @field_validator("domain", mode="before")
    @classmethod
    def _domain_shorthand(cls, value: Any) -> Any:
        return parse_domain(value) if isinstance(value, str) else value

    @field_validator("sectors", mode="before")
    @classmethod
    def _sectors_shorthand(cls, value: Any) -> Any:
        return parse_sectors(value) if isinstance(value, str) else value

    @field_validator("schedule", mode="before")
    @classmethod
    def _schedule_shorthand(cls, value: Any) -> Any:
        return parse_schedule(value) if isinstance(value, str) else value

    @model_validator(mode="after")
    def _check_command_inputs(self) -> "JobConfig":
        if self.command in ("integrate", "residue", "improper") and not self.expression:
            raise ConfigError(f"{self.command} needs an expression", field="expression")

        if self.command == "winding":
            if self.contour is None:
                raise ConfigError("winding needs a contour", field="contour")
            if not self.points:
                raise ConfigError("winding needs at least one point", field="points")
            if not self.contour.closed:
                raise ConfigError("winding needs a closed contour", field="contour")

        elif self.command == "integrate":
            if (self.contour is None) == (self.domain is None):
                raise ConfigError("integrate needs exactly one of contour or domain", field="contour")

        elif self.command == "residue":
            if not self.points:
                raise ConfigError("residue needs at least one point", field="points")
            if self.method == "sectors" and self.sectors is None:
                raise ConfigError("the sectors method needs a sector decomposition", field="sectors")

        elif self.command == "improper":
            if self.a is None or self.b is None:
                raise ConfigError("improper needs both a and b", field="a")
            if any(s.imag != 0 for s in self.sing):
                raise ConfigError("singular points of an improper integral must be real", field="sing")
        return self

    @classmethod
    def load(cls, command: str, config_path: Optional[str] = None,
             overrides: Optional[Dict[str, Any]] = None) -> "JobConfig":
        """Fields from the JSON file at `config_path`, then every flag that was actually given"""
        data: Dict[str, Any] = {}
        if config_path:
            try:
                with open(config_path) as f:
                    data = json.load(f)
            except OSError as exc:
                raise ConfigError(f"cannot read config file {config_path}: {exc}", field="config") from exc
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config file {config_path} is not valid JSON: {exc}", field="config") from exc
            if not isinstance(data, dict):
                raise ConfigError("config file must hold a JSON object", field="config")
            if data.get("command", command) != command:
                raise ConfigError(f"config file is for {data['command']!r}, not {command!r}", field="command")

        data["command"] = command
        for key, value in (overrides or {}).items():
            if value is None or value == []:
                continue
            data[key] = value
        return cls.model_validate(data)


if __name__ == "__main__":
    print(json.dumps(JobConfig.model_json_schema(), indent=2))
