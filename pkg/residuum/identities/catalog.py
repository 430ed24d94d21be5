"""Fixed, versioned set of test functions for the planar residue identity."""

from typing import List

from pydantic import BaseModel, ConfigDict, Field

from ..expr import Expr, parse
from ..geometry.contour import Contour
from ..geometry.domains import Annulus, Disc, PlanarDomain, Rectangle
from ..models.numbers import Complex

CATALOG_VERSION = "2024.1"


class CatalogEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    expression: str
    domain: PlanarDomain
    singular_points: List[Complex] = Field(default_factory=list)
    zbar_dependent: bool = False

    def parsed(self) -> Expr:
        return parse(self.expression)

    def loops(self) -> List[Contour]:
        return self.domain.boundary()


UNIT_DISC = Disc(center=0j, R=1.0)

CATALOG: List[CatalogEntry] = [
    CatalogEntry(name="pole_at_origin", expression="1/z", domain=UNIT_DISC, singular_points=[0j]),
    CatalogEntry(name="shifted_pole", expression="1/(z-0.3)", domain=UNIT_DISC, singular_points=[0.3]),
    CatalogEntry(name="two_poles", expression="(z+1)/(z*(z-0.5))", domain=UNIT_DISC, singular_points=[0j, 0.5]),
    CatalogEntry(
        name="three_poles",
        expression="1/((z-0.5)*(z+0.5*i)*(z+0.4))",
        domain=UNIT_DISC,
        singular_points=[0.5, -0.5j, -0.4],
    ),
    CatalogEntry(name="exp_pole", expression="exp(z)/z", domain=UNIT_DISC, singular_points=[0j]),
    CatalogEntry(name="square", expression="z^2", domain=Rectangle(x_lo=-1, x_hi=1, y_lo=-1, y_hi=1)),
    CatalogEntry(name="conjugate", expression="conj(z)", domain=UNIT_DISC, zbar_dependent=True),
    CatalogEntry(
        name="modulus_squared",
        expression="z*conj(z)",
        domain=Disc(center=0.5 + 0.5j, R=1.0),
        zbar_dependent=True,
    ),
    CatalogEntry(
        name="conj_square_over_z",
        expression="conj(z)^2/z",
        domain=UNIT_DISC,
        singular_points=[0j],
        zbar_dependent=True,
    ),
    CatalogEntry(
        name="conj_over_shifted_pole",
        expression="conj(z)/(z-0.5)",
        domain=UNIT_DISC,
        singular_points=[0.5],
        zbar_dependent=True,
    ),
    CatalogEntry(
        name="inverse_conjugate",
        expression="1/conj(z)",
        domain=UNIT_DISC,
        singular_points=[0j],
        zbar_dependent=True,
    ),
    CatalogEntry(
        name="log_modulus_annulus",
        expression="log(z*conj(z))",
        domain=Annulus(center=0j, r=0.2, R=1.0),
        zbar_dependent=True,
    ),
]


def catalog_entry(name: str) -> CatalogEntry:
    for entry in CATALOG:
        if entry.name == name:
            return entry
    raise KeyError(f"no catalog entry named {name!r}")
