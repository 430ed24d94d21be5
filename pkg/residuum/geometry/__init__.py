from .contour import (
    Contour,
    PointLocation,
    circle_contour,
    locate_point,
    make_keyhole,
    polygon_contour,
    square_contour,
)
from .domains import Annulus, AnnularSector, BaseDomain, Coordinates, Disc, PlanarDomain, Rectangle
from .paths import Arc, BasePath, FullCircle, PathPiece, Segment
from .sectors import SectorDecomposition, total_width

__all__ = [
    "Annulus",
    "AnnularSector",
    "Arc",
    "BaseDomain",
    "BasePath",
    "Contour",
    "Coordinates",
    "Disc",
    "FullCircle",
    "PathPiece",
    "PlanarDomain",
    "PointLocation",
    "Rectangle",
    "SectorDecomposition",
    "Segment",
    "circle_contour",
    "locate_point",
    "make_keyhole",
    "polygon_contour",
    "square_contour",
    "total_width",
]
