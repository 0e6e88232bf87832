"""Cluster algebras of polygons and annuli: expansions, flips and bases."""

from .laurent import InexactDivision, LaurentPoly, format_fraction
from .surface import (
    Annulus,
    Bridging,
    Chord,
    Loop,
    MarkedSurface,
    Peripheral,
    Polygon,
    Segment,
    SurfaceError,
    crossing_number,
    parse_curve,
    parse_surface,
)
from .triangulation import Triangulation, flip, standard_triangulation, validate, wrap_triangulation

__version__ = "0.1.0"
