"""Marked surfaces Pi_n (polygons) and C_{p,q} (annuli), their curves and crossings.

Everything is computed in the universal cover, which for both surfaces is a
disc whose boundary marked points carry a linear order:

* polygon: the points 1..n+3 in order;
* annulus: the strip R x [0, 1]; lifts of inner points sit on the top line at
  integer positions ``pos`` (``iota_{pos mod p + 1}``), lifts of outer points on
  the bottom line (``o_{pos mod q + 1}``). Walking once around the boundary of
  the strip meets the top line left to right and then the bottom line right to
  left, which gives the key ``(0, pos)`` on top and ``(1, -pos)`` on the bottom.

Two chords of the cover cross exactly when their endpoints strictly interleave
in this order, and the crossing number of two curves on the surface is the
number of deck translates of one lift that cross a fixed lift of the other.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

INNER, OUTER = "inner", "outer"


class SurfaceError(ValueError):
    """A curve does not live on the surface, or notation could not be parsed."""


@dataclass(frozen=True)
class MarkedSurface:
    kind: str  # "polygon" or "annulus"
    n: int = 0
    p: int = 0
    q: int = 0

    def __post_init__(self):
        if self.kind == "polygon":
            if self.n < 1:
                raise SurfaceError("a polygon needs n >= 1 (at least four marked points)")
        elif self.kind == "annulus":
            if self.p < 1 or self.q < 1:
                raise SurfaceError("an annulus needs p >= 1 and q >= 1")
        else:
            raise SurfaceError(f"unknown surface kind {self.kind!r}")

    @property
    def is_polygon(self):
        return self.kind == "polygon"

    @property
    def is_annulus(self):
        return self.kind == "annulus"

    @property
    def rank(self):
        """Number of arcs in a triangulation (= number of cluster variables)."""
        return self.n if self.is_polygon else self.p + self.q

    @property
    def npoints(self):
        return self.n + 3

    def size(self, side):
        """Number of marked points on a boundary line of the cover (0 top, 1 bottom)."""
        return self.p if side == 0 else self.q

    def __str__(self):
        return format_surface(self)


def Polygon(n) -> MarkedSurface:
    return MarkedSurface("polygon", n=n)


def Annulus(p, q) -> MarkedSurface:
    return MarkedSurface("annulus", p=p, q=q)


# -- curves ------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Chord:
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)


@dataclass(frozen=True, order=True)
class Peripheral:
    component: str
    start: int
    span: int


@dataclass(frozen=True, order=True)
class Bridging:
    inner: int
    outer: int
    winding: int


@dataclass(frozen=True, order=True)
class Loop:
    m: int


Curve = Union[Chord, Peripheral, Bridging, Loop]


@dataclass(frozen=True, order=True)
class Segment:
    """A boundary segment: from marked point ``start`` to its successor."""

    component: str  # "disc", "inner" or "outer"
    start: int


def check_curve(s: MarkedSurface, g) -> None:
    """Raise SurfaceError unless ``g`` is a valid curve of C(S,M) (or a loop) on ``s``."""
    if isinstance(g, Chord):
        if not s.is_polygon:
            raise SurfaceError("chords live on polygons")
        N = s.npoints
        if not (1 <= g.a <= N and 1 <= g.b <= N) or g.a == g.b:
            raise SurfaceError(f"bad chord endpoints {g}")
        if (g.b - g.a) % N in (1, N - 1):
            raise SurfaceError(f"{g} is a boundary segment")
    elif isinstance(g, Peripheral):
        if not s.is_annulus or g.component not in (INNER, OUTER):
            raise SurfaceError(f"{g} does not live on {s}")
        size = s.p if g.component == INNER else s.q
        if not 1 <= g.start <= size:
            raise SurfaceError(f"start point of {g} out of range")
        if g.span < 2:
            raise SurfaceError(f"{g} is isotopic to a boundary segment")
    elif isinstance(g, Bridging):
        if not s.is_annulus:
            raise SurfaceError("bridging curves live on annuli")
        if not (1 <= g.inner <= s.p and 1 <= g.outer <= s.q):
            raise SurfaceError(f"endpoints of {g} out of range")
    elif isinstance(g, Loop):
        if not s.is_annulus or g.m < 1:
            raise SurfaceError(f"{g} is not a loop on {s}")
    else:
        raise SurfaceError(f"not a curve: {g!r}")


# -- the universal cover -------------------------------------------------------
# A cover point is (side, pos); polygons use side 0 and the vertex label.


def key(pt):
    side, pos = pt
    return (0, pos) if side == 0 else (1, -pos)


def translate(s: MarkedSurface, pt, k):
    if s.is_polygon or not k:
        return pt
    side, pos = pt
    return (side, pos + k * s.size(side))


def translate_chord(s, chord, k):
    return (translate(s, chord[0], k), translate(s, chord[1], k))


def lift(s: MarkedSurface, g):
    """A lift of the arc or curve ``g`` as a pair of cover points (start, end)."""
    if isinstance(g, Chord):
        return ((0, g.a), (0, g.b))
    if isinstance(g, Peripheral):
        side = 0 if g.component == INNER else 1
        return ((side, g.start - 1), (side, g.start - 1 + g.span))
    if isinstance(g, Bridging):
        return ((0, g.inner - 1), (1, g.outer - 1 + g.winding * s.q))
    if isinstance(g, Segment):
        if g.component == "disc":
            return ((0, g.start), (0, g.start % s.npoints + 1))
        side = 0 if g.component == INNER else 1
        return ((side, g.start - 1), (side, g.start))
    raise SurfaceError(f"cannot lift {g!r}")


def chords_cross(c1, c2) -> bool:
    a, b = sorted((key(c1[0]), key(c1[1])))
    c, d = sorted((key(c2[0]), key(c2[1])))
    return a < c < b < d or c < a < d < b


def turn(s, pt):
    side, pos = pt
    return Fraction(pos, s.size(side))


def translate_range(s, fixed, moving):
    """Deck translates k for which ``moving + k`` may meet ``fixed``.

    Chords whose horizontal extents are disjoint cannot cross, so only the
    translates with overlapping closed extents need checking.
    """
    if s.is_polygon:
        return range(0, 1)
    u = [turn(s, fixed[0]), turn(s, fixed[1])]
    v = [turn(s, moving[0]), turn(s, moving[1])]
    lo = math.ceil(min(u) - max(v))
    hi = math.floor(max(u) - min(v))
    return range(lo, hi + 1)


def project(s: MarkedSurface, P, Q):
    """The arc, curve or boundary segment on ``s`` covered by the cover chord PQ."""
    if P == Q:
        raise SurfaceError("degenerate chord")
    if s.is_polygon:
        a, b = sorted((P[1], Q[1]))
        N = s.npoints
        if b - a == 1:
            return Segment("disc", a)
        if a == 1 and b == N:
            return Segment("disc", N)
        return Chord(a, b)
    if P[0] == Q[0]:
        side = P[0]
        lo, hi = sorted((P[1], Q[1]))
        size = s.size(side)
        comp = INNER if side == 0 else OUTER
        if hi - lo == 1:
            return Segment(comp, lo % size + 1)
        return Peripheral(comp, lo % size + 1, hi - lo)
    top, bot = (P, Q) if P[0] == 0 else (Q, P)
    i = top[1] % s.p
    k = (top[1] - i) // s.p
    j = bot[1] % s.q
    w = (bot[1] - j) // s.q - k
    return Bridging(i + 1, j + 1, w)


# -- crossing numbers ----------------------------------------------------------


@lru_cache(maxsize=None)
def crossing_number(s: MarkedSurface, g1, g2) -> int:
    """Minimal number of interior intersections of ``g1`` and ``g2``.

    When ``g1 == g2`` this is the self-intersection number.
    """
    check_curve(s, g1)
    check_curve(s, g2)
    if isinstance(g1, Loop) or isinstance(g2, Loop):
        if isinstance(g1, Loop) and isinstance(g2, Loop):
            if g1 == g2:
                return g1.m - 1
            # z_a can be pushed into a collar of the boundary, off z_b
            return 0
        loop, other = (g1, g2) if isinstance(g1, Loop) else (g2, g1)
        return loop.m if isinstance(other, Bridging) else 0
    if s.is_polygon:
        return int(chords_cross(lift(s, g1), lift(s, g2)))
    c1, c2 = lift(s, g1), lift(s, g2)
    if g1 == g2:
        return sum(
            1 for k in translate_range(s, c1, c2) if k > 0 and chords_cross(c1, translate_chord(s, c2, k))
        )
    return sum(1 for k in translate_range(s, c1, c2) if chords_cross(c1, translate_chord(s, c2, k)))


def is_arc(s: MarkedSurface, g) -> bool:
    if isinstance(g, Loop):
        raise SurfaceError("loops are not arcs")
    return crossing_number(s, g, g) == 0


def are_compatible(s: MarkedSurface, g1, g2) -> bool:
    return g1 == g2 or crossing_number(s, g1, g2) == 0


def enumerate_arcs(s: MarkedSurface, max_winding: int = 0) -> list:
    """All arcs of ``s``; on an annulus, bridging arcs are cut off at |winding| <= max_winding."""
    if s.is_polygon:
        N = s.npoints
        return [Chord(a, b) for a in range(1, N + 1) for b in range(a + 2, N + 1) if not (a == 1 and b == N)]
    arcs = []
    for comp, size in ((INNER, s.p), (OUTER, s.q)):
        for span in range(2, size + 1):
            for start in range(1, size + 1):
                arcs.append(Peripheral(comp, start, span))
    for w in sorted(range(-max_winding, max_winding + 1), key=lambda w: (abs(w), w)):
        for i in range(1, s.p + 1):
            for j in range(1, s.q + 1):
                arcs.append(Bridging(i, j, w))
    return arcs


def boundary_segments(s: MarkedSurface) -> list:
    if s.is_polygon:
        return [Segment("disc", a) for a in range(1, s.npoints + 1)]
    return [Segment(INNER, i) for i in range(1, s.p + 1)] + [Segment(OUTER, j) for j in range(1, s.q + 1)]


# -- notation -------------------------------------------------------------------

_SURFACE_RE = re.compile(r"^\s*(polygon):(\d+)\s*$|^\s*(annulus):(\d+),(\d+)\s*$")


def parse_surface(text: str) -> MarkedSurface:
    m = _SURFACE_RE.match(text)
    if not m:
        raise SurfaceError(f"cannot parse surface {text!r}; expected polygon:n or annulus:p,q")
    if m.group(1):
        return Polygon(int(m.group(2)))
    return Annulus(int(m.group(4)), int(m.group(5)))


def format_surface(s: MarkedSurface) -> str:
    return f"polygon:{s.n}" if s.is_polygon else f"annulus:{s.p},{s.q}"


_CURVE_PATTERNS = [
    (re.compile(r"^c\s+(\d+)-(\d+)$"), lambda m: Chord(int(m[1]), int(m[2]))),
    (re.compile(r"^p\s+(inner|outer):(\d+)\+(\d+)$"), lambda m: Peripheral(m[1], int(m[2]), int(m[3]))),
    (
        re.compile(r"^b\s+i(\d+)\s+o(\d+)\s+w(-?\d+)$"),
        lambda m: Bridging(int(m[1]), int(m[2]), int(m[3])),
    ),
    (re.compile(r"^z(\d+)$"), lambda m: Loop(int(m[1]))),
]


def parse_curve(text: str):
    text = " ".join(text.split())
    for pat, build in _CURVE_PATTERNS:
        m = pat.match(text)
        if m:
            return build(m)
    raise SurfaceError(f"cannot parse curve {text!r}")


def format_curve(g) -> str:
    if isinstance(g, Chord):
        return f"c {g.a}-{g.b}"
    if isinstance(g, Peripheral):
        return f"p {g.component}:{g.start}+{g.span}"
    if isinstance(g, Bridging):
        return f"b i{g.inner} o{g.outer} w{g.winding}"
    if isinstance(g, Loop):
        return f"z{g.m}"
    if isinstance(g, Segment):
        return {"disc": "b", INNER: "i", OUTER: "o"}[g.component]
    raise SurfaceError(f"not a curve: {g!r}")
