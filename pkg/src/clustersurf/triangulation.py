"""Triangulations of Pi_n and C_{p,q}: validation, flips, exchange matrices and the
named families (fan, standard ladder, wrapping triangulations)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .surface import (
    INNER,
    OUTER,
    Bridging,
    Chord,
    MarkedSurface,
    Peripheral,
    Segment,
    SurfaceError,
    are_compatible,
    check_curve,
    crossing_number,
    enumerate_arcs,
    format_curve,
    format_surface,
    is_arc,
    key,
    lift,
    parse_curve,
    parse_surface,
    project,
    translate,
)


class TriangulationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Triangulation:
    """An ordered list of arcs; position i is the variable x_{i+1}.

    Equality and hashing ignore the order (a triangulation is a set of arcs);
    use ``arcs`` when the variable indexing matters.
    """

    surface: MarkedSurface
    arcs: tuple

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))

    @property
    def arcset(self):
        return frozenset(self.arcs)

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.surface == other.surface and self.arcset == other.arcset

    def __hash__(self):
        return hash((self.surface, self.arcset))

    def __len__(self):
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)

    def __contains__(self, g):
        return g in self.arcs

    def index(self, g) -> int:
        return self.arcs.index(g)

    @property
    def nvars(self):
        return len(self.arcs)

    def to_dict(self):
        return {"surface": format_surface(self.surface), "arcs": [format_curve(a) for a in self.arcs]}

    @classmethod
    def from_dict(cls, data):
        s = parse_surface(data["surface"])
        return cls(s, tuple(parse_curve(a) for a in data["arcs"]))

    def __repr__(self):
        return f"Triangulation({format_surface(self.surface)}, [{', '.join(format_curve(a) for a in self.arcs)}])"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    reason: str = ""
    pair: tuple = ()

    def __bool__(self):
        return self.ok


def validate(t: Triangulation) -> ValidationReport:
    s = t.surface
    for g in t.arcs:
        try:
            check_curve(s, g)
        except SurfaceError as exc:
            return ValidationReport(False, str(exc), (g,))
        if not is_arc(s, g):
            return ValidationReport(False, f"{format_curve(g)} has self-intersections", (g,))
    if len(set(t.arcs)) != len(t.arcs):
        return ValidationReport(False, "repeated arc")
    for i, g in enumerate(t.arcs):
        for h in t.arcs[i + 1:]:
            if crossing_number(s, g, h):
                return ValidationReport(False, f"{format_curve(g)} crosses {format_curve(h)}", (g, h))
    if len(t.arcs) != s.rank:
        return ValidationReport(False, f"expected {s.rank} arcs, got {len(t.arcs)}")
    return ValidationReport(True)


# -- the lifted triangulation ---------------------------------------------------


def neighbours(t: Triangulation, P) -> set:
    """Cover points joined to ``P`` by an edge of the lifted triangulation or the boundary."""
    s = t.surface
    out = set()
    side, pos = P
    if s.is_polygon:
        N = s.npoints
        out.update({(0, pos % N + 1), (0, (pos - 2) % N + 1)})
    else:
        out.update({(side, pos - 1), (side, pos + 1)})
    for g in t.arcs:
        A, B = lift(s, g)
        for X, Y in ((A, B), (B, A)):
            if X[0] != side:
                continue
            if s.is_polygon:
                if X == P:
                    out.add(Y)
                continue
            size = s.size(side)
            if (pos - X[1]) % size == 0:
                out.add(translate(s, Y, (pos - X[1]) // size))
    return out


def edge_label(t: Triangulation, P, Q):
    """0-based arc index of the cover edge PQ, or the boundary Segment."""
    g = project(t.surface, P, Q)
    if isinstance(g, Segment):
        return g
    try:
        return t.index(g)
    except ValueError:
        raise TriangulationError(f"{format_curve(g)} is not an edge of {t}") from None


def adjacent_vertices(t: Triangulation, i: int) -> list:
    """The two cover vertices opposite the lift of arc i in its two triangles."""
    P, Q = lift(t.surface, t.arcs[i])
    third = sorted(neighbours(t, P) & neighbours(t, Q), key=key)
    if len(third) != 2:
        raise TriangulationError(f"arc {format_curve(t.arcs[i])} does not bound two triangles in {t}")
    return third


def flip(t: Triangulation, k: int) -> Triangulation:
    """Replace arc k by the other diagonal of the quadrilateral formed by its two triangles."""
    u, v = adjacent_vertices(t, k)
    new = project(t.surface, u, v)
    if isinstance(new, Segment) or new in t.arcs:
        raise TriangulationError(f"arc {k} of {t} is not flippable")
    arcs = list(t.arcs)
    arcs[k] = new
    return Triangulation(t.surface, tuple(arcs))


def flip_by_search(t: Triangulation, k: int) -> Triangulation:
    """Flip by brute force: the unique arc compatible with the rest, other than arc k."""
    s = t.surface
    rest = [g for i, g in enumerate(t.arcs) if i != k]
    wmax = max((abs(g.winding) for g in t.arcs if isinstance(g, Bridging)), default=0)
    cands = [
        c
        for c in enumerate_arcs(s, wmax + 2)
        if c != t.arcs[k] and c not in rest and all(are_compatible(s, c, g) for g in rest)
    ]
    if len(cands) != 1:
        raise TriangulationError(f"expected exactly one flip candidate, found {cands}")
    arcs = list(t.arcs)
    arcs[k] = cands[0]
    return Triangulation(s, tuple(arcs))


def _triangles_at(t: Triangulation, i: int):
    P, Q = lift(t.surface, t.arcs[i])
    for u in adjacent_vertices(t, i):
        yield tuple(sorted((P, Q, u), key=key))


def exchange_matrix(t: Triangulation) -> list:
    """Skew-symmetric B-matrix: b[i][j] counts triangles where side j directly
    follows side i in the boundary order of the cover, minus the reverse."""
    n = t.nvars
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        me = lift(t.surface, t.arcs[i])
        for tri in _triangles_at(t, i):
            sides = [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])]
            pos = next(x for x, (A, B) in enumerate(sides) if {A, B} == set(me))
            nxt = edge_label(t, *sides[(pos + 1) % 3])
            prv = edge_label(t, *sides[(pos - 1) % 3])
            if isinstance(nxt, int):
                b[i][nxt] += 1
            if isinstance(prv, int):
                b[i][prv] -= 1
    return b


def mutate_matrix(b, k):
    """Fomin-Zelevinsky matrix mutation at index k."""
    n = len(b)
    out = [row[:] for row in b]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            else:
                out[i][j] = b[i][j] + (abs(b[i][k]) * b[k][j] + b[i][k] * abs(b[k][j])) // 2
    return out


# -- named triangulations --------------------------------------------------------


def fan_triangulation(s: MarkedSurface) -> Triangulation:
    if not s.is_polygon:
        raise TriangulationError("the fan triangulation is defined for polygons")
    return Triangulation(s, tuple(Chord(1, b) for b in range(3, s.n + 3)))


def standard_annulus_triangulation(s: MarkedSurface) -> Triangulation:
    """The ladder: iota_1 joined to o_1..o_q and to the next lift of o_1, which is
    in turn joined to iota_2..iota_p."""
    if not s.is_annulus:
        raise TriangulationError("the standard triangulation is defined for annuli")
    arcs = [Bridging(1, j, 0) for j in range(1, s.q + 1)]
    arcs.append(Bridging(1, 1, 1))
    arcs.extend(Bridging(i, 1, 1) for i in range(2, s.p + 1))
    return Triangulation(s, tuple(arcs))


def standard_triangulation(s: MarkedSurface) -> Triangulation:
    return fan_triangulation(s) if s.is_polygon else standard_annulus_triangulation(s)


def _strictly_inside(s, g: Peripheral, point: int) -> bool:
    size = s.p if g.component == INNER else s.q
    offset = (point - g.start) % size
    # some translate of the arc has point strictly between its endpoints
    return any(0 < offset + k * size < g.span for k in range(0, g.span // size + 1))


@dataclass(frozen=True)
class WrapTriangulation:
    triangulation: Triangulation
    alpha: int
    beta: int
    inner_vertex: int
    outer_vertex: int


def wrap_triangulation(s: MarkedSurface, periph_arcs, r: int) -> WrapTriangulation:
    """Complete pairwise compatible peripheral arcs to the triangulation T^(r).

    On each boundary component a free vertex is chosen (the base of an existing
    near-loop, else the first point not hidden under an existing arc); the
    near-loop at that vertex is added and the disc it cuts off is filled
    greedily, preferring arcs out of the free vertex. The remaining subannulus
    has one marked point I inside and O outside; alpha joins I to O with
    winding r and beta with winding r + 1.
    """
    if not s.is_annulus:
        raise TriangulationError("wrapping triangulations live on annuli")
    periph = list(dict.fromkeys(periph_arcs))
    for g in periph:
        if not isinstance(g, Peripheral):
            raise TriangulationError(f"{format_curve(g)} is not peripheral")
        check_curve(s, g)
        if not is_arc(s, g):
            raise TriangulationError(f"{format_curve(g)} is not an arc")
    for i, g in enumerate(periph):
        for h in periph[i + 1:]:
            if crossing_number(s, g, h):
                raise TriangulationError(f"{format_curve(g)} crosses {format_curve(h)}")

    arcs = list(periph)
    free = {}
    for comp, size in ((INNER, s.p), (OUTER, s.q)):
        mine = [g for g in periph if g.component == comp]
        loops = [g for g in mine if g.span == size]
        if loops:
            vertex = loops[0].start
        else:
            options = [v for v in range(1, size + 1) if not any(_strictly_inside(s, g, v) for g in mine)]
            if not options:
                raise TriangulationError(f"no free vertex on the {comp} boundary")
            vertex = options[0]
            if size >= 2:
                arcs.append(Peripheral(comp, vertex, size))
        free[comp] = vertex
        cands = [Peripheral(comp, st, sp) for sp in range(2, size) for st in range(1, size + 1)]
        cands.sort(key=lambda g: (g.start != vertex, g.span, g.start))
        for c in cands:
            if c not in arcs and all(are_compatible(s, c, g) for g in arcs):
                arcs.append(c)
    I, O = free[INNER], free[OUTER]
    arcs.append(Bridging(I, O, r))
    arcs.append(Bridging(I, O, r + 1))
    t = Triangulation(s, tuple(arcs))
    report = validate(t)
    if not report:
        raise TriangulationError(f"wrap completion failed: {report.reason}")
    return WrapTriangulation(t, len(arcs) - 2, len(arcs) - 1, I, O)


@lru_cache(maxsize=None)
def _flip_cached(surface, arcs, k):
    return flip(Triangulation(surface, arcs), k)


def cached_flip(t: Triangulation, k: int) -> Triangulation:
    # keyed on the ordered arcs: equal-as-sets triangulations may index differently
    return _flip_cached(t.surface, t.arcs, k)
