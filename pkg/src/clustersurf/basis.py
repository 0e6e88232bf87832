"""Collections of compatible curves, decomposition in the basis {x_Gamma},
and desk-scale verification of positivity and atomicity."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .expansion import expand_collection, expand_curve
from .laurent import LaurentPoly
from .surface import (
    Bridging,
    Loop,
    MarkedSurface,
    Peripheral,
    SurfaceError,
    check_curve,
    crossing_number,
    enumerate_arcs,
    format_curve,
    format_surface,
    is_arc,
    parse_curve,
)
from .triangulation import (
    Triangulation,
    TriangulationError,
    cached_flip,
    standard_triangulation,
    validate,
    wrap_triangulation,
)


class CollectionError(ValueError):
    pass


class DecompositionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Collection:
    """A multiset of pairwise compatible arcs, plus at most one loop z_m."""

    surface: MarkedSurface
    arcs: tuple = ()
    loop: int | None = None

    def __post_init__(self):
        s = self.surface
        arcs = tuple(sorted(self.arcs, key=format_curve))
        object.__setattr__(self, "arcs", arcs)
        for g in set(arcs):
            if isinstance(g, Loop):
                raise CollectionError("loops go in the loop field")
            check_curve(s, g)
            if not is_arc(s, g):
                raise CollectionError(f"{format_curve(g)} is not an arc")
        distinct = sorted(set(arcs), key=format_curve)
        for g, h in itertools.combinations(distinct, 2):
            if crossing_number(s, g, h):
                raise CollectionError(f"{format_curve(g)} crosses {format_curve(h)}")
        if self.loop is not None:
            if not s.is_annulus or self.loop < 1:
                raise CollectionError("a loop z_m needs an annulus and m >= 1")
            if any(isinstance(g, Bridging) for g in arcs):
                raise CollectionError("a loop crosses every bridging arc")

    @property
    def members(self):
        return self.arcs + ((Loop(self.loop),) if self.loop else ())

    def __len__(self):
        return len(self.members)

    def __str__(self):
        return format_collection(self)


def format_collection(c: Collection) -> str:
    if not c.members:
        return "{}"
    return "; ".join(format_curve(g) for g in c.members)


def parse_collection(s: MarkedSurface, text: str) -> Collection:
    text = text.strip()
    if text in ("", "{}", "empty"):
        return Collection(s)
    arcs, loop = [], None
    for piece in text.split(";"):
        g = parse_curve(piece.strip())
        if isinstance(g, Loop):
            if loop is not None:
                raise CollectionError("at most one loop per collection")
            loop = g.m
        else:
            arcs.append(g)
    return Collection(s, tuple(arcs), loop)


def collection_weight(c: Collection, t: Triangulation | None = None) -> int:
    """Total crossings with the (standard) triangulation; a loop z_m adds m."""
    s = c.surface
    t = t or standard_triangulation(s)
    w = sum(crossing_number(s, g, a) for g in c.arcs for a in t.arcs)
    return w + (c.loop or 0)


def _arc_pool(s: MarkedSurface, max_weight: int) -> list:
    t = standard_triangulation(s)
    pool = enumerate_arcs(s, max_weight + 2) if s.is_annulus else enumerate_arcs(s)
    out = []
    for g in pool:
        w = sum(crossing_number(s, g, a) for a in t.arcs)
        if w <= max_weight:
            out.append((g, w))
    return out


def enumerate_collections(
    s: MarkedSurface,
    max_weight: int,
    allow_loops: bool = True,
    max_size: int | None = None,
    max_loop: int | None = None,
) -> list:
    """Every collection of crossing weight at most ``max_weight``.

    Arcs of the standard triangulation have weight 0, so the number of arc
    members is capped by ``max_size`` (default ``max(1, max_weight)``).
    Loops z_m are limited to m <= ``max_loop`` when it is given.
    """
    if max_size is None:
        max_size = max(1, max_weight)
    pool = _arc_pool(s, max_weight)
    found = []

    def grow(start, chosen, weight):
        found.append((tuple(chosen), weight))
        if len(chosen) == max_size:
            return
        for i in range(start, len(pool)):
            g, w = pool[i]
            if weight + w > max_weight:
                continue
            if any(crossing_number(s, g, h) for h in set(chosen)):
                continue
            chosen.append(g)
            grow(i, chosen, weight + w)
            chosen.pop()

    grow(0, [], 0)
    out = []
    for arcs, weight in found:
        out.append((weight, Collection(s, arcs)))
        if allow_loops and s.is_annulus and not any(isinstance(g, Bridging) for g in arcs):
            top = max_weight - weight if max_loop is None else min(max_loop, max_weight - weight)
            for m in range(1, top + 1):
                out.append((weight + m, Collection(s, arcs, m)))
    out.sort(key=lambda wc: (wc[0], len(wc[1]), format_collection(wc[1])))
    return [c for _, c in out]


# -- decomposition ---------------------------------------------------------------------


@dataclass
class Decomposition:
    coefficients: dict  # Collection -> int, nonzero entries only
    residual: LaurentPoly

    def to_dict(self):
        return {
            "coefficients": [
                {"collection": format_collection(c), "coeff": str(v)}
                for c, v in sorted(self.coefficients.items(), key=lambda kv: format_collection(kv[0]))
            ],
            "residual": self.residual.to_dict(),
        }


def decompose(y: LaurentPoly, t: Triangulation, candidates) -> Decomposition:
    """Solve y = sum lambda_Gamma x_Gamma exactly over the candidate collections."""
    candidates = list(dict.fromkeys(candidates))
    if y.nvars != t.nvars:
        raise DecompositionError("y is not written in the variables of t")
    expansions = [expand_collection(t, c) for c in candidates]
    monos = sorted(set(y.terms).union(*(e.terms for e in expansions)))
    row = {e: i for i, e in enumerate(monos)}
    ncols = len(candidates)
    rows = [[QQ(0)] * (ncols + 1) for _ in monos]
    for j, e in enumerate(expansions):
        for mono, c in e.items():
            rows[row[mono]][j] = QQ(c)
    for mono, c in y.items():
        rows[row[mono]][ncols] = QQ(c)
    if not rows:
        return Decomposition({}, LaurentPoly.zero(t.nvars))
    rref, pivots = DomainMatrix(rows, (len(rows), ncols + 1), QQ).rref()
    if ncols in pivots:
        raise DecompositionError("y is not in the span of the candidates")
    if len(pivots) < ncols:
        raise DecompositionError("candidate expansions are linearly dependent")
    dense = rref.to_Matrix()
    coeffs = {}
    for r, col in enumerate(pivots):
        v = dense[r, ncols]
        if v.q != 1:
            raise DecompositionError(f"non-integer coefficient {v} on {format_collection(candidates[col])}")
        if v:
            coeffs[candidates[col]] = int(v)
    recon = LaurentPoly.zero(t.nvars)
    for c, v in coeffs.items():
        recon = recon + expansions[candidates.index(c)] * v
    return Decomposition(coeffs, y - recon)


def default_candidates(y: LaurentPoly, t: Triangulation, slack: int = 2, extra_size: int = 0) -> list:
    """Collections up to weight max(denominator) + slack, with the size cap set
    by the largest positive degree among y's terms.

    For subtraction-free y only collections whose expansion is supported inside
    y's support are kept: with positive coefficients nothing can cancel, so no
    other collection can carry a positive coefficient. A zero-residual solve
    over the reduced set is still the unique decomposition.
    """
    den = max(y.denominator_vector(), default=0) if y else 0
    top = max((sum(a for a in e if a > 0) for e in y.terms), default=0)
    pool = enumerate_collections(t.surface, den + slack, max_size=max(1, top + extra_size + slack))
    if not y.is_subtraction_free():
        return pool
    support = y.terms.keys()
    return [c for c in pool if expand_collection(t, c).terms.keys() <= support]


def decompose_auto(y: LaurentPoly, t: Triangulation, max_rounds: int = 4) -> Decomposition:
    """decompose with candidate bounds grown until y lies in their span."""
    err = None
    for rnd in range(max_rounds):
        try:
            return decompose(y, t, default_candidates(y, t, slack=2 + rnd, extra_size=rnd))
        except DecompositionError as exc:
            err = exc
    raise DecompositionError(f"no decomposition within {max_rounds} candidate rounds: {err}")


# -- exchange graph ----------------------------------------------------------------------


@dataclass
class ExchangeGraph:
    surface: MarkedSurface
    vertices: list  # Triangulation, in discovery order
    edges: list  # (i, j) with i < j

    def to_dict(self):
        return {
            "surface": format_surface(self.surface),
            "vertices": [sorted(format_curve(a) for a in v.arcs) for v in self.vertices],
            "edges": [list(e) for e in self.edges],
        }


def exchange_graph(s: MarkedSurface, radius: int | None = None, start: Triangulation | None = None) -> ExchangeGraph:
    """Flip graph: complete for polygons, the radius ball (default 4) for annuli."""
    if radius is None and s.is_annulus:
        radius = 4
    start = start or standard_triangulation(s)
    index = {start.arcset: 0}
    verts = [start]
    edges = set()
    queue = deque([(start, 0)])
    while queue:
        u, d = queue.popleft()
        i = index[u.arcset]
        for k in range(u.nvars):
            v = cached_flip(u, k)
            j = index.get(v.arcset)
            if j is None:
                if radius is not None and d >= radius:
                    continue
                j = index[v.arcset] = len(verts)
                verts.append(v)
                queue.append((v, d + 1))
            edges.add((min(i, j), max(i, j)))
    return ExchangeGraph(s, verts, sorted(edges))


def all_clusters(s: MarkedSurface, radius: int = 4, wrap_range: int = 3) -> list:
    """Every triangulation of a polygon; for an annulus, the flip ball plus
    T^(r) for |r| <= wrap_range."""
    ts = exchange_graph(s, None if s.is_polygon else radius).vertices
    if s.is_annulus:
        seen = {t.arcset for t in ts}
        for r in range(-wrap_range, wrap_range + 1):
            w = wrap_triangulation(s, (), r).triangulation
            if w.arcset not in seen:
                seen.add(w.arcset)
                ts.append(w)
    return ts


# -- reports -------------------------------------------------------------------------------


@dataclass
class Report:
    suite: str
    surface: str
    parameters: dict = field(default_factory=dict)
    total: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.total == self.passed and not self.failures

    def check(self, cond: bool, failure=None):
        self.total += 1
        if cond:
            self.passed += 1
        else:
            self.failures.append(failure)
        return cond

    def merge(self, other: "Report"):
        self.total += other.total
        self.passed += other.passed
        self.failures.extend(other.failures)

    def to_dict(self):
        out = {
            "suite": self.suite,
            "surface": self.surface,
            "parameters": self.parameters,
            "checks": {"total": self.total, "passed": self.passed},
            "failures": self.failures,
        }
        if self.details:
            out["details"] = self.details
        return out

    def summary(self):
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.suite} [{self.surface}] {self.passed}/{self.total}"


def verify_positive_basis(
    s: MarkedSurface,
    max_weight: int,
    radius: int = 4,
    wrap_range: int = 3,
    max_loop: int | None = None,
    clusters=None,
) -> Report:
    """Every collection up to ``max_weight`` is subtraction-free in every tested cluster."""
    rep = Report(
        "positivity",
        format_surface(s),
        {"maxWeight": max_weight, "radius": radius, "wrapRange": wrap_range, "maxLoop": max_loop},
    )
    clusters = clusters if clusters is not None else all_clusters(s, radius, wrap_range)
    colls = enumerate_collections(s, max_weight, max_loop=max_loop)
    rep.details["clusters"] = len(clusters)
    rep.details["collections"] = len(colls)
    for t in clusters:
        for c in colls:
            e = expand_collection(t, c)
            rep.check(
                e.is_subtraction_free(),
                {"triangulation": t.to_dict(), "collection": format_collection(c)},
            )
    return rep


def complete_to_triangulation(s: MarkedSurface, arcs) -> Triangulation:
    """Greedy completion of pairwise compatible arcs to a triangulation."""
    chosen = list(dict.fromkeys(arcs))
    wmax = max((abs(g.winding) for g in chosen if isinstance(g, Bridging)), default=0)
    for extra in range(1, 4):
        cur = list(chosen)
        pool = enumerate_arcs(s, wmax + extra) if s.is_annulus else enumerate_arcs(s)
        pool.sort(key=lambda g: abs(g.winding - wmax) if isinstance(g, Bridging) else 0)
        for g in pool:
            if g not in cur and all(crossing_number(s, g, h) == 0 for h in cur):
                cur.append(g)
        t = Triangulation(s, tuple(cur))
        if validate(t):
            return t
    raise TriangulationError(f"could not complete {[format_curve(g) for g in chosen]}")


def _witnesses(gamma: Collection, max_r: int):
    """Candidate (triangulation, distinguished exponent vector, r) triples."""
    s = gamma.surface
    rs = [0]
    for k in range(1, max_r + 1):
        rs += [k, -k]
    periph = tuple(dict.fromkeys(g for g in gamma.arcs if isinstance(g, Peripheral)))
    if gamma.loop is None:
        t = complete_to_triangulation(s, gamma.arcs)
        yield t, _arc_exponents(t, gamma.arcs), None
        if s.is_annulus and len(periph) == len(set(gamma.arcs)):
            for r in rs:
                w = wrap_triangulation(s, periph, r).triangulation
                yield w, _arc_exponents(w, gamma.arcs), r
        return
    m = gamma.loop
    for r in rs:
        w = wrap_triangulation(s, periph, r)
        e = list(_arc_exponents(w.triangulation, gamma.arcs))
        e[w.beta] += m
        e[w.alpha] -= m
        yield w.triangulation, tuple(e), r


def _arc_exponents(t, arcs):
    e = [0] * t.nvars
    for g in arcs:
        e[t.index(g)] += 1
    return tuple(e)


def verify_atomicity_witness(s: MarkedSurface, gamma: Collection, candidates, max_r: int = 6) -> Report:
    """Find a cluster in which a distinguished monomial of x_Gamma occurs in no
    other candidate's expansion."""
    rep = Report("atomicity", format_surface(s), {"gamma": format_collection(gamma), "maxR": max_r})
    others = [c for c in dict.fromkeys(candidates) if c != gamma]
    last = None
    for t, mono, r in _witnesses(gamma, max_r):
        own = expand_collection(t, gamma).coeff(mono)
        if own <= 0:
            last = {"triangulation": t.to_dict(), "r": r, "reason": "distinguished term missing from x_Gamma"}
            continue
        clash = next((c for c in others if expand_collection(t, c).coeff(mono)), None)
        if clash is None:
            rep.check(True)
            rep.details = {
                "witness": t.to_dict(),
                "r": r,
                "monomial": list(mono),
                "coefficient": own,
                "others": len(others),
            }
            return rep
        last = {
            "triangulation": t.to_dict(),
            "r": r,
            "monomial": list(mono),
            "offending": format_collection(clash),
        }
    rep.check(False, last or {"reason": "no witness triangulation"})
    return rep
