"""Named verification suites, one per acceptance criterion.

Every suite returns a :class:`~clustersurf.basis.Report`; ``run_suite``
dispatches by name and ``all`` runs the lot.
"""

from __future__ import annotations

import random
import time
from functools import lru_cache

from .basis import (
    Collection,
    Report,
    decompose,
    decompose_auto,
    enumerate_collections,
    exchange_graph,
    format_collection,
    verify_atomicity_witness,
    verify_positive_basis,
    all_clusters,
)
from .expansion import (
    c11_partner_triangulation,
    c21_triangulation,
    chebyshev,
    chebyshev_eval,
    enumerate_arc_walks,
    enumerate_loop_walks,
    expand_collection,
    expand_curve,
    expand_loop,
    expand_loop_difference,
    mutation_expand_oracle,
    specialize_from_C21,
)
from .laurent import LaurentPoly
from .surface import (
    OUTER,
    Annulus,
    Bridging,
    Chord,
    Peripheral,
    Polygon,
    crossing_number,
    enumerate_arcs,
    format_curve,
    format_surface,
)
from .triangulation import cached_flip, fan_triangulation, standard_triangulation, validate


def _polys(terms: dict, n: int) -> LaurentPoly:
    return LaurentPoly(n, terms)


# Kronecker quiver, standard triangulation {alpha, beta}
KRONECKER_Z1 = {(-1, 1): 1, (1, -1): 1, (-1, -1): 1}
KRONECKER_Z2 = {(-2, 0): 2, (0, -2): 2, (-2, 2): 1, (2, -2): 1, (-2, -2): 1}

# A~_{1,3}, standard triangulation: monomial tables of M_1, N_1 and z
A13_M1 = {(1, 0, 0, -1), (0, 0, -1, -1), (0, -1, -1, 0), (-1, -1, 0, 0), (-1, 0, 0, 1), (0, 1, -1, 0), (0, 0, -1, 1)}
A13_N1 = {(0, 1, -1, 0), (0, 0, -1, 1)}
A13_Z = {(1, 0, 0, -1), (0, 0, -1, -1), (0, -1, -1, 0), (-1, -1, 0, 0), (-1, 0, 0, 1)}
A13_M1_CURVE = Peripheral(OUTER, 1, 4)
A13_N1_CURVE = Peripheral(OUTER, 2, 2)


def _timed(rep: Report, start: float, limit: float):
    elapsed = time.perf_counter() - start
    rep.details["seconds"] = round(elapsed, 3)
    rep.check(elapsed < limit, {"reason": f"took {elapsed:.2f}s, limit {limit}s"})


def kronecker(**_) -> Report:
    start = time.perf_counter()
    s = Annulus(1, 1)
    t = standard_triangulation(s)
    rep = Report("kronecker", format_surface(s))
    for m, count, terms in ((1, 3, KRONECKER_Z1), (2, 7, KRONECKER_Z2)):
        walks = enumerate_loop_walks(t, m)
        rep.check(len(walks) == count, {"m": m, "walks": len(walks), "expected": count})
        got = expand_loop(t, m)
        rep.check(got == _polys(terms, 2), {"m": m, "expansion": got.to_dict()})
        summed = sum((w.monomial(2) for w in walks), LaurentPoly.zero(2))
        rep.check(summed == got, {"m": m, "reason": "walk sum differs from expansion"})
    z = expand_loop(t, 1)
    rep.check(expand_loop(t, 2) == z * z - 2, {"reason": "x_z2 != x_z^2 - 2"})
    _timed(rep, start, 1.0)
    return rep


def a13_tables(**_) -> Report:
    start = time.perf_counter()
    s = Annulus(1, 3)
    t = standard_triangulation(s)
    rep = Report("a13-tables", format_surface(s))
    cases = (
        ("M1", enumerate_arc_walks(t, A13_M1_CURVE), A13_M1),
        ("N1", enumerate_arc_walks(t, A13_N1_CURVE), A13_N1),
        ("z", enumerate_loop_walks(t, 1), A13_Z),
    )
    for name, walks, table in cases:
        monos = [w.exponents(4) for w in walks]
        rep.check(len(walks) == len(table), {"table": name, "walks": len(walks), "expected": len(table)})
        rep.check(set(monos) == table and len(set(monos)) == len(monos), {"table": name, "monomials": sorted(monos)})
    xm = expand_curve(t, A13_M1_CURVE)
    xn = expand_curve(t, A13_N1_CURVE)
    rep.check(xm - xn == expand_loop(t, 1), {"reason": "x_M1 - x_N1 != x_z"})
    _timed(rep, start, 1.0)
    return rep


CHEBYSHEV_SURFACES = ((1, 1), (1, 2), (2, 2), (1, 3))


def chebyshev_suite(surface=None, max_m: int = 4, **_) -> Report:
    start = time.perf_counter()
    surfaces = [surface] if surface is not None else [Annulus(p, q) for p, q in CHEBYSHEV_SURFACES]
    rep = Report("chebyshev", ",".join(format_surface(s) for s in surfaces), {"maxM": max_m})
    tt = LaurentPoly.variable(0, 1) + LaurentPoly.variable(0, 1, -1)
    for m in range(21):
        want = LaurentPoly.variable(0, 1, m) + LaurentPoly.variable(0, 1, -m)
        rep.check(chebyshev_eval(m, tt) == want, {"m": m, "reason": "F_m(t + 1/t) != t^m + t^-m"})
        coeffs = chebyshev(m).coeffs
        if m:
            rep.check(coeffs[-1] == 1 and len(coeffs) == m + 1, {"m": m, "reason": "F_m not monic of degree m"})
    for s in surfaces:
        if not s.is_annulus:
            continue
        t = standard_triangulation(s)
        z = expand_loop(t, 1)
        for m in range(1, max_m + 1):
            rep.check(expand_loop(t, m) == chebyshev_eval(m, z), {"surface": format_surface(s), "m": m})
            if s.p >= 2 or s.q >= 2:
                rep.check(
                    expand_loop_difference(t, m) == expand_loop(t, m),
                    {"surface": format_surface(s), "m": m, "reason": "difference identity"},
                )
    tp, tk = c21_triangulation(), c11_partner_triangulation()
    for m in range(1, min(max_m, 3) + 1):
        rep.check(
            specialize_from_C21(expand_loop(tp, m), tp) == expand_loop(tk, m),
            {"m": m, "reason": "C21 specialisation"},
        )
    _timed(rep, start, 30.0)
    return rep


# -- the arc sweep shared by the oracle, denominator and degree suites ------------------

SWEEP_POLYGONS = (1, 2, 3, 4)
SWEEP_ANNULI = ((1, 1), (2, 2))


def arcs_within(t, max_weight: int) -> list:
    """Arcs of t's surface crossing t at most ``max_weight`` times in total."""
    s = t.surface
    if s.is_polygon:
        return enumerate_arcs(s)
    wmax = max(abs(g.winding) for g in t.arcs if isinstance(g, Bridging))
    pool = enumerate_arcs(s, wmax + max_weight + 2)
    return [g for g in pool if sum(crossing_number(s, g, a) for a in t.arcs) <= max_weight]


@lru_cache(maxsize=None)
def arc_sweep(radius: int = 3, max_weight: int = 6) -> tuple:
    """(triangulation, arcs) pairs: every cluster of Pi_1..Pi_4 with all arcs, and
    the radius ball of C_{1,1}, C_{2,2} with arcs of bounded crossing weight."""
    out = []
    for n in SWEEP_POLYGONS:
        s = Polygon(n)
        arcs = tuple(enumerate_arcs(s))
        out.extend((t, arcs) for t in exchange_graph(s).vertices)
    for p, q in SWEEP_ANNULI:
        s = Annulus(p, q)
        for t in exchange_graph(s, radius).vertices:
            out.append((t, tuple(arcs_within(t, max_weight))))
    return tuple(out)


def oracle(radius: int = 3, max_weight: int = 6, **_) -> Report:
    start = time.perf_counter()
    rep = Report("oracle", "polygon:1-4,annulus:1,1,annulus:2,2", {"radius": radius, "maxWeight": max_weight})
    for t, arcs in arc_sweep(radius, max_weight):
        for g in arcs:
            walk = expand_curve(t, g)
            orc = mutation_expand_oracle(t, g)
            rep.check(walk == orc, {"triangulation": t.to_dict(), "arc": format_curve(g)})
    _timed(rep, start, 120.0)
    return rep


def denominators(radius: int = 3, max_weight: int = 6, **_) -> Report:
    rep = Report("denominators", "polygon:1-4,annulus:1,1,annulus:2,2", {"radius": radius, "maxWeight": max_weight})
    for t, arcs in arc_sweep(radius, max_weight):
        s = t.surface
        for g in arcs:
            dv = expand_curve(t, g).denominator_vector()
            cv = tuple(crossing_number(s, g, a) for a in t.arcs)
            rep.check(
                dv == cv,
                {"triangulation": t.to_dict(), "arc": format_curve(g), "denominator": list(dv), "crossings": list(cv)},
            )
    return rep


def _crossers(t, g):
    return [i for i, a in enumerate(t.arcs) if crossing_number(t.surface, g, a)]


def degree(radius: int = 3, max_weight: int = 6, max_m: int = 3, **_) -> Report:
    """Per-term degree with respect to the arcs of t crossing gamma.

    gamma ranges over arcs not in t; on an annulus gamma is peripheral.
    The expansion of gamma has strictly negative degree; a compatible arc
    beta and every loop z_m have non-positive degree.
    """
    rep = Report("degree", "polygon:1-4,annulus:1,1,annulus:2,2", {"radius": radius, "maxWeight": max_weight, "maxM": max_m})
    for t, arcs in arc_sweep(radius, max_weight):
        s = t.surface
        for g in arcs:
            if g in t.arcs or (s.is_annulus and not isinstance(g, Peripheral)):
                continue
            cr = _crossers(t, g)
            where = {"triangulation": t.to_dict(), "gamma": format_curve(g)}
            _, top, _ = expand_curve(t, g).degree_wrt(cr)
            rep.check(top < 0, dict(where, lemma="negative", degree=top))
            for b in arcs:
                if b == g or crossing_number(s, b, g):
                    continue
                _, top, _ = expand_curve(t, b).degree_wrt(cr)
                rep.check(top <= 0, dict(where, lemma="compatible", beta=format_curve(b), degree=top))
            if s.is_annulus:
                for m in range(1, max_m + 1):
                    _, top, _ = expand_loop(t, m).degree_wrt(cr)
                    rep.check(top <= 0, dict(where, lemma="loop", m=m, degree=top))
    return rep


def positivity(max_weight: int = 4, radius: int = 3, wrap_range: int = 2, max_loop: int = 3, **_) -> Report:
    start = time.perf_counter()
    rep = Report(
        "positivity",
        "polygon:3,annulus:2,2",
        {"maxWeight": max_weight, "radius": radius, "wrapRange": wrap_range, "maxLoop": max_loop},
    )
    rep.merge(verify_positive_basis(Polygon(3), max_weight))
    rep.merge(verify_positive_basis(Annulus(2, 2), max_weight, radius, wrap_range, max_loop))
    _timed(rep, start, 300.0)
    return rep


def atomicity(max_weight: int = 3, **_) -> Report:
    rep = Report("atomicity", "polygon:3,annulus:1,1", {"maxWeight": max_weight})
    for s in (Polygon(3), Annulus(1, 1)):
        cands = enumerate_collections(s, max_weight)
        if s.is_annulus:
            for m in (1, 2):
                rep.check(Collection(s, (), m) in cands, {"reason": f"z{m} missing from candidates"})
        for c in cands:
            sub = verify_atomicity_witness(s, c, cands)
            rep.merge(sub)
    return rep


DECOMPOSITION_SURFACES = ((0, 2), (0, 3), (1, 1), (2, 2))


def _surface_from(code):
    a, b = code
    return Polygon(b) if a == 0 else Annulus(a, b)


def decomposition(cases: int = 20, seed: int = 1, basis_weight: int = 2, **_) -> Report:
    rep = Report("decomposition", "polygon:2,polygon:3,annulus:1,1,annulus:2,2", {"cases": cases, "seed": seed})
    k = Annulus(1, 1)
    tk = standard_triangulation(k)
    z = expand_loop(tk, 1)
    d = decompose_auto(z * z, tk)
    want = {Collection(k, (), 2): 1, Collection(k): 2}
    rep.check(d.coefficients == want and d.residual.is_zero(), {"fixture": "x_z^2", "got": d.to_dict()})
    p2 = Polygon(2)
    f = fan_triangulation(p2)
    y = expand_curve(f, Chord(1, 3)) * expand_curve(f, Chord(2, 4))
    d = decompose_auto(y, f)
    want = {Collection(p2, (Chord(1, 4),)): 1, Collection(p2): 1}
    rep.check(d.coefficients == want and d.residual.is_zero(), {"fixture": "x13 x24", "got": d.to_dict()})
    for code in DECOMPOSITION_SURFACES:
        s = _surface_from(code)
        t = standard_triangulation(s)
        pool = enumerate_collections(s, basis_weight)
        rng = random.Random(f"{seed}:{format_surface(s)}")
        for case in range(cases):
            picks = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
            y = LaurentPoly.one(t.nvars)
            for c in picks:
                y = y * expand_collection(t, c)
            where = {"surface": format_surface(s), "case": case, "factors": [format_collection(c) for c in picks]}
            try:
                d = decompose_auto(y, t)
            except ArithmeticError as exc:
                rep.check(False, dict(where, error=str(exc)))
                continue
            rep.check(
                d.residual.is_zero() and all(v >= 0 for v in d.coefficients.values()),
                dict(where, got=d.to_dict()),
            )
    return rep


CATALAN = {1: 2, 2: 5, 3: 14, 4: 42}


def counts(radius: int = 3, **_) -> Report:
    rep = Report("counts", "polygon:1-4,annulus:1,1,annulus:2,2", {"radius": radius})
    graphs = [exchange_graph(Polygon(n)) for n in CATALAN]
    for n, g in zip(CATALAN, graphs):
        rep.check(len(g.vertices) == CATALAN[n], {"n": n, "vertices": len(g.vertices)})
        # each triangulation of an (n+3)-gon has n flips, each edge counted twice
        rep.check(len(g.edges) * 2 == n * len(g.vertices), {"n": n, "edges": len(g.edges)})
    graphs += [exchange_graph(Annulus(1, 1), radius), exchange_graph(Annulus(2, 2), radius)]
    for g in graphs:
        for t in g.vertices:
            rep.check(bool(validate(t)), {"triangulation": t.to_dict(), "reason": "invalid"})
            for k in range(t.nvars):
                u = cached_flip(t, k)
                changed = [i for i in range(t.nvars) if u.arcs[i] != t.arcs[i]]
                rep.check(
                    changed == [k] and cached_flip(u, k).arcs == t.arcs,
                    {"triangulation": t.to_dict(), "k": k},
                )
    return rep


SUITES = {
    "kronecker": kronecker,
    "a13-tables": a13_tables,
    "chebyshev": chebyshev_suite,
    "oracle": oracle,
    "denominators": denominators,
    "degree": degree,
    "positivity": positivity,
    "atomicity": atomicity,
    "decomposition": decomposition,
    "counts": counts,
}


def run_suite(name: str, **params) -> list:
    """Run one suite, or every suite for ``all``; returns the reports."""
    if name == "all":
        return [fn(**params) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return [SUITES[name](**params)]
