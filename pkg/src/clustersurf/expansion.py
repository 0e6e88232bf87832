"""Laurent expansions of arcs, curves and loops by coloured walks.

Arc walks are built on the lift of the curve to the universal cover. If the
lift crosses the lifted arcs tau_1, ..., tau_d (in this order), a walk is

    alpha_1 tau_1 alpha_3 tau_2 ... tau_d alpha_{2d+1}

where every tau_k is traversed in one of its two directions and the odd
edges are forced by the triangle between tau_k and tau_{k+1}: with v their
common vertex and a, b their other endpoints, the step from the end of tau_k
to the start of tau_{k+1} is

    a -> b   along the third side of the triangle,
    a -> v   back along tau_k,
    v -> b   forward along tau_{k+1},

and v -> v is impossible. Odd edges get sign + and even edges sign -.

Loop walks for z_m use the same local rule around the m-fold cover: the even
edges are the lifts of the bridging arcs met by the meridian, in order, and
the walk closes up after m turns.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache

from .laurent import LaurentPoly
from .surface import (
    Bridging,
    Loop,
    Peripheral,
    Segment,
    SurfaceError,
    check_curve,
    chords_cross,
    crossing_number,
    format_curve,
    key,
    lift,
    translate,
    translate_chord,
    translate_range,
    INNER,
    OUTER,
)
from .triangulation import Triangulation, cached_flip, edge_label, exchange_matrix


class ExpansionError(ValueError):
    pass


class OracleSearchError(RuntimeError):
    pass


@dataclass(frozen=True)
class Step:
    edge: object  # 0-based arc index, or a boundary Segment
    sign: int  # +1 or -1
    start: tuple
    end: tuple


@dataclass(frozen=True)
class ColouredWalk:
    steps: tuple

    def __len__(self):
        return len(self.steps)

    def exponents(self, nvars):
        e = [0] * nvars
        for st in self.steps:
            if isinstance(st.edge, int):
                e[st.edge] += st.sign
        return tuple(e)

    def monomial(self, nvars) -> LaurentPoly:
        return LaurentPoly.monomial(self.exponents(nvars))

    def notation(self):
        """Inline form such as ``1- 2+ i+ 3-``: 1-based arc indices, i/o/b for boundary."""
        out = []
        for st in self.steps:
            name = format_curve(st.edge) if isinstance(st.edge, Segment) else str(st.edge + 1)
            out.append(name + ("+" if st.sign > 0 else "-"))
        return " ".join(out)

    def __str__(self):
        return self.notation()


# -- geometry in the cover ---------------------------------------------------------


def _weakly_before(c1, c2, origin):
    """True when chord c1 lies on the origin's side of chord c2 (endpoints may be shared)."""
    a, b = sorted((key(c2[0]), key(c2[1])))
    o = a < key(origin) < b
    for pt in c1[:2]:
        if pt in c2[:2]:
            continue
        if (a < key(pt) < b) != o:
            return False
    return True


def crossed_lifts(t: Triangulation, P, Q) -> list:
    """Lifted arcs of ``t`` crossing the cover chord PQ, ordered from P to Q.

    Each entry is ``(A, B, index)``.
    """
    s = t.surface
    found = []
    for idx, g in enumerate(t.arcs):
        c = lift(s, g)
        for k in translate_range(s, (P, Q), c):
            A, B = translate_chord(s, c, k)
            if chords_cross((P, Q), (A, B)):
                found.append((A, B, idx))

    def cmp(c1, c2):
        return -1 if _weakly_before(c1, c2, P) else 1

    return sorted(found, key=cmp_to_key(cmp))


def _hinge(t, c1, c2):
    """(v, a, b, third_side_label) for consecutive crossed chords sharing vertex v."""
    shared = set(c1[:2]) & set(c2[:2])
    if len(shared) != 1:
        raise ExpansionError("consecutive crossed arcs do not bound a common triangle")
    (v,) = shared
    a = c1[0] if c1[1] == v else c1[1]
    b = c2[0] if c2[1] == v else c2[1]
    return v, a, b, edge_label(t, a, b)


def _other(c, pt):
    return c[1] if c[0] == pt else c[0]


def _odd_moves(t, c1, c2, hinge):
    """Allowed (end of c1, start of c2, odd step) triples across one triangle."""
    v, a, b, third = hinge
    return [
        (a, b, Step(third, 1, a, b)),
        (a, v, Step(c1[2], 1, a, v)),
        (v, b, Step(c2[2], 1, v, b)),
    ]


# -- arc walks -------------------------------------------------------------------------


def _arc_setup(t: Triangulation, g):
    s = t.surface
    if isinstance(g, Loop):
        raise ExpansionError("use the loop routines for loops")
    check_curve(s, g)
    P, Q = lift(s, g)
    chords = crossed_lifts(t, P, Q)
    hinges = [_hinge(t, chords[k], chords[k + 1]) for k in range(len(chords) - 1)]
    return P, Q, chords, hinges


def enumerate_arc_walks(t: Triangulation, g) -> list:
    """All coloured g-walks on t (g an arc or a curve between marked points)."""
    if g in t.arcs:
        P, Q = lift(t.surface, g)
        return [ColouredWalk((Step(t.index(g), 1, P, Q),))]
    P, Q, chords, hinges = _arc_setup(t, g)
    if not chords:
        raise ExpansionError(f"{format_curve(g)} crosses nothing but is not in the triangulation")
    d = len(chords)
    walks = []

    def extend(k, end, steps):
        # steps ends with chord k traversed to `end`
        c = chords[k]
        if k == d - 1:
            walks.append(ColouredWalk(tuple(steps) + (Step(edge_label(t, end, Q), 1, end, Q),)))
            return
        for x, y, odd in _odd_moves(t, c, chords[k + 1], hinges[k]):
            if x != end:
                continue
            nxt = chords[k + 1]
            extend(k + 1, _other(nxt, y), steps + [odd, Step(nxt[2], -1, y, _other(nxt, y))])

    c0 = chords[0]
    for y in c0[:2]:
        first = Step(edge_label(t, P, y), 1, P, y)
        extend(0, _other(c0, y), [first, Step(c0[2], -1, y, _other(c0, y))])
    return walks


def _mono(n, edge, sign):
    if isinstance(edge, Segment):
        return None
    e = [0] * n
    e[edge] = sign
    return tuple(e)


def _times(poly, mono):
    return poly if mono is None else poly.shift(mono)


def expand_curve(t: Triangulation, g) -> LaurentPoly:
    """x^T_g as the sum of p(w) over coloured g-walks, computed by dynamic
    programming over (crossing position, current endpoint)."""
    return _expand_curve_cached(t.surface, t.arcs, g)


@lru_cache(maxsize=None)
def _expand_curve_cached(surface, arcs, g):
    t = Triangulation(surface, arcs)
    n = t.nvars
    if g in t.arcs:
        return LaurentPoly.variable(t.index(g), n)
    P, Q, chords, hinges = _arc_setup(t, g)
    if not chords:
        raise ExpansionError(f"{format_curve(g)} crosses nothing but is not in the triangulation")
    one = LaurentPoly.one(n)
    c0 = chords[0]
    state = {}
    for y in c0[:2]:
        w = _times(_times(one, _mono(n, edge_label(t, P, y), 1)), _mono(n, c0[2], -1))
        state[_other(c0, y)] = w
    for k in range(len(chords) - 1):
        nxt = chords[k + 1]
        new = {}
        for x, y, odd in _odd_moves(t, chords[k], nxt, hinges[k]):
            if x not in state:
                continue
            w = _times(_times(state[x], _mono(n, odd.edge, 1)), _mono(n, nxt[2], -1))
            end = _other(nxt, y)
            new[end] = new[end] + w if end in new else w
        state = new
    total = LaurentPoly.zero(n)
    for x, w in state.items():
        total = total + _times(w, _mono(n, edge_label(t, x, Q), 1))
    return total


# -- loops --------------------------------------------------------------------------------


def _loop_setup(t: Triangulation, m: int):
    s = t.surface
    if not s.is_annulus:
        raise ExpansionError("loops live on annuli")
    if m < 1:
        raise ExpansionError("loop index m must be positive")
    chords = []
    for idx, g in enumerate(t.arcs):
        if isinstance(g, Bridging):
            c = lift(s, g)
            for k in range(m):
                A, B = translate_chord(s, c, k)
                chords.append((A, B, idx))
    if not chords:
        raise ExpansionError("a triangulation of an annulus has bridging arcs")
    # bridging lifts are pairwise disjoint, so (top, bottom) is their meridian order
    chords.sort(key=lambda c: (c[0][1], c[1][1]))
    first = chords[0]
    closing = translate_chord(s, first[:2], m) + (first[2],)
    ring = chords + [closing]
    hinges = [_hinge(t, ring[k], ring[k + 1]) for k in range(len(chords))]
    return chords, closing, hinges


def enumerate_loop_walks(t: Triangulation, m: int) -> list:
    """All coloured m-walks on t: closed walks around the m-fold cover."""
    s = t.surface
    chords, closing, hinges = _loop_setup(t, m)
    L = len(chords)
    ring = chords + [closing]
    walks = []

    def extend(k, end, steps, start0):
        for x, y, odd in _odd_moves(t, ring[k], ring[k + 1], hinges[k]):
            if x != end:
                continue
            if k == L - 1:
                if y == translate(s, start0, m):
                    walks.append(ColouredWalk(tuple(steps + [odd])))
                continue
            nxt = ring[k + 1]
            extend(k + 1, _other(nxt, y), steps + [odd, Step(nxt[2], -1, y, _other(nxt, y))], start0)

    c0 = chords[0]
    for y in c0[:2]:
        extend(0, _other(c0, y), [Step(c0[2], -1, y, _other(c0, y))], y)
    return walks


def expand_loop(t: Triangulation, m: int) -> LaurentPoly:
    return _expand_loop_cached(t.surface, t.arcs, m)


@lru_cache(maxsize=None)
def _expand_loop_cached(surface, arcs, m):
    t = Triangulation(surface, arcs)
    s = t.surface
    n = t.nvars
    chords, closing, hinges = _loop_setup(t, m)
    ring = chords + [closing]
    L = len(chords)
    total = LaurentPoly.zero(n)
    c0 = chords[0]
    for y0 in c0[:2]:
        state = {_other(c0, y0): _times(LaurentPoly.one(n), _mono(n, c0[2], -1))}
        for k in range(L):
            nxt = ring[k + 1]
            new = {}
            for x, y, odd in _odd_moves(t, ring[k], nxt, hinges[k]):
                if x not in state:
                    continue
                w = _times(state[x], _mono(n, odd.edge, 1))
                if k == L - 1:
                    if y != translate(s, y0, m):
                        continue
                    end = "closed"
                else:
                    w = _times(w, _mono(n, nxt[2], -1))
                    end = _other(nxt, y)
                new[end] = new[end] + w if end in new else w
            state = new
        total = total + state.get("closed", LaurentPoly.zero(n))
    return total


def loop_difference_curves(s, m):
    """The two peripheral curves whose expansions differ by x_{z_m}.

    On a boundary component with c >= 2 points: the curve of span mc + 1 out of
    the first point and the curve of span mc - 1 out of the second point.
    """
    if s.p >= 2:
        comp, c = INNER, s.p
    elif s.q >= 2:
        comp, c = OUTER, s.q
    else:
        raise ExpansionError("C_{1,1} has no boundary component with two points; use specialize_from_C21")
    return Peripheral(comp, 1, m * c + 1), Peripheral(comp, 2, m * c - 1)


def expand_loop_difference(t: Triangulation, m: int) -> LaurentPoly:
    big, small = loop_difference_curves(t.surface, m)
    lower = LaurentPoly.one(t.nvars) if small.span == 1 else expand_curve(t, small)
    return expand_curve(t, big) - lower


def c21_triangulation():
    """The triangulation T' of C_{2,1}: alpha, beta bridging and tau the inner near-loop."""
    from .surface import Annulus

    s = Annulus(2, 1)
    return Triangulation(s, (Bridging(1, 1, 0), Bridging(1, 1, -1), Peripheral(INNER, 1, 2)))


def c11_partner_triangulation():
    """The triangulation {alpha, beta} of C_{1,1} that T' collapses to."""
    from .surface import Annulus

    return Triangulation(Annulus(1, 1), (Bridging(1, 1, 0), Bridging(1, 1, -1)))


def specialize_from_C21(poly: LaurentPoly, tprime: Triangulation) -> LaurentPoly:
    """Send x_alpha, x_beta to themselves and x_tau to 1."""
    s = tprime.surface
    if not (s.is_annulus and sorted((s.p, s.q)) == [1, 2]):
        raise ExpansionError("source must be a triangulation of C_{2,1}")
    kinds = [isinstance(g, Bridging) for g in tprime.arcs]
    periph = [g for g in tprime.arcs if isinstance(g, Peripheral)]
    if sum(kinds) != 2 or len(periph) != 1 or periph[0].span != 2:
        raise ExpansionError("source triangulation must be two bridging arcs and one near-loop")
    if poly.nvars != 3:
        raise ExpansionError("polynomial is not over a C_{2,1} cluster")
    keep = [i for i, b in enumerate(kinds) if b]
    out = {}
    for e, c in poly.items():
        f = tuple(e[i] for i in keep)
        out[f] = out.get(f, 0) + c
    return LaurentPoly(2, out)


# -- Chebyshev polynomials -------------------------------------------------------------------


@dataclass(frozen=True)
class ChebyshevPoly:
    m: int
    coeffs: tuple  # coeffs[d] is the coefficient of z^d

    def __call__(self, v):
        return chebyshev_eval(self.m, v)


@lru_cache(maxsize=None)
def chebyshev(m: int) -> ChebyshevPoly:
    """Normalised Chebyshev polynomial of the first kind: F_0 = 2, F_1 = z,
    F_{m+1} = z F_m - F_{m-1}."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return ChebyshevPoly(0, (2,))
    if m == 1:
        return ChebyshevPoly(1, (0, 1))
    a, b = chebyshev(m - 1).coeffs, chebyshev(m - 2).coeffs
    out = [0] * (m + 1)
    for d, c in enumerate(a):
        out[d + 1] += c
    for d, c in enumerate(b):
        out[d] -= c
    return ChebyshevPoly(m, tuple(out))


def chebyshev_eval(m: int, v: LaurentPoly) -> LaurentPoly:
    if m == 0:
        return LaurentPoly.constant(2, v.nvars)
    prev, cur = LaurentPoly.constant(2, v.nvars), v
    for _ in range(m - 1):
        prev, cur = cur, v * cur - prev
    return cur


# -- collections ------------------------------------------------------------------------------


def expand_collection(t: Triangulation, c) -> LaurentPoly:
    """x_Gamma = product of the member expansions; the empty collection gives 1."""
    out = LaurentPoly.one(t.nvars)
    for g in c.arcs:
        out = out * expand_curve(t, g)
    if c.loop:
        out = out * expand_loop(t, c.loop)
    return out


# -- the mutation oracle ---------------------------------------------------------------------


def exchange_step(t: Triangulation, k: int, values: list) -> LaurentPoly:
    """Value of the flipped arc from the exchange relation
    x_k x_k' = prod x_i^[b_ik]_+ + prod x_i^[-b_ik]_+ with x_i := values[i]."""
    b = exchange_matrix(t)
    nv = values[0].nvars
    plus = LaurentPoly.one(nv)
    minus = LaurentPoly.one(nv)
    for i, row in enumerate(b):
        if row[k] > 0:
            plus = plus * values[i] ** row[k]
        elif row[k] < 0:
            minus = minus * values[i] ** (-row[k])
    return (plus + minus).divide_exact(values[k])


_ORACLE_MEMO: dict = {}


def _replay(t: Triangulation, path):
    """Expansions (in t's variables) of the arcs reached after flipping along ``path``."""
    base = (t.surface, t.arcs)
    vals = [LaurentPoly.variable(i, t.nvars) for i in range(t.nvars)]
    cur = t
    done = ()
    for k in path:
        done = done + (k,)
        memo_key = (base, done)
        nxt = cached_flip(cur, k)
        if memo_key in _ORACLE_MEMO:
            vals = _ORACLE_MEMO[memo_key]
        else:
            vals = list(vals)
            vals[k] = exchange_step(cur, k, vals)
            _ORACLE_MEMO[memo_key] = vals
        cur = nxt
    return cur, vals


def flip_path(t: Triangulation, g, max_nodes: int = 20000) -> tuple:
    """A flip sequence from t to a triangulation containing the arc g.

    Best-first search on the exchange graph, ordered by the total number of
    crossings between g and the current arcs.
    """
    s = t.surface
    if g in t.arcs:
        return ()

    def h(u):
        return sum(crossing_number(s, g, a) for a in u.arcs)

    counter = itertools.count()
    heap = [(h(t), 0, next(counter), t, ())]
    seen = {t.arcset}
    while heap:
        _, depth, _, u, path = heapq.heappop(heap)
        for k in range(u.nvars):
            v = cached_flip(u, k)
            if v.arcset in seen:
                continue
            if g in v.arcs:
                return path + (k,)
            seen.add(v.arcset)
            if len(seen) > max_nodes:
                raise OracleSearchError(f"no flip path to {format_curve(g)} within {max_nodes} triangulations")
            heapq.heappush(heap, (h(v), depth + 1, next(counter), v, path + (k,)))
    raise OracleSearchError(f"{format_curve(g)} is unreachable")


def mutation_expand_oracle(t: Triangulation, g, max_nodes: int = 20000) -> LaurentPoly:
    """Expansion of the arc g in t's cluster, obtained only from flips and exchange relations."""
    if isinstance(g, Loop):
        raise ExpansionError("the mutation oracle handles arcs only")
    check_curve(t.surface, g)
    if crossing_number(t.surface, g, g):
        raise SurfaceError(f"{format_curve(g)} is not an arc")
    path = flip_path(t, g, max_nodes)
    end, vals = _replay(t, path)
    return vals[end.index(g)]
