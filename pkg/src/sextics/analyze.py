"""Finite-field verification of surfaces: singular points, ordinariness
certificates, incidence reports and (-1)-conic counting.

The brute-force scan over P^3(F_p) is the independent oracle for triple
point locations; nothing upstream feeds it expected answers.  Points are
found by vectorised evaluation of the four partial derivatives over the
four standard charts (p^3 + p^2 + p + 1 points in all); everything
downstream (multiplicity, tangent cone, conics) is exact symbolic work
at the points found.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import linalg
from .errors import (
    DegeneratePlaneSection,
    FieldTooLarge,
    FieldTooSmall,
    NotTriplePoint,
    PointNotOnSurface,
)
from .ideal import Ideal
from .poly import PolyRing, Polynomial
from .scalar import PrimeField

COORDS = ("x", "y", "z", "t")

MAX_SCAN_PRIME = 1 << 10

# more singular points than any surface of the handled degrees with
# isolated singularities can carry; only used to raise a report flag
ISOLATED_COUNT_BOUND = 66


class ProjectivePoint:
    """Point of P^3 with coordinates normalised so the first nonzero one is 1."""

    __slots__ = ("domain", "coords")

    def __init__(self, domain, coords):
        coords = list(coords)
        pivot = None
        for i, c in enumerate(coords):
            if not domain.is_zero(c):
                pivot = i
                break
        if pivot is None:
            raise ValueError("all coordinates zero")
        inv = domain.invert(coords[pivot])
        self.domain = domain
        self.coords = tuple(domain.mul(c, inv) for c in coords)

    def __eq__(self, other):
        return isinstance(other, ProjectivePoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class TriplePointRecord:
    point: ProjectivePoint
    multiplicity: int
    ordinary: bool

    def to_json(self):
        return {"point": [str(c) for c in self.point.coords],
                "multiplicity": self.multiplicity,
                "ordinary": self.ordinary}


# ---------------------------------------------------------------------------
# the scan

def _check_scan_domain(F: Polynomial):
    dom = F.ring.domain
    if not isinstance(dom, PrimeField):
        raise FieldTooLarge("scans need a prime-field surface")
    if dom.p > MAX_SCAN_PRIME:
        raise FieldTooLarge(f"p = {dom.p} exceeds the scan guard {MAX_SCAN_PRIME}")
    if F.degree() >= 4 and dom.p <= 3:
        raise FieldTooSmall("refusing p <= 3: derivatives degenerate")
    if not F.is_homogeneous():
        raise ValueError("surface form must be homogeneous")
    return dom


def _as_term_list(f: Polynomial):
    return [(int(c), e) for e, c in f.terms.items()]


def _eval_chart(terms, p, fixed, free_pos, grids):
    """Evaluate one term list on a chart grid.

    fixed maps coordinate index -> int value; free_pos maps coordinate
    index -> position into grids (broadcastable int64 arrays).
    """
    maxe = [0, 0, 0, 0]
    for _, e in terms:
        for i in range(4):
            maxe[i] = max(maxe[i], e[i])
    pows = {}
    for i, k in free_pos.items():
        g = grids[k] % p
        tab = [np.ones_like(g)]
        for _ in range(maxe[i]):
            tab.append(tab[-1] * g % p)
        pows[i] = tab
    total = None
    for c, e in terms:
        v = c
        arr = None
        for i in range(4):
            if e[i] == 0:
                continue
            if i in pows:
                arr = pows[i][e[i]] if arr is None else arr * pows[i][e[i]] % p
            else:
                v = v * pow(fixed[i], e[i], p) % p
        piece = v if arr is None else arr * v
        total = piece if total is None else total + piece
    if total is None:
        return None
    return np.asarray(total % p)


def _scan_chart(partial_terms, p, chart, sub=None):
    """Points of one chart where all supplied term lists vanish.

    ``sub`` restricts the first free variable of the big chart to a
    range so the scan can be split across workers.
    """
    rng = np.arange(p, dtype=np.int64)
    if chart == 0:
        lo, hi = sub if sub else (0, p)
        grids = [rng[lo:hi].reshape(-1, 1, 1), rng.reshape(1, -1, 1),
                 rng.reshape(1, 1, -1)]
        fixed, free_pos = {0: 1}, {1: 0, 2: 1, 3: 2}
        shape = (hi - lo, p, p)
    elif chart == 1:
        grids = [rng.reshape(-1, 1), rng.reshape(1, -1)]
        fixed, free_pos = {0: 0, 1: 1}, {2: 0, 3: 1}
        shape = (p, p)
    elif chart == 2:
        grids = [rng]
        fixed, free_pos = {0: 0, 1: 0, 2: 1}, {3: 0}
        shape = (p,)
    else:
        grids = []
        fixed, free_pos = {0: 0, 1: 0, 2: 0, 3: 1}, {}
        shape = ()

    mask = None
    for terms in partial_terms:
        vals = _eval_chart(terms, p, fixed, free_pos, grids)
        if vals is None:
            continue
        hit = vals == 0
        if hit.shape != shape:
            hit = np.broadcast_to(hit, shape)
        mask = hit if mask is None else mask & hit
        if not mask.any():
            return []
    if mask is None:
        mask = np.ones(shape, dtype=bool)
    if shape == ():
        return [(0, 0, 0, 1)] if bool(mask) else []
    idx = np.nonzero(mask)
    if chart == 0:
        lo = sub[0] if sub else 0
        return [(1, int(a) + lo, int(b), int(c)) for a, b, c in zip(*idx)]
    if chart == 1:
        return [(0, 1, int(a), int(b)) for a, b in zip(*idx)]
    return [(0, 0, 1, int(a)) for a in idx[0]]


def singular_points(F: Polynomial, jobs: int = 1):
    """All points of P^3(F_p) where the four partials of F vanish.

    By Euler's relation F itself vanishes there whenever p does not
    divide deg F; the scan guard keeps p small enough to enumerate all
    p^3 + p^2 + p + 1 points.
    """
    dom = _check_scan_domain(F)
    p = dom.p
    partials = [_as_term_list(F.partial(v)) for v in COORDS]
    points = []
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        step = max(1, -(-p // jobs))
        chunks = [(lo, min(p, lo + step)) for lo in range(0, p, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_scan_chart, partials, p, 0, ch) for ch in chunks]
            for fut in futs:
                points.extend(fut.result())
    else:
        points.extend(_scan_chart(partials, p, 0))
    for chart in (1, 2, 3):
        points.extend(_scan_chart(partials, p, chart))
    out = [ProjectivePoint(dom, [dom.from_int(c) for c in pt]) for pt in points]
    out.sort(key=lambda q: q.coords)
    return out


def projective_point_count(p: int) -> int:
    return p ** 3 + p ** 2 + p + 1


# ---------------------------------------------------------------------------
# local analysis at a point

def _frame_columns(domain, P: ProjectivePoint):
    """Columns of an invertible matrix whose last column is P."""
    pivot = next(i for i, c in enumerate(P.coords) if not domain.is_zero(c))
    cols = []
    for j in range(4):
        if j == pivot:
            continue
        e = [domain.zero()] * 4
        e[j] = domain.one()
        cols.append(e)
    cols.append(list(P.coords))
    return cols


def local_form(F: Polynomial, P: ProjectivePoint) -> Polynomial:
    """F pulled back so P sits at (0:0:0:1), then dehomogenised at t=1.

    The lowest total degree of the result is the multiplicity of F at P.
    """
    ring = F.ring
    dom = ring.domain
    cols = _frame_columns(dom, P)
    xs = [ring.var(n) for n in COORDS]
    sub = {}
    for i, name in enumerate(COORDS):
        acc = ring.zero()
        for j in range(4):
            acc = acc + xs[j].scale(cols[j][i])
        sub[name] = acc
    G = F.subs(sub)
    return G.subs({"t": ring.one()})


def multiplicity_at(F: Polynomial, P: ProjectivePoint) -> int:
    g = local_form(F, P)
    if g.is_zero():
        raise PointNotOnSurface("surface vanishes identically in this frame")
    m = min(sum(e) for e in g.terms)
    if m == 0:
        raise PointNotOnSurface(f"{P!r} is not on the surface")
    return m


def tangent_cone(F: Polynomial, P: ProjectivePoint) -> Polynomial:
    """Lowest-degree homogeneous part of the local equation at P."""
    g = local_form(F, P)
    m = min(sum(e) for e in g.terms)
    return Polynomial(g.ring, {e: c for e, c in g.terms.items() if sum(e) == m})


def is_ordinary_triple_point(F: Polynomial, P: ProjectivePoint) -> bool:
    """Certify that the degree-3 tangent cone at P is a cone over a
    smooth plane cubic: its Jacobian ideal must cut only the origin."""
    if multiplicity_at(F, P) != 3:
        raise NotTriplePoint(f"multiplicity at {P!r} is not 3")
    tc = tangent_cone(F, P)
    small = PolyRing(F.ring.domain, ("x", "y", "z"))
    tc3 = small.transfer(tc)
    jac = Ideal(small, [tc3.partial(v) for v in ("x", "y", "z")])
    return jac.is_zero_dimensional_at_origin()


def triple_point_records(F: Polynomial, points) -> list:
    out = []
    for P in points:
        m = multiplicity_at(F, P)
        ordinary = m == 3 and is_ordinary_triple_point(F, P)
        out.append(TriplePointRecord(P, m, ordinary))
    return out


# ---------------------------------------------------------------------------
# incidence

@dataclass
class IncidenceReport:
    lines: list = field(default_factory=list)   # index tuples, >= 3 points
    planes: list = field(default_factory=list)  # (normal, index tuple), >= 4 points

    def to_json(self):
        return {
            "lines_with_3_or_more": [list(ix) for ix in self.lines],
            "planes_with_4_or_more": [
                {"normal": [str(c) for c in n], "points": list(ix)}
                for n, ix in self.planes
            ],
        }


def _plane_through(domain, pts):
    rows = [list(p.coords) for p in pts]
    ns = linalg.nullspace(rows, domain)
    if len(ns) != 1:
        return None
    n = ns[0]
    pivot = next(i for i, c in enumerate(n) if not domain.is_zero(c))
    inv = domain.invert(n[pivot])
    return tuple(domain.mul(c, inv) for c in n)


def _on_plane(domain, normal, p):
    acc = domain.zero()
    for a, b in zip(normal, p.coords):
        acc = domain.add(acc, domain.mul(a, b))
    return domain.is_zero(acc)


def collinearity_and_coplanarity_report(points) -> IncidenceReport:
    """All lines through >= 3 and planes through >= 4 of the points."""
    points = list(points)
    if len(points) < 3:
        raise ValueError("need at least 3 points")
    domain = points[0].domain
    report = IncidenceReport()
    seen_lines = set()
    for i, j in combinations(range(len(points)), 2):
        members = tuple(
            k for k in range(len(points))
            if linalg.rank([list(points[i].coords), list(points[j].coords),
                            list(points[k].coords)], domain) <= 2)
        if len(members) >= 3 and members not in seen_lines:
            seen_lines.add(members)
            report.lines.append(members)
    seen_planes = set()
    for trip in combinations(range(len(points)), 3):
        rows = [list(points[k].coords) for k in trip]
        if linalg.rank(rows, domain) < 3:
            continue
        normal = _plane_through(domain, [points[k] for k in trip])
        if normal is None or normal in seen_planes:
            continue
        seen_planes.add(normal)
        members = tuple(k for k in range(len(points))
                        if _on_plane(domain, normal, points[k]))
        if len(members) >= 4:
            report.planes.append((normal, members))
    return report


# ---------------------------------------------------------------------------
# (-1)-conics

@dataclass
class ConicWitness:
    plane: tuple              # normal vector
    point_indices: tuple      # triple points lying on the conic
    conic: Polynomial         # in plane coordinates (s, u, v)
    residual_degree: int

    def to_json(self):
        return {"plane": [str(c) for c in self.plane],
                "points": list(self.point_indices),
                "conic": str(self.conic)}


def _plane_basis(domain, normal):
    """Deterministic basis of the plane from the RREF of its normal."""
    red, _ = linalg.rref([list(normal)], domain)
    return linalg.nullspace([red[0]], domain)


def _plane_coordinates(domain, basis, point):
    cols = [[basis[j][i] for j in range(3)] for i in range(4)]
    return linalg.solve(cols, list(point.coords), domain)


def restrict_to_plane(F: Polynomial, domain, normal, plane_ring: PolyRing):
    basis = _plane_basis(domain, normal)
    svars = plane_ring.gens()
    sub = {}
    for i in range(4):
        acc = plane_ring.zero()
        for j in range(3):
            acc = acc + svars[j].scale(basis[j][i])
        sub[i] = acc
    G = plane_ring.zero()
    for exps, c in F.terms.items():
        term = plane_ring.const(c)
        for i, e in enumerate(exps):
            if e:
                term = term * sub[i] ** e
        G = G + term
    return G, basis


def count_minus_one_conics(F: Polynomial, triple_points):
    """Count witness planes: >= 5 triple points in a plane whose
    interpolating conic divides the plane section of F.

    Returns (count, [ConicWitness ...]).
    """
    domain = F.ring.domain
    points = list(triple_points)
    report = collinearity_and_coplanarity_report(points)
    witnesses = []
    plane_ring = PolyRing(domain, ("s", "u", "v"))
    s, u, v = plane_ring.gens()
    monos = [s * s, s * u, s * v, u * u, u * v, v * v]
    for normal, members in report.planes:
        if len(members) < 5:
            continue
        G, basis = restrict_to_plane(F, domain, normal, plane_ring)
        if G.is_zero():
            raise DegeneratePlaneSection(
                "surface contains a plane through 5 of its triple points")
        local = {k: _plane_coordinates(domain, basis, points[k]) for k in members}
        rows = [[m.evaluate(local[k]) for m in monos] for k in members[:5]]
        ns = linalg.nullspace(rows, domain)
        if len(ns) != 1:
            continue  # five points fail to determine a single conic
        conic = plane_ring.zero()
        for coef, m in zip(ns[0], monos):
            conic = conic + m.scale(coef)
        if not G.divisible_by(conic):
            continue
        q = G.divide_exact(conic)
        on_conic = tuple(k for k in members
                         if domain.is_zero(conic.evaluate(local[k])))
        witnesses.append(ConicWitness(normal, on_conic, conic, q.degree()))
    return len(witnesses), witnesses


def conics_shared_points(w1: ConicWitness, w2: ConicWitness):
    return tuple(sorted(set(w1.point_indices) & set(w2.point_indices)))


def canonical_labels_444(points) -> dict:
    """Name the ten triple points of a two-conic configuration the way
    the tables do: P1, P2, P3 the coordinate vertices at infinity, P10
    the distinguished point (1:1:1:0), P9 the remaining point of the
    plane at infinity, P4, P5, P6 the affine points coplanar with P9 and
    P10, and P7, P8 the other two (sorted for determinism)."""
    points = list(points)
    if len(points) != 10:
        raise ValueError("expected ten triple points")
    domain = points[0].domain
    one, zero = domain.one(), domain.zero()
    named = {}
    for lbl, coords in (("P1", (one, zero, zero, zero)),
                        ("P2", (zero, one, zero, zero)),
                        ("P3", (zero, zero, one, zero)),
                        ("P10", (one, one, one, zero))):
        match = [P for P in points if P.coords == coords]
        if not match:
            raise ValueError(f"configuration lacks {lbl}")
        named[lbl] = match[0]
    at_infinity = [P for P in points if domain.is_zero(P.coords[3])]
    rest_inf = [P for P in at_infinity if P not in named.values()]
    if len(rest_inf) != 1:
        raise ValueError("expected exactly five points at infinity")
    named["P9"] = rest_inf[0]
    affine = sorted((P for P in points if not domain.is_zero(P.coords[3])),
                    key=lambda P: P.coords)
    report = collinearity_and_coplanarity_report(points)
    i9 = points.index(named["P9"])
    i10 = points.index(named["P10"])
    plane2 = None
    for normal, membs in report.planes:
        if len(membs) >= 5 and i9 in membs and i10 in membs \
                and any(not domain.is_zero(points[k].coords[3]) for k in membs):
            plane2 = [points[k] for k in membs
                      if not domain.is_zero(points[k].coords[3])]
            break
    if plane2 is None or len(plane2) != 3:
        raise ValueError("no plane with P9, P10 and three affine points")
    plane2 = sorted(plane2, key=lambda P: P.coords)
    for lbl, P in zip(("P4", "P5", "P6"), plane2):
        named[lbl] = P
    others = sorted((P for P in affine if P not in plane2),
                    key=lambda P: P.coords)
    for lbl, P in zip(("P7", "P8"), others):
        named[lbl] = P
    return named
