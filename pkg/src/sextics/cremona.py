"""Reciprocal (Cremona) transformations and projective frame changes.

The reciprocal transformation (x:y:z:t) -> (1/x:1/y:1/z:1/t) blows up
the four tetrahedron vertices (its fundamental points) and blows down
the faces.  On forms it acts by the substitution x -> yzt, y -> xzt,
z -> xyt, t -> xyz followed by stripping the common monomial factor;
a surface of degree d with multiplicities m1..m4 at the vertices maps
to one of degree 3d - m1 - m2 - m3 - m4, and the new multiplicity at
vertex i is 2d minus the sum of the other three.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .analyze import COORDS, ProjectivePoint
from .errors import ContainsCoordinatePlane, DegenerateConfiguration, UnknownLabel
from .families import TableRow
from .poly import Polynomial


@dataclass(frozen=True)
class MultiplicityRecord:
    degree: int
    mults: tuple  # at the four fundamental points

    def __post_init__(self):
        if any(m < 0 or m > self.degree for m in self.mults):
            raise ValueError("multiplicities must lie in [0, degree]")

    def transformed(self) -> "MultiplicityRecord":
        d = self.degree
        m = self.mults
        new_d = 3 * d - sum(m)
        new_m = tuple(2 * d - (sum(m) - mi) for mi in m)
        return MultiplicityRecord(new_d, new_m)


class FrameTransform:
    """Invertible 4x4 coordinate change acting on forms by substitution."""

    __slots__ = ("domain", "matrix")

    def __init__(self, domain, matrix):
        self.domain = domain
        self.matrix = tuple(tuple(row) for row in matrix)
        if domain.is_zero(linalg.det(matrix, domain)):
            raise DegenerateConfiguration("frame matrix is singular")

    def __matmul__(self, other: "FrameTransform") -> "FrameTransform":
        dom = self.domain
        a, b = self.matrix, other.matrix
        prod = [[dom.zero()] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(4):
                acc = dom.zero()
                for k in range(4):
                    acc = dom.add(acc, dom.mul(a[i][k], b[k][j]))
                prod[i][j] = acc
        return FrameTransform(dom, prod)

    def inverse(self) -> "FrameTransform":
        dom = self.domain
        aug = [list(row) + [dom.one() if i == j else dom.zero() for j in range(4)]
               for i, row in enumerate(self.matrix)]
        red, pivots = linalg.rref(aug, dom)
        if pivots != [0, 1, 2, 3]:
            raise DegenerateConfiguration("frame matrix is singular")
        return FrameTransform(dom, [row[4:] for row in red])

    def apply_to_point(self, P: ProjectivePoint) -> ProjectivePoint:
        dom = self.domain
        coords = []
        for i in range(4):
            acc = dom.zero()
            for j in range(4):
                acc = dom.add(acc, dom.mul(self.matrix[i][j], P[j]))
            coords.append(acc)
        return ProjectivePoint(dom, coords)

    def pullback(self, F: Polynomial) -> Polynomial:
        """The form F composed with this transform: (F o M)(v) = F(Mv)."""
        ring = F.ring
        xs = [ring.var(n) for n in COORDS]
        sub = {}
        for i, name in enumerate(COORDS):
            acc = ring.zero()
            for j in range(4):
                acc = acc + xs[j].scale(self.matrix[i][j])
            sub[name] = acc
        return F.subs(sub)


def frame_through_points(points, unit=None, domain=None) -> FrameTransform:
    """Frame sending the standard tetrahedron vertices to the four points
    (and, when given, the unit point (1:1:1:1) to the fifth).

    Without a unit point the column scales are fixed to 1.
    """
    points = list(points)
    if len(points) != 4:
        raise DegenerateConfiguration("need exactly four fundamental points")
    if domain is None:
        domain = points[0].domain
    cols = [list(p.coords) for p in points]
    rows = [[cols[j][i] for j in range(4)] for i in range(4)]
    if domain.is_zero(linalg.det(rows, domain)):
        raise DegenerateConfiguration("fundamental points are coplanar")
    scales = [domain.one()] * 4
    if unit is not None:
        sol = linalg.solve(rows, list(unit.coords), domain)
        if sol is None or any(domain.is_zero(s) for s in sol):
            raise DegenerateConfiguration(
                "unit point is coplanar with three of the fundamental points")
        scales = sol
    matrix = [[domain.mul(cols[j][i], scales[j]) for j in range(4)]
              for i in range(4)]
    return FrameTransform(domain, matrix)


def strip_monomial(F: Polynomial):
    """Remove the greatest common monomial divisor; returns (form, exponents)."""
    strip = None
    for e in F.terms:
        strip = list(e) if strip is None else [min(a, b) for a, b in zip(strip, e)]
    if strip is None or not any(strip):
        return F, (0, 0, 0, 0)
    out = {tuple(a - b for a, b in zip(e, strip)): c for e, c in F.terms.items()}
    return Polynomial(F.ring, out), tuple(strip)


def reciprocal_transform(F: Polynomial, record: MultiplicityRecord | None = None):
    """Apply the reciprocal transformation to a form whose fundamental
    points already sit at the tetrahedron vertices.

    Returns (transformed form, predicted MultiplicityRecord).  When the
    input record is supplied, the monomial actually stripped is checked
    against it; a mismatch signals wrong input multiplicities.
    """
    ring = F.ring
    for i, name in enumerate(COORDS):
        if all(e[i] > 0 for e in F.terms):
            raise ContainsCoordinatePlane(f"form is divisible by {name}")
    x, y, z, t = (ring.var(n) for n in COORDS)
    G = F.subs({"x": y * z * t, "y": x * z * t, "z": x * y * t, "t": x * y * z})
    G, stripped = strip_monomial(G)
    d = F.degree()
    if record is None:
        record = MultiplicityRecord(d, stripped)
    else:
        if record.degree != d:
            raise ValueError(f"record degree {record.degree} != form degree {d}")
        if tuple(record.mults) != stripped:
            raise ValueError(
                f"stripped exponents {stripped} disagree with the declared "
                f"multiplicities {tuple(record.mults)}")
    return G, record.transformed()


def reciprocal_at_points(F: Polynomial, points, unit=None):
    """Conjugate the reciprocal transformation by the frame through the
    given fundamental points; returns (form in the original coordinates
    after transforming, frame, predicted record)."""
    frame = frame_through_points(points, unit=unit)
    moved = frame.pullback(F)
    out, record = reciprocal_transform(moved)
    return out, frame, record


# ---------------------------------------------------------------------------
# configuration-level bookkeeping

def transform_configuration(rows, fundamental, point_labels=None):
    """Degree/multiplicity bookkeeping of a reciprocal transformation on a
    whole multiplicity table.

    rows: TableRow sequence; fundamental: four point labels ("P1", ...).
    Multiplicities at non-fundamental points carry over unchanged.
    """
    rows = list(rows)
    npoints = len(rows[0].mults)
    labels = point_labels or [f"P{i+1}" for i in range(npoints)]
    try:
        idx = [labels.index(lbl) for lbl in fundamental]
    except ValueError as exc:
        raise UnknownLabel(str(exc)) from None
    if len(set(idx)) != 4:
        raise DegenerateConfiguration("need four distinct fundamental points")
    out = []
    for row in rows:
        m = [row.mults[i] for i in idx]
        d = 3 * row.degree - sum(m)
        new = list(row.mults)
        for k, i in enumerate(idx):
            new[i] = 2 * row.degree - (sum(m) - m[k])
        out.append(TableRow(row.label, d, tuple(new), row.note))
    return out
